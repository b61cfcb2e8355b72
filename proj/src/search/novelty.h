#ifndef SEARCH_NOVELTY_H
#define SEARCH_NOVELTY_H

#include "../core/problem.h"

#include <cstdint>
#include <unordered_set>
#include <vector>

namespace wbp {

/*
  Seen-tuple table for IW(k). Sorted atom-id k-subsets are ranked into a
  flat bit table (combinadic ranking); a state is novel iff one of its
  k-subsets is unmarked. Marking is monotone. States with fewer than k true
  atoms use their full atom set as the tuple; those are kept in a side set.
*/
class NoveltyTable {
    int num_atoms;
    int k;
    std::vector<bool> seen;                 // ranked k-subsets
    std::unordered_set<uint64_t> small_seen;  // states with < k atoms, hashed
    std::vector<double> binomial;             // C(i, j) table, flattened

    double choose(int n, int r) const;
    uint64_t rank(const std::vector<int> &tuple) const;

public:
    // Throws CapExceeded if C(num_atoms, k) exceeds max_entries.
    NoveltyTable(int num_atoms, int k, uint64_t max_entries = uint64_t(1) << 28);

    // Marks all unseen k-subsets of the state; returns whether any was new.
    bool mark_and_test(const State &s);

    uint64_t size() const {
        return seen.size();
    }
};

}

#endif
