#include "novelty.h"

#include <cassert>

using namespace std;

namespace wbp {

NoveltyTable::NoveltyTable(int num_atoms, int k, uint64_t max_entries)
    : num_atoms(num_atoms), k(k) {
    assert(k >= 1);
    // C(n, r) for n <= num_atoms, r <= k, as doubles to spot overflow.
    binomial.assign(size_t(num_atoms + 1) * (k + 1), 0.0);
    for (int n = 0; n <= num_atoms; ++n) {
        for (int r = 0; r <= k; ++r) {
            if (r == 0)
                binomial[n * (k + 1) + r] = 1.0;
            else if (n == 0)
                binomial[n * (k + 1) + r] = 0.0;
            else
                binomial[n * (k + 1) + r] =
                    binomial[(n - 1) * (k + 1) + r] + binomial[(n - 1) * (k + 1) + r - 1];
        }
    }
    double entries = choose(num_atoms, k);
    if (entries > double(max_entries))
        throw CapExceeded("novelty table for k=" + to_string(k) + " needs " +
                          to_string(entries) + " entries");
    seen.assign(size_t(entries), false);
}

double NoveltyTable::choose(int n, int r) const {
    if (r < 0 || r > k || n < 0)
        return 0.0;
    return binomial[size_t(n) * (k + 1) + r];
}

uint64_t NoveltyTable::rank(const vector<int> &tuple) const {
    // Combinadic: sum of C(a_i, i+1) over the sorted tuple.
    double r = 0.0;
    for (size_t i = 0; i < tuple.size(); ++i)
        r += choose(tuple[i], int(i) + 1);
    return uint64_t(r);
}

bool NoveltyTable::mark_and_test(const State &s) {
    vector<int> atoms = s.to_indices();
    int n = int(atoms.size());
    if (n < k) {
        // Degenerate state; key on the exact atom set.
        uint64_t h = s.hash();
        return small_seen.insert(h).second;
    }
    bool novel = false;
    vector<int> tuple(k);
    vector<int> pick(k);
    // Iterative enumeration of k-subsets of atoms.
    for (int i = 0; i < k; ++i)
        pick[i] = i;
    while (true) {
        for (int i = 0; i < k; ++i)
            tuple[i] = atoms[pick[i]];
        uint64_t r = rank(tuple);
        if (!seen[r]) {
            seen[r] = true;
            novel = true;
        }
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return novel;
}

}
