#ifndef CORE_BITSET_H
#define CORE_BITSET_H

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace wbp {

/*
  Fixed-size dynamic bitset used for states and atom masks. All operands of
  binary operations must have the same number of bits.
*/
class Bitset {
    std::vector<uint64_t> words;
    int bits;

    static int word_count(int bits) {
        return (bits + 63) / 64;
    }

public:
    Bitset() : bits(0) {}
    explicit Bitset(int num_bits) : words(word_count(num_bits)), bits(num_bits) {}

    int size() const {
        return bits;
    }

    bool test(int i) const {
        return (words[i >> 6] >> (i & 63)) & 1;
    }

    void set(int i) {
        words[i >> 6] |= uint64_t(1) << (i & 63);
    }

    void reset(int i) {
        words[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }

    int count() const;

    bool none() const;

    // True iff other is a subset of this.
    bool contains(const Bitset &other) const;

    bool intersects(const Bitset &other) const;

    Bitset &operator|=(const Bitset &other);
    Bitset &operator&=(const Bitset &other);

    // Removes all bits set in other.
    Bitset &subtract(const Bitset &other);

    bool operator==(const Bitset &other) const = default;

    void for_each_set(const std::function<void(int)> &callback) const;

    std::vector<int> to_indices() const;

    size_t hash() const;
};

struct BitsetHash {
    size_t operator()(const Bitset &b) const {
        return b.hash();
    }
};

}

#endif
