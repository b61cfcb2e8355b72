#include "bitset.h"

#include <bit>
#include <cassert>

using namespace std;

namespace wbp {

int Bitset::count() const {
    int total = 0;
    for (uint64_t w : words)
        total += popcount(w);
    return total;
}

bool Bitset::none() const {
    for (uint64_t w : words)
        if (w)
            return false;
    return true;
}

bool Bitset::contains(const Bitset &other) const {
    assert(bits == other.bits);
    for (size_t i = 0; i < words.size(); ++i)
        if (other.words[i] & ~words[i])
            return false;
    return true;
}

bool Bitset::intersects(const Bitset &other) const {
    assert(bits == other.bits);
    for (size_t i = 0; i < words.size(); ++i)
        if (words[i] & other.words[i])
            return true;
    return false;
}

Bitset &Bitset::operator|=(const Bitset &other) {
    assert(bits == other.bits);
    for (size_t i = 0; i < words.size(); ++i)
        words[i] |= other.words[i];
    return *this;
}

Bitset &Bitset::operator&=(const Bitset &other) {
    assert(bits == other.bits);
    for (size_t i = 0; i < words.size(); ++i)
        words[i] &= other.words[i];
    return *this;
}

Bitset &Bitset::subtract(const Bitset &other) {
    assert(bits == other.bits);
    for (size_t i = 0; i < words.size(); ++i)
        words[i] &= ~other.words[i];
    return *this;
}

void Bitset::for_each_set(const function<void(int)> &callback) const {
    for (size_t i = 0; i < words.size(); ++i) {
        uint64_t w = words[i];
        while (w) {
            int bit = countr_zero(w);
            callback(int(i * 64) + bit);
            w &= w - 1;
        }
    }
}

vector<int> Bitset::to_indices() const {
    vector<int> result;
    for_each_set([&](int i) {result.push_back(i);});
    return result;
}

size_t Bitset::hash() const {
    // FNV-1a over the words.
    uint64_t h = 14695981039346656037ULL;
    for (uint64_t w : words) {
        h ^= w;
        h *= 1099511628211ULL;
    }
    return size_t(h);
}

}
