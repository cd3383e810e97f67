#pragma once

// Fixed-width bitset over 64-bit words, sized at construction.  Used for
// constraint-incidence bookkeeping in vertex enumeration and triangulation.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ctx {

struct Bits {
    std::vector<uint64_t> w;

    Bits() = default;
    explicit Bits(size_t nbits) : w((nbits + 63) / 64, 0) {}

    void set(size_t i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(size_t i) { w[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool test(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    static Bits intersect(const Bits& a, const Bits& b) {
        Bits r;
        r.w.resize(a.w.size());
        for (size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }

    static Bits unite(const Bits& a, const Bits& b) {
        Bits r;
        r.w.resize(a.w.size());
        for (size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] | b.w[i];
        return r;
    }

    bool subset_of(const Bits& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }

    size_t count() const {
        size_t c = 0;
        for (uint64_t x : w) c += __builtin_popcountll(x);
        return c;
    }

    static size_t count_intersect(const Bits& a, const Bits& b) {
        size_t c = 0;
        for (size_t i = 0; i < a.w.size(); ++i) c += __builtin_popcountll(a.w[i] & b.w[i]);
        return c;
    }

    friend bool operator==(const Bits& a, const Bits& b) { return a.w == b.w; }
    friend bool operator<(const Bits& a, const Bits& b) { return a.w < b.w; }
};

}  // namespace ctx
