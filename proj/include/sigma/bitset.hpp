#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace sigma {

// Fixed-universe bitset sized at runtime. Used both for element sets of a
// group (universe = group order) and for sets of subgroup indices.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

    static Bitset single(int universe, int i) {
        Bitset b(universe);
        b.set(i);
        return b;
    }
    static Bitset full(int universe) {
        Bitset b(universe);
        for (int i = 0; i < universe; ++i) b.set(i);
        return b;
    }

    int universe() const { return n_; }
    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    bool subset_of(const Bitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool intersects(const Bitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    Bitset& operator|=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }
    friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }

    // total order: by popcount is handled by callers; this compares the raw
    // words high-to-low so equal-order masks sort deterministically
    friend bool operator<(const Bitset& a, const Bitset& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (size_t i = a.w_.size(); i-- > 0;)
            if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
        return false;
    }

    // lowest set bit >= from, or -1
    int next(int from = 0) const {
        if (from >= n_) return -1;
        int wi = from >> 6;
        uint64_t w = w_[wi] & (~uint64_t(0) << (from & 63));
        while (true) {
            if (w) return (wi << 6) + __builtin_ctzll(w);
            if (++wi >= (int)w_.size()) return -1;
            w = w_[wi];
        }
    }

    template <typename F>
    void for_each(F f) const {
        for (int i = next(0); i >= 0; i = next(i + 1)) f(i);
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace sigma
