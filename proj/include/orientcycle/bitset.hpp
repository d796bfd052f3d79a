#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oc {

// Dense bitset over a fixed universe [0, n). Every vertex set and adjacency
// row in the library is one of these; n is small enough (<= ~10^4) that the
// dense representation wins everywhere.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    static Bitset full(int n) {
        Bitset b(n);
        for (int i = 0; i < n; ++i) b.set(i);
        return b;
    }

    int universe() const { return n_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void set(int i) {
        check(i);
        w_[i >> 6] |= uint64_t(1) << (i & 63);
    }

    void reset(int i) {
        check(i);
        w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    Bitset& operator|=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    Bitset& operator-=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    bool intersects(const Bitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    int count_and(const Bitset& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += __builtin_popcountll(w_[i] & o.w_[i]);
        return c;
    }

    bool is_subset_of(const Bitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // First set bit, or -1.
    int first() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64) + __builtin_ctzll(w_[i]);
        return -1;
    }

    // First set bit strictly greater than i, or -1.
    int next(int i) const {
        ++i;
        if (i >= n_) return -1;
        size_t wi = size_t(i) >> 6;
        uint64_t w = w_[wi] & (~uint64_t(0) << (i & 63));
        while (true) {
            if (w) return int(wi * 64) + __builtin_ctzll(w);
            if (++wi >= w_.size()) return -1;
            w = w_[wi];
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t w = w_[i];
            while (w) {
                f(int(i * 64) + __builtin_ctzll(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

private:
    void check(int i) const {
        if (i < 0 || i >= n_) throw std::out_of_range("Bitset index out of range");
    }

    int n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace oc
