#pragma once

#include <cstdint>
#include <vector>

namespace wlcc {

// Dense GF(2) row vector packed into 64-bit words.
struct Gf2Vector {
    int nbits = 0;
    std::vector<uint64_t> words;

    Gf2Vector() = default;
    explicit Gf2Vector(int n) : nbits(n), words((n + 63) / 64, 0) {}

    bool get(int i) const { return (words[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool b) {
        uint64_t mask = uint64_t(1) << (i & 63);
        if (b)
            words[i >> 6] |= mask;
        else
            words[i >> 6] &= ~mask;
    }
    void flip(int i) { words[i >> 6] ^= uint64_t(1) << (i & 63); }
    void operator^=(const Gf2Vector& o) {
        for (size_t w = 0; w < words.size(); ++w) words[w] ^= o.words[w];
    }
    bool zero() const {
        for (uint64_t w : words)
            if (w) return false;
        return true;
    }
    int lowest_set() const;  // -1 if zero
    bool dot(const Gf2Vector& o) const;
};

struct Gf2Solution {
    bool solvable = false;
    std::vector<char> x;  // one solution when solvable
};

// Gaussian elimination with least-column pivots.
Gf2Solution gf2_solve(const std::vector<Gf2Vector>& rows, const std::vector<char>& rhs);

// Row-reduced system A x = b solved for many b: caches the elimination of A
// and a basis of its left kernel; b is consistent iff orthogonal to every
// left-kernel vector.
class Gf2Eliminator {
public:
    Gf2Eliminator(std::vector<Gf2Vector> rows, int ncols);

    int rank() const { return rank_; }
    int kernel_dimension() const { return ncols_ - rank_; }
    bool consistent(const std::vector<char>& rhs) const;

private:
    int ncols_ = 0;
    int rank_ = 0;
    std::vector<Gf2Vector> left_kernel_;  // combinations of original rows summing to zero
};

}  // namespace wlcc
