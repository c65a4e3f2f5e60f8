#pragma once

// Dense linear algebra over Z/p^k (unit-pivot Gaussian elimination) and over
// the prime field, sized for probe Gram matrices and window-block checks.

#include <vector>

#include "hlf/common.hpp"

namespace hlf {

struct ZpkMatrix {
    u64 p = 2;
    int k = 1;
    u64 mod = 2;  // p^k
    size_t rows = 0, cols = 0;
    std::vector<u64> a;  // row-major

    ZpkMatrix() = default;
    ZpkMatrix(u64 p_, int k_, size_t r, size_t c)
        : p(p_), k(k_), mod(ipow_checked(p_, static_cast<unsigned>(k_))), rows(r), cols(c), a(r * c, 0) {}

    u64& at(size_t i, size_t j) { return a[i * cols + j]; }
    u64 at(size_t i, size_t j) const { return a[i * cols + j]; }
};

/// Solves M x = b over Z/p^k for a (possibly overdetermined) consistent
/// system whose column space admits unit pivots. Throws DomainError if a
/// pivot cannot be found for some column or the extra rows are inconsistent.
std::vector<u64> zpk_solve(ZpkMatrix M, std::vector<u64> b);

/// True iff the square matrix is invertible over Z/p^k (equivalently its
/// reduction mod p is invertible).
bool zpk_invertible(ZpkMatrix M);

/// Rank of the reduction mod p.
size_t zpk_rank_mod_p(ZpkMatrix M);

}  // namespace hlf
