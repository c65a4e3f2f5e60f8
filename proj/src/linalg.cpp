#include "hlf/linalg.hpp"

namespace hlf {

namespace {

u64 zpk_inv_unit(u64 a, u64 mod, u64 p) {
    if (a % p == 0) throw InternalError("inverting a non-unit mod p^k");
    // Euler: a^{phi(p^k)-1}; phi = p^k - p^{k-1}
    u64 phi = mod - mod / p;
    return powmod(a, phi - 1, mod);
}

}  // namespace

std::vector<u64> zpk_solve(ZpkMatrix M, std::vector<u64> b) {
    if (b.size() != M.rows) throw InternalError("rhs size mismatch");
    const u64 mod = M.mod;
    std::vector<size_t> pivot_row(M.cols);
    size_t next_row = 0;
    for (size_t col = 0; col < M.cols; ++col) {
        size_t pr = M.rows;
        for (size_t r = next_row; r < M.rows; ++r)
            if (M.at(r, col) % M.p != 0) { pr = r; break; }
        if (pr == M.rows)
            throw DomainError("singular probe matrix (window too small for the requested level)");
        for (size_t c = 0; c < M.cols; ++c) std::swap(M.at(pr, c), M.at(next_row, c));
        std::swap(b[pr], b[next_row]);
        u64 inv = zpk_inv_unit(M.at(next_row, col), mod, M.p);
        for (size_t c = 0; c < M.cols; ++c) M.at(next_row, c) = mulmod(M.at(next_row, c), inv, mod);
        b[next_row] = mulmod(b[next_row], inv, mod);
        for (size_t r = 0; r < M.rows; ++r) {
            if (r == next_row) continue;
            u64 f = M.at(r, col);
            if (!f) continue;
            for (size_t c = 0; c < M.cols; ++c)
                M.at(r, c) = submod(M.at(r, c), mulmod(f, M.at(next_row, c), mod), mod);
            b[r] = submod(b[r], mulmod(f, b[next_row], mod), mod);
        }
        pivot_row[col] = next_row;
        ++next_row;
    }
    for (size_t r = next_row; r < M.rows; ++r)
        if (b[r] != 0) throw DomainError("inconsistent probe system (pairing data disagrees)");
    std::vector<u64> x(M.cols);
    for (size_t col = 0; col < M.cols; ++col) x[col] = b[pivot_row[col]];
    return x;
}

bool zpk_invertible(ZpkMatrix M) {
    if (M.rows != M.cols) return false;
    return zpk_rank_mod_p(M) == M.rows;
}

size_t zpk_rank_mod_p(ZpkMatrix M) {
    const u64 p = M.p;
    for (auto& v : M.a) v %= p;
    size_t rank = 0;
    for (size_t col = 0; col < M.cols && rank < M.rows; ++col) {
        size_t pr = M.rows;
        for (size_t r = rank; r < M.rows; ++r)
            if (M.at(r, col)) { pr = r; break; }
        if (pr == M.rows) continue;
        for (size_t c = 0; c < M.cols; ++c) std::swap(M.at(pr, c), M.at(rank, c));
        u64 inv = powmod(M.at(rank, col), p - 2, p);
        for (size_t c = 0; c < M.cols; ++c) M.at(rank, c) = mulmod(M.at(rank, c), inv, p);
        for (size_t r = 0; r < M.rows; ++r) {
            if (r == rank) continue;
            u64 f = M.at(r, col);
            if (!f) continue;
            for (size_t c = 0; c < M.cols; ++c) M.at(r, c) = submod(M.at(r, c), mulmod(f, M.at(rank, c), p), p);
        }
        ++rank;
    }
    return rank;
}

}  // namespace hlf
