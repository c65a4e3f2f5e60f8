#pragma once

// Peeling a principal unit into canonical topological generators
// 1 + theta t^i, theta over the F_p-basis of the residue field, with
// p not dividing gcd(i). Exponents are recorded mod p^r.

#include <map>

#include "hlf/series.hpp"

namespace hlf {

struct PeelKey {
    int theta_idx = 0;  // index into the F_p power basis of F_q
    MIdx i;

    friend bool operator==(const PeelKey&, const PeelKey&) = default;
};

struct PeelKeyLess {
    bool operator()(const PeelKey& a, const PeelKey& b) const {
        if (!(a.i == b.i)) return sig_less(a.i, b.i);
        return a.theta_idx < b.theta_idx;
    }
};

/// Exponent table {(theta, i) -> a mod p^r}. `l(i) = min{k : p does not
/// divide i_k}` is derived, not stored.
struct PeelTable {
    std::map<PeelKey, u64, PeelKeyLess> a;
    int level = 1;

    friend bool operator==(const PeelTable&, const PeelTable&) = default;
};

/// 1-based position of the first coordinate of i not divisible by p.
int l_of(const MIdx& i, int n, u64 p);

/// Writes the principal unit u as a product of generators (1 + theta t^i)^a
/// taken in increasing significance order, up to window truncation. Leading
/// terms at p-divisible indices are handled by exact p^k-th roots, so the
/// recorded exponent picks up a factor p^k; reconstruction mod p^r is exact
/// provided the true exponents are below p^r.
PeelTable unit_peel(const FqSeriesRing& SR, const FqSeries& u, int r_level);

/// Product of the table's generators in increasing significance order.
FqSeries rebuild_unit(const FqSeriesRing& SR, const PeelTable& table);

}  // namespace hlf
