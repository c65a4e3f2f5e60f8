#pragma once

// Topological Milnor K-symbol calculus. Symbol sums are formal integer
// combinations of entry tuples; no group relations are rewritten
// syntactically. Equality is observational (valuation, tame data, pairing) --
// see kdecomp.hpp.
//
// Sign conventions, fixed once:
//  * boundary() is the map K_m -> K_{m-1} of the outermost valuation with the
//    parameter-first normalization: a term {t_n, u_2, ..., u_m} maps to
//    {u_2bar, ..., u_mbar}; a single t_n in slot k is moved to the front
//    through antisymmetry, contributing (-1)^{k-1}.
//  * tame_boundary() is the same expansion normalized parameter-last, which
//    reproduces the classical two-argument tame symbol
//    t(x,y) = (-1)^{v(x)v(y)} x^{v(y)} y^{-v(x)} mod m. Iterating it from the
//    outermost variable inward gives tame_full with
//    tame_full({theta, t_1, ..., t_n}) = theta.
//  * {t_n, t_n} is rewritten as {-1, t_n} before expansion (at p = 2 the
//    term dies since -1 = 1).

#include <vector>

#include "hlf/peel.hpp"
#include "hlf/series.hpp"

namespace hlf {

struct SymTerm {
    i64 coef = 1;
    std::vector<FqSeries> ents;
};

struct SymbolSum {
    int deg = 0;
    std::vector<SymTerm> terms;
};

/// Total order on series used to merge identical symbol terms.
bool series_less(const FqSeries& a, const FqSeries& b);

SymbolSum sym_make(const FqSeriesRing& SR, std::vector<FqSeries> entries);
SymbolSum sym_add(const SymbolSum& a, const SymbolSum& b);
SymbolSum sym_scale(i64 s, const SymbolSum& a);
/// Sorts terms and merges equal entry tuples; drops zero coefficients and
/// terms with an entry equal to 1 (the zero class).
SymbolSum sym_normalize(const FqSeriesRing& SR, const SymbolSum& a);

/// Ring in one fewer variable (the residue field of the outer valuation).
FqSeriesRing residue_ring(const FqSeriesRing& SR);

/// Milnor boundary with respect to t_n, parameter-first convention.
SymbolSum boundary(const FqSeriesRing& SR, const FqSeriesRing& sub, const SymbolSum& a);
/// Same expansion, parameter-last convention (tame-symbol compatible).
SymbolSum tame_boundary(const FqSeriesRing& SR, const FqSeriesRing& sub, const SymbolSum& a);

/// Iterated boundary down to K_0 = Z, normalized by val({t_n,...,t_1}) = 1.
i64 val_map(const FqSeriesRing& SR, const SymbolSum& a);

/// Iterated tame symbol K_{n+1} -> F_q^*; on {theta, t_1, ..., t_n} returns
/// theta.
FqElem tame_full(const FqSeriesRing& SR, const SymbolSum& a);

/// Coordinates in (Z/(q-1))^n: component i is the discrete log of
/// tame_full(a u {t_i}) corrected for the reordering sign and for the
/// contamination of the {t_n,...,t_1} summand, so that
/// {theta, t_1, ..., ^t_i, ..., t_n} has dlog(theta) in slot i and
/// {t_n, ..., t_1} maps to zero.
std::vector<u64> tame_components(const FqSeriesRing& SR, const SymbolSum& a);

/// The canonical parameter symbol {t_n, t_{n-1}, ..., t_1}.
SymbolSum param_symbol(const FqSeriesRing& SR);
/// {theta, t_1, ..., ^t_i, ..., t_n} (i is 1-based).
SymbolSum tame_gen_symbol(const FqSeriesRing& SR, const FqElem& theta, int i);
/// {u, t_1, ..., ^t_l, ..., t_n} with l = l_of(i): the canonical VK generator
/// direction for u = 1 + theta t^i.
SymbolSum vk_gen_symbol(const FqSeriesRing& SR, const FqSeries& unit, const MIdx& i);

/// Routed generator sum: (eps_J) -> sum_J {eps_J, t_{j_1}, ..., t_{j_{m-1}}}.
/// Each eps_J must peel with min{l : p not dividing i_l} outside J.
SymbolSum h_map(const FqSeriesRing& SR, const std::vector<std::pair<std::vector<int>, FqSeries>>& eps, int m,
                int r_level);

}  // namespace hlf
