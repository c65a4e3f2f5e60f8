#pragma once

// Cyclic prime-degree extensions, norm maps on fields and symbols, the
// Witt-side dual sequence evidence, and the three partial reciprocity maps.
//
// Extension shapes:
//  * unramified(l): residue field grows F_q -> F_{q^l}; parameters shared.
//  * tame(l, i):    l | q-1, new parameter s with s^l = t_i; residue field
//                   unchanged.
//  * artin_schreier(w0): degree-p, dimension 1 only, L = F[y]/(y^p - y - a)
//                   with a reduced of negative support.
//
// Galois elements are never materialized; reciprocity outputs are character
// data (Frobenius exponent, Kummer exponents, pairing values).

#include <memory>
#include <variant>

#include "hlf/kdecomp.hpp"

namespace hlf {

class UnramifiedExt {
public:
    int ell;
    FqField Lk;          // residue field F_{q^l}
    FqEmbedding embed;   // F_q -> F_{q^l}
    FqSeriesRing LS;     // series over L, same parameters and window
    const FqSeriesRing& FS;

    UnramifiedExt(const FqSeriesRing& base, int degree);

    FqSeries lift_series(const FqSeries& x) const;       // i_{F/L} on series
    FqSeries descend_series(const FqSeries& x) const;    // partial inverse; errors off-image
    bool is_base_rational(const FqSeries& x) const;
    FqSeries galois(const FqSeries& x, int k) const;     // coefficientwise q^k-power
    FqSeries norm_series(const FqSeries& x) const;       // product of conjugates, descended
};

class TameExt {
public:
    int ell;
    int var;           // 1-based index i with t_i = s^ell
    const FqSeriesRing& FS;
    FqSeriesRing LS;   // same coefficients; variable `var` reinterpreted as s
    FqElem zeta;       // fixed primitive ell-th root of unity in mu_{q-1}

    TameExt(const FqSeriesRing& base, int degree, int var_index);

    FqSeries lift_series(const FqSeries& x) const;   // t_i -> s^ell
    FqSeries descend_series(const FqSeries& x) const;
    bool is_base_rational(const FqSeries& x) const;
    FqSeries galois(const FqSeries& x, int k) const;  // s -> zeta^k s
    FqSeries norm_series(const FqSeries& x) const;
};

/// Degree-p Artin-Schreier extension of a 1-dimensional field, y^p - y = a.
class ArtinSchreierExt {
public:
    const FqSeriesRing& FS;
    FqSeries a;  // reduced defining element, negative support plus constant

    ArtinSchreierExt(const FqSeriesRing& base, FqSeries defining);

    /// Elements of L as polynomials in y of degree < p over F.
    using LElem = std::vector<FqSeries>;

    LElem lift(const FqSeries& x) const;
    LElem mul(const LElem& x, const LElem& y) const;
    LElem galois(const LElem& x, int k) const;  // y -> y + k
    /// Product of the p conjugates; must land in F.
    FqSeries norm(const LElem& x) const;
};

struct ExtensionDescriptor {
    std::variant<UnramifiedExt, TameExt, ArtinSchreierExt> ext;
};

/// Norm on symbols, induced slot-wise by the field norm. Terms with more
/// than one genuinely-L slot are first rewritten through the canonical
/// decomposition over L (all canonical generators have a single non-parameter
/// slot), so the result is correct as an observational class at the context
/// level.
SymbolSum norm_ksym(const KClassContext& KL, const UnramifiedExt& E, const SymbolSum& a);
SymbolSum norm_ksym(const KClassContext& KL, const TameExt& E, const SymbolSum& a);

/// i_{F/L} on symbols.
SymbolSum lift_ksym(const UnramifiedExt& E, const SymbolSum& a);
SymbolSum lift_ksym(const TameExt& E, const SymbolSum& a);

/// Norm down a tower of unramified prime-degree steps (innermost first):
/// the composition of the step norms. An empty tower is the identity.
SymbolSum norm_unram_tower(const FqSeriesRing& base, const std::vector<int>& degrees, const SymbolSum& top,
                           int level, Window family);
/// i_{F/L} up the same tower.
SymbolSum lift_unram_tower(const FqSeriesRing& base, const std::vector<int>& degrees, const SymbolSum& bottom);

/// Witt-side dual sequence checks for an unramified degree-p extension at
/// r = 1: (a) Tr(1-sigma) = 0, (b) Tr surjective onto reduced classes,
/// (c) dim ker Tr = dim im (1-sigma) on the window block.
struct DualSequenceReport {
    bool tr_after_shift_zero = false;
    bool tr_surjective = false;
    bool kernel_matches_image = false;
    size_t dim_space = 0, dim_ker = 0, dim_im = 0;
};

DualSequenceReport witt_dual_sequence_check(const UnramifiedExt& E, int samples, u64 seed);

/// The partial reciprocity maps.
i64 psi_ur(const FqSeriesRing& SR, const SymbolSum& a);
std::vector<u64> psi_tame(const FqSeriesRing& SR, const SymbolSum& a);
u64 psi_p(const KClassContext& K, const SymbolSum& a, const std::vector<FqSeries>& w);

struct ReciprocityReport {
    i64 ur_exponent = 0;
    std::vector<u64> tame_chars;
    std::vector<std::pair<std::vector<FqSeries>, u64>> p_chars;
    bool overlaps_agree = true;
};

ReciprocityReport reciprocity_report(const KClassContext& K, const SymbolSum& a,
                                     const std::vector<std::vector<FqSeries>>& queries);

}  // namespace hlf
