#pragma once

// The Artin-Schreier-Witt pairing
//   ( . , . ]_r : K_n^top(F)/p^r  x  W_r(F)/(F-1)W_r(F)  ->  Z/p^r
// realized by a ghost-lift residue algorithm. Per symbol term {x_1,...,x_n}:
//
//   1. lift every series coefficientwise by Teichmueller to Z_q at precision
//      p^{2r} (guard digits g = r);
//   2. D = det[(1/x_k) dx_k/dt_j], rows in symbol order, columns ordered
//      t_n, ..., t_1 (this orientation makes ({t_n,...,t_1}, a] = Tr a,
//      matching the valuation normalization; the overall normalization of
//      the classical explicit formula is a convention, fixed here);
//   3. ghost components gh_m of the lifted Witt vector;
//   4. rho_m = residue of gh_m * D at (-1, ..., -1), computed exactly: the
//      inverse of the combined unit part is evaluated only at the finitely
//      many indices the residue needs;
//   5. unghost (rho_0, ..., rho_{r-1}) over Z_q (divisions must be exact),
//      reduce mod p to W_r(F_q);
//   6. Witt-trace to W_r(F_p) and read off Z/p^r.
//
// An independent characteristic-p realization at r = 1
// (trace of residue of a*D) cross-checks the ghost route.

#include <memory>
#include <vector>

#include "hlf/ksym.hpp"
#include "hlf/witt.hpp"
#include "hlf/zq.hpp"

namespace hlf {

/// A canonical element of the dual side: V^j [eta t^{-i}] with eta in the
/// F_p-basis of F_q and i in-window, significance-positive, not p-divisible
/// in every coordinate; or the constant probe [eta].
struct Probe {
    bool is_const = false;
    int j = 0;        // Verschiebung depth
    int eta_idx = 0;  // F_p-basis index
    MIdx i;           // pairing argument carries t^{-i}
};

/// Value in (1/p^level) Z / Z, kept as num/p^level with num reduced.
struct PadicFrac {
    u64 num = 0;
    int level = 0;

    friend bool operator==(const PadicFrac&, const PadicFrac&) = default;
};

class PairingContext {
public:
    const FqSeriesRing& SR;
    int r;
    u64 pr;   // p^r
    ZqRing zq;  // precision 2r
    WittPolys wp;
    WittOps<FqField> Wfq;
    WrZmodIso iso;
    Window family;              // index range of the probe/generator family
    std::vector<Probe> probes;  // constants first, then (i, eta, j) ascending

    /// `family_window` bounds the probe index family; it defaults to the
    /// ring's window and must be contained in it. A storage window larger
    /// than the family keeps generator products exact while the dual family
    /// stays desk-sized.
    PairingContext(const FqSeriesRing& ring, int level);
    PairingContext(const FqSeriesRing& ring, int level, Window family_window);

    /// The full pairing. `w` is a length-r Witt vector over F-series.
    u64 pair(const SymbolSum& a, const std::vector<FqSeries>& w) const;

    u64 pair_probe(const SymbolSum& a, const Probe& pb) const;
    std::vector<FqSeries> probe_witt(const Probe& pb) const;

    PadicFrac pair_limit(const SymbolSum& a, const std::vector<FqSeries>& w) const;

private:
    u64 pair_term(const SymTerm& t, const std::vector<CoeffMap<ZqRing>>& ghosts) const;
};

/// Independent r = 1 realization computed entirely in characteristic p:
/// fq_trace(residue_n(a * D)).
u64 asw_pair_r1_direct(const FqSeriesRing& SR, const SymbolSum& alpha, const FqSeries& a);

}  // namespace hlf
