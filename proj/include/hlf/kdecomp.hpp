#pragma once

// Canonical decomposition of K_n^top classes: integer part (valuation map),
// tame part in (Z/(q-1))^n, and VK coordinates mod p^r obtained by solving
// against the pairing probes. Equality of symbol sums is observational: two
// classes are equal when the valuation, the tame components and every probe
// pairing agree.

#include <memory>
#include <optional>

#include "hlf/linalg.hpp"
#include "hlf/pairing.hpp"

namespace hlf {

struct KDecomp {
    i64 vZ = 0;
    std::vector<u64> tame;  // mod q-1, component per variable
    PeelTable vk;           // exponents mod p^r on (theta, i) generators
    int level = 1;
};

class KClassContext {
public:
    const FqSeriesRing& SR;
    PairingContext pc;

    struct VkGen {
        int theta_idx;
        MIdx i;
    };
    std::vector<VkGen> gens;  // ordered like the monomial probe family

    KClassContext(const FqSeriesRing& ring, int level);
    KClassContext(const FqSeriesRing& ring, int level, Window family_window);

    SymbolSum gen_symbol(const VkGen& g) const;

    /// vZ, tame and the probe-solved VK coordinates of a degree-n class.
    KDecomp decompose(const SymbolSum& a) const;

    /// vZ * {t_n,...,t_1} + sum tame_i * {g, ..^t_i..} + sum a * vk gens.
    SymbolSum rebuild(const KDecomp& d) const;

    /// Observational equality in K~_n at the truncation level.
    bool keq(const SymbolSum& a, const SymbolSum& b) const;

    /// Square Gram matrix between the canonical generator set
    /// ({t_n..t_1} then the VK generators) and the dual basis probes (one
    /// trace-nonzero constant, then the depth-0 monomial probes).
    ZpkMatrix square_gram() const;

    /// Rectangular generator matrix against the full probe set; cached.
    const ZpkMatrix& probe_matrix() const;

    /// Witt operations over F-series and the constant-class tables at this
    /// level (lazy; shared by reduction-aware callers).
    const WittOps<SeriesRing<FqField>>& wops() const;
    const WittConstClasses& consts() const;

private:
    mutable std::optional<ZpkMatrix> probe_matrix_;
    mutable std::unique_ptr<WittOps<SeriesRing<FqField>>> wops_;
    mutable std::unique_ptr<WittConstClasses> consts_;
    SymbolSum with_degree(const SymbolSum& a) const;
};

}  // namespace hlf
