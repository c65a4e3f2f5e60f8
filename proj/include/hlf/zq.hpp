#pragma once

// Unramified lift Z_q/p^N of F_q, with the coefficientwise lift of the
// defining modulus. Supplies Teichmueller representatives, the lifted
// Frobenius (computed by Hensel iteration, so it is correct for any lift of
// the modulus), traces, and exact division by powers of p. This is the
// characteristic-zero side of the ghost-residue computations.

#include <array>
#include <vector>

#include "hlf/fq.hpp"

namespace hlf {

struct ZqElem {
    std::array<u64, kMaxF> c{};  // coordinates mod p^N in the power basis
    friend bool operator==(const ZqElem&, const ZqElem&) = default;
    friend auto operator<=>(const ZqElem&, const ZqElem&) = default;
};

class ZqRing {
public:
    const FqField* k;
    int N;
    u64 pN;  // p^N

    ZqRing(const FqField& base, int precision);

    using Elem = ZqElem;

    ZqElem zero() const { return ZqElem{}; }
    ZqElem one() const { return from_int(1); }
    ZqElem from_int(i64 v) const {
        ZqElem e{};
        e.c[0] = imod(v, pN);
        return e;
    }
    bool is_zero(const ZqElem& a) const { return a == ZqElem{}; }

    ZqElem add(const ZqElem& a, const ZqElem& b) const;
    ZqElem sub(const ZqElem& a, const ZqElem& b) const;
    ZqElem neg(const ZqElem& a) const;
    ZqElem mul(const ZqElem& a, const ZqElem& b) const;
    ZqElem pow(const ZqElem& a, u64 e) const;
    /// Inverse of a unit (nonzero mod p), by Newton lifting.
    ZqElem inv(const ZqElem& a) const;

    FqElem reduce_mod_p(const ZqElem& a) const;
    ZqElem lift_coeffwise(const FqElem& a) const;
    /// Multiplicative representative: reduces to `a` mod p and satisfies
    /// t^q = t. teich(ab) = teich(a) teich(b).
    ZqElem teichmuller(const FqElem& a) const;

    /// Lifted Frobenius: the ring automorphism reducing to x -> x^p.
    ZqElem frobenius(const ZqElem& a) const;
    /// Sum of the f Frobenius conjugates, returned as an element of Z/p^N.
    u64 trace(const ZqElem& a) const;

    bool divisible_p(const ZqElem& a, int m) const;
    /// Exact division by p^m; errors if not divisible (never rounds).
    ZqElem divexact_p(const ZqElem& a, int m) const;

private:
    std::array<ZqElem, kMaxF> xpow_red_;   // x^{f+k} mod lifted modulus
    std::array<ZqElem, kMaxF> frob_pows_;  // sigma(x)^k
    ZqElem eval_at(const std::vector<u64>& poly, const ZqElem& at) const;
};

}  // namespace hlf
