#pragma once

// Witt vectors W_r over any coefficient ring supplied by the series/field
// layers. The ring structure comes from universal integer polynomials
// computed once per (p, r) by the ghost recursion; they are cached with
// coefficients modulo a p-power large enough for every evaluation precision
// used afterwards, and checked against componentwise ghost arithmetic at
// construction.

#include <cstdint>
#include <map>
#include <vector>

#include "hlf/common.hpp"
#include "hlf/fq.hpp"
#include "hlf/series.hpp"

namespace hlf {

/// Plain modular integers, used for ghost checks and the W_r(F_p) table.
struct ZmodRing {
    u64 m;  // modulus
    u64 p;  // residue characteristic (for divexact)
    using Elem = u64;

    u64 zero() const { return 0; }
    u64 one() const { return 1 % m; }
    u64 from_int(i64 v) const { return imod(v, m); }
    bool is_zero(u64 a) const { return a == 0; }
    u64 add(u64 a, u64 b) const { return addmod(a, b, m); }
    u64 sub(u64 a, u64 b) const { return submod(a, b, m); }
    u64 neg(u64 a) const { return submod(0, a, m); }
    u64 mul(u64 a, u64 b) const { return mulmod(a, b, m); }
    bool divisible_p(u64 a, int e) const { return a % ipow_checked(p, static_cast<unsigned>(e)) == 0; }
    u64 divexact_p(u64 a, int e) const {
        u64 pe = ipow_checked(p, static_cast<unsigned>(e));
        if (a % pe) throw DomainError("integrality violation: inexact division by p^m");
        return a / pe;
    }
};

struct WittMono {
    u64 coeff;                   // valid modulo p^digits
    std::vector<std::uint8_t> exps;  // exponents of x_0..x_{r-1}, y_0..y_{r-1}
};

struct WittPoly {
    std::vector<WittMono> terms;
};

/// Sum / product / negation structure polynomials for W_r, coefficients
/// cached mod p^{digits + guard}. `digits` bounds the precision of every ring
/// these polynomials will be evaluated over.
class WittPolys {
public:
    u64 p;
    int r;
    int digits;

    WittPolys(u64 p_, int r_, int digits_);

    const WittPoly& sum(int m) const { return sum_[m]; }
    const WittPoly& prod(int m) const { return prod_[m]; }
    const WittPoly& negp(int m) const { return neg_[m]; }

private:
    std::vector<WittPoly> sum_, prod_, neg_;
    void self_check() const;
};

template <class Ring>
class WittOps {
public:
    const Ring& R;
    const WittPolys& wp;
    u64 p;
    int r;

    using Elem = typename Ring::Elem;
    using WV = std::vector<Elem>;

    WittOps(const Ring& ring, const WittPolys& polys) : R(ring), wp(polys), p(polys.p), r(polys.r) {}

    WV zero() const { return WV(static_cast<size_t>(r), R.zero()); }
    bool is_zero(const WV& a) const {
        for (const auto& c : a)
            if (!R.is_zero(c)) return false;
        return true;
    }
    WV teich(const Elem& c) const {
        WV v = zero();
        v[0] = c;
        return v;
    }

    Elem elem_pow(const Elem& a, u64 e) const {
        Elem acc = R.one(), base = a;
        while (e) {
            if (e & 1) acc = R.mul(acc, base);
            base = R.mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    Elem eval(const WittPoly& poly, const WV& x, const WV& y) const {
        Elem acc = R.zero();
        for (const auto& mono : poly.terms) {
            Elem t = R.from_int(static_cast<i64>(mono.coeff));
            if (R.is_zero(t)) continue;
            for (size_t v = 0; v < mono.exps.size(); ++v) {
                if (!mono.exps[v]) continue;
                const Elem& var = v < static_cast<size_t>(r) ? x[v] : y[v - r];
                t = R.mul(t, elem_pow(var, mono.exps[v]));
            }
            acc = R.add(acc, t);
        }
        return acc;
    }

    WV add(const WV& a, const WV& b) const {
        check(a), check(b);
        WV v(static_cast<size_t>(r));
        for (int m = 0; m < r; ++m) v[m] = eval(wp.sum(m), a, b);
        return v;
    }

    WV neg(const WV& a) const {
        check(a);
        WV v(static_cast<size_t>(r));
        for (int m = 0; m < r; ++m) v[m] = eval(wp.negp(m), a, a);
        return v;
    }

    WV sub(const WV& a, const WV& b) const { return add(a, neg(b)); }

    WV mul(const WV& a, const WV& b) const {
        check(a), check(b);
        WV v(static_cast<size_t>(r));
        for (int m = 0; m < r; ++m) v[m] = eval(wp.prod(m), a, b);
        return v;
    }

    /// m-fold Witt sum of a (m >= 0).
    WV smul(u64 m, const WV& a) const {
        WV acc = zero(), base = a;
        while (m) {
            if (m & 1) acc = add(acc, base);
            if (m >>= 1) base = add(base, base);
        }
        return acc;
    }

    /// Verschiebung: right shift, dropping the top component.
    WV V(const WV& a) const {
        check(a);
        WV v = zero();
        for (int m = r - 1; m >= 1; --m) v[m] = a[m - 1];
        return v;
    }

    /// Frobenius in characteristic p: componentwise p-th power. Rings that
    /// expose an exact Frobenius (fields, char-p series) get that; otherwise
    /// the power is formed by multiplication.
    WV F_charp(const WV& a) const {
        check(a);
        WV v(static_cast<size_t>(r));
        for (int m = 0; m < r; ++m) {
            if constexpr (requires(const Ring& rr, const Elem& e) { rr.frobenius_p(e); })
                v[m] = R.frobenius_p(a[m]);
            else
                v[m] = elem_pow(a[m], p);
        }
        return v;
    }

    /// Ghost components gh_m = sum_{i<=m} p^i a_i^{p^{m-i}} (char-0 rings).
    WV ghost(const WV& a) const {
        check(a);
        WV g(static_cast<size_t>(r));
        for (int m = 0; m < r; ++m) {
            Elem acc = R.zero();
            u64 pi = 1;
            for (int i = 0; i <= m; ++i) {
                Elem t = R.mul(R.from_int(static_cast<i64>(pi)),
                               elem_pow(a[i], ipow_checked(p, static_cast<unsigned>(m - i))));
                acc = R.add(acc, t);
                pi *= p;
            }
            g[m] = acc;
        }
        return g;
    }

    /// Inverse of ghost; every division by p^m must be exact at the working
    /// precision, otherwise a DomainError is raised (never rounded).
    WV unghost(const WV& g) const
        requires requires(const Ring& rr, const Elem& c) { rr.divexact_p(c, 1); }
    {
        check(g);
        WV x(static_cast<size_t>(r));
        for (int m = 0; m < r; ++m) {
            Elem acc = g[m];
            u64 pi = 1;
            for (int i = 0; i < m; ++i) {
                acc = R.sub(acc, R.mul(R.from_int(static_cast<i64>(pi)),
                                       elem_pow(x[i], ipow_checked(p, static_cast<unsigned>(m - i)))));
                pi *= p;
            }
            x[m] = m == 0 ? acc : R.divexact_p(acc, m);
        }
        return x;
    }

private:
    void check(const WV& a) const {
        if (static_cast<int>(a.size()) != r) throw DomainError("Witt vector length does not match the context");
    }
};

/// The unique ring isomorphism W_r(F_p) = Z/p^r, tabulated as m -> m*(1,0,...,0).
class WrZmodIso {
public:
    u64 p;
    int r;
    u64 pr;

    WrZmodIso(const WittPolys& polys);

    u64 to_zmod(const std::vector<u64>& comps) const;
    const std::vector<u64>& from_zmod(u64 m) const { return reps_[m]; }

private:
    std::vector<std::vector<u64>> reps_;
    std::map<std::vector<u64>, u64> back_;
};

/// Witt-vector trace to W_r(F_p): the Witt sum of the f Frobenius twists.
/// Errors if the result fails to land over the prime field.
std::vector<u64> witt_trace_fp(const WittOps<FqField>& W, const std::vector<FqElem>& a);

/// Canonical coset representatives of W_r(F_q)/(F-1)W_r(F_q): the
/// lexicographically least member. Lazy, memoized.
class WittConstClasses {
public:
    WittConstClasses(const FqField& k, const WittPolys& polys);

    std::vector<FqElem> canon(const std::vector<FqElem>& a) const;
    /// Number of classes (= p^r for the unramified quotient).
    size_t class_count() const;

private:
    const FqField& k_;
    WittOps<FqField> W_;
    std::vector<std::vector<FqElem>> image_;  // all (F-1)(x), deduplicated
    mutable std::map<std::vector<FqElem>, std::vector<FqElem>> memo_;
};

// --- Artin-Schreier-Witt normal form over series --------------------------

/// A Witt vector over F-series reduced modulo (F-1)W_r(F): components are
/// supported on non-positive indices, strictly negative indices are not
/// p-divisible in every coordinate, and the constant part is the canonical
/// representative of its class in W_r(F_q)/(F-1).
struct ASWClass {
    std::vector<FqSeries> comps;
    int level = 1;
};

ASWClass asw_reduce(const FqSeriesRing& SR, const WittOps<SeriesRing<FqField>>& W, const WittConstClasses& consts,
                    const std::vector<FqSeries>& w);

}  // namespace hlf
