#pragma once

// Sparse truncated iterated Laurent series in t_1, ..., t_n (n <= 4) over a
// coefficient ring R (the residue field or its p-adic lift).
//
// Order convention used everywhere ("significance order"): indices compare
// by i_n first, then i_{n-1}, ..., then i_1; t_n is the outermost variable of
// F = K_0((t_1))...((t_n)). The valuation of a nonzero series is its smallest
// support index in this order.
//
// Truncation model: a fixed per-variable exponent box (Window). Ring ops are
// exact inside the window; a product that would overflow the box is truncated
// and the result's exactness flag is cleared. Inversion returns the true
// inverse coefficients restricted to the window; the flag stays set only when
// the true inverse is finite (monomial case).
//
// For residue extraction the window model is not enough, so there is a
// dedicated exact path: inverse_coeffs_at() computes true coefficients of
// u^{-1} at a requested index set by a recurrence over the support monoid of
// u - 1 (every true support index of u^{-1} is a sum of support indices of
// u - 1, which are significance-positive, so the recurrence closes over a
// finite explored set).

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "hlf/common.hpp"
#include "hlf/fq.hpp"

namespace hlf {

inline constexpr int kMaxN = 4;

struct MIdx {
    std::array<int, kMaxN> e{};
    friend bool operator==(const MIdx&, const MIdx&) = default;
};

inline MIdx midx_add(const MIdx& a, const MIdx& b) {
    MIdx r;
    for (int c = 0; c < kMaxN; ++c) r.e[c] = a.e[c] + b.e[c];
    return r;
}
inline MIdx midx_sub(const MIdx& a, const MIdx& b) {
    MIdx r;
    for (int c = 0; c < kMaxN; ++c) r.e[c] = a.e[c] - b.e[c];
    return r;
}
inline MIdx midx_neg(const MIdx& a) {
    MIdx r;
    for (int c = 0; c < kMaxN; ++c) r.e[c] = -a.e[c];
    return r;
}
inline MIdx midx_scale(const MIdx& a, int s) {
    MIdx r;
    for (int c = 0; c < kMaxN; ++c) r.e[c] = a.e[c] * s;
    return r;
}

/// Significance order: most significant coordinate last.
inline bool sig_less(const MIdx& a, const MIdx& b) {
    for (int c = kMaxN - 1; c >= 0; --c) {
        if (a.e[c] != b.e[c]) return a.e[c] < b.e[c];
    }
    return false;
}
inline bool sig_positive(const MIdx& a) { return sig_less(MIdx{}, a); }
inline bool sig_nonneg(const MIdx& a) { return !sig_less(a, MIdx{}); }

struct SigLess {
    bool operator()(const MIdx& a, const MIdx& b) const { return sig_less(a, b); }
};

/// Exact coefficients of (1 + mhat)^{-1} at the indices in `needed`, where
/// every support index of mhat is significance-positive. The true inverse is
/// supported on the monoid generated by supp(mhat); the recurrence
/// z_i = [i=0] - sum_g mhat_g z_{i-g} closes over a finite explored set
/// because a mixed-radix weight phi is additive, >= 1 on every generator and
/// >= 0 on the monoid. Indices outside the monoid come back as zero (absent).
template <class R>
std::map<MIdx, typename R::Elem, SigLess> inverse_coeffs_at(const R& k,
                                                            const std::map<MIdx, typename R::Elem, SigLess>& mhat,
                                                            const std::vector<MIdx>& needed) {
    std::vector<MIdx> gens;
    int maxabs = 1;
    for (const auto& [i, c] : mhat) {
        (void)c;
        if (!sig_positive(i)) throw InternalError("unit part has non-positive support");
        gens.push_back(i);
        for (int c2 = 0; c2 < kMaxN; ++c2) maxabs = std::max(maxabs, std::abs(i.e[c2]));
    }
    for (const MIdx& i : needed)
        for (int c = 0; c < kMaxN; ++c) maxabs = std::max(maxabs, std::abs(i.e[c]));

    const i64 B = 2 * static_cast<i64>(maxabs) + 3;
    auto phi = [&](const MIdx& i) {
        i64 v = 0, w = 1;
        for (int c = 0; c < kMaxN; ++c, w *= B) v += static_cast<i64>(i.e[c]) * w;
        return v;
    };

    std::set<MIdx, SigLess> seen;
    std::vector<MIdx> queue;
    auto admit = [&](const MIdx& i) {
        if (!sig_nonneg(i) || phi(i) < 0) return;
        if (seen.insert(i).second) queue.push_back(i);
    };
    for (const MIdx& i : needed) admit(i);
    for (size_t head = 0; head < queue.size(); ++head) {
        MIdx cur = queue[head];
        for (const MIdx& g : gens) admit(midx_sub(cur, g));
        if (seen.size() > 4'000'000) throw DomainError("exact inversion exceeded its work bound");
    }

    std::map<MIdx, typename R::Elem, SigLess> z;
    for (const MIdx& i : seen) {  // std::set iterates ascending, dependencies come first
        typename R::Elem acc = (i == MIdx{}) ? k.one() : k.zero();
        for (const auto& [g, cg] : mhat) {
            auto it = z.find(midx_sub(i, g));
            if (it != z.end()) acc = k.sub(acc, k.mul(cg, it->second));
        }
        if (!k.is_zero(acc)) z.emplace(i, acc);
    }
    return z;
}

struct Window {
    std::array<int, kMaxN> lo{}, hi{};
    int n = 1;

    static Window box(int n, int radius) {
        Window w;
        w.n = n;
        for (int c = 0; c < n; ++c) { w.lo[c] = -radius; w.hi[c] = radius; }
        return w;
    }

    bool contains(const MIdx& i) const {
        for (int c = 0; c < kMaxN; ++c) {
            int l = c < n ? lo[c] : 0, h = c < n ? hi[c] : 0;
            if (i.e[c] < l || i.e[c] > h) return false;
        }
        return true;
    }

    void validate() const {
        if (n < 0 || n > kMaxN) throw DomainError("dimension n out of range");
        for (int c = 0; c < n; ++c)
            if (lo[c] > 0 || hi[c] < 0) throw DomainError("window must contain exponent 0 in every variable");
    }
};

template <class R>
struct Series {
    using Coeff = typename R::Elem;
    std::map<MIdx, Coeff, SigLess> t;
    bool exact = true;  // false once window truncation discarded a term

    bool empty() const { return t.empty(); }
};

template <class R>
class SeriesRing {
public:
    using Coeff = typename R::Elem;
    using Elem = Series<R>;

    const R& k;
    int n;
    Window win;

    SeriesRing(const R& ring, int n_, Window w) : k(ring), n(n_), win(w) {
        win.n = n_;
        win.validate();
    }

    // --- ring surface -------------------------------------------------------

    Elem zero() const { return Elem{}; }
    Elem one() const { return from_int(1); }
    Elem from_int(i64 v) const { return constant(k.from_int(v)); }
    Elem constant(const Coeff& c) const {
        Elem r;
        if (!k.is_zero(c)) r.t.emplace(MIdx{}, c);
        return r;
    }
    bool is_zero(const Elem& a) const { return a.t.empty(); }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        r.exact = a.exact && b.exact;
        for (const auto& [i, c] : b.t) accumulate(r, i, c);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const {
        Elem r = a;
        r.exact = a.exact && b.exact;
        for (const auto& [i, c] : b.t) accumulate(r, i, k.neg(c));
        return r;
    }

    Elem neg(const Elem& a) const {
        Elem r;
        r.exact = a.exact;
        for (const auto& [i, c] : a.t) r.t.emplace(i, k.neg(c));
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        Elem r;
        r.exact = a.exact && b.exact;
        for (const auto& [ia, ca] : a.t)
            for (const auto& [ib, cb] : b.t) {
                MIdx i = midx_add(ia, ib);
                if (!win.contains(i)) {
                    r.exact = false;
                    continue;
                }
                accumulate_in(r, i, k.mul(ca, cb));
            }
        return r;
    }

    // --- builders / accessors ----------------------------------------------

    Elem monomial(const MIdx& i, const Coeff& c) const {
        Elem r;
        if (k.is_zero(c)) return r;
        if (!win.contains(i)) throw DomainError("monomial index outside window");
        r.t.emplace(i, c);
        return r;
    }

    /// In-place add of c * t^i with window truncation semantics.
    void accumulate(Elem& r, const MIdx& i, const Coeff& c) const {
        if (k.is_zero(c)) return;
        if (!win.contains(i)) {
            r.exact = false;
            return;
        }
        accumulate_in(r, i, c);
    }

    Coeff coeff_at(const Elem& a, const MIdx& i) const {
        auto it = a.t.find(i);
        return it == a.t.end() ? k.zero() : it->second;
    }

    /// Smallest support index in significance order (the rank-n valuation).
    MIdx valuation(const Elem& a) const {
        if (a.t.empty()) throw DomainError("valuation of zero series");
        return a.t.begin()->first;
    }
    Coeff leading_coeff(const Elem& a) const {
        if (a.t.empty()) throw DomainError("leading coefficient of zero series");
        return a.t.begin()->second;
    }

    Elem scale(const Coeff& c, const Elem& a) const {
        Elem r;
        r.exact = a.exact;
        if (k.is_zero(c)) return r;
        for (const auto& [i, v] : a.t) {
            Coeff w = k.mul(c, v);
            if (!k.is_zero(w)) r.t.emplace(i, w);
        }
        return r;
    }

    Elem scale_int(i64 s, const Elem& a) const { return scale(k.from_int(s), a); }

    /// Multiply by the monomial t^d (exact index shift).
    Elem shift(const Elem& a, const MIdx& d) const {
        Elem r;
        r.exact = a.exact;
        for (const auto& [i, c] : a.t) {
            MIdx j = midx_add(i, d);
            if (!win.contains(j)) {
                r.exact = false;
                continue;
            }
            r.t.emplace(j, c);
        }
        return r;
    }

    Elem pow_int(const Elem& a, u64 e) const {
        Elem r = one(), base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // --- structural operations ----------------------------------------------

    /// x = t^a * theta * u with u a principal unit (v(u - 1) > 0).
    struct Split {
        MIdx a;
        Coeff theta;
        Elem unit;
    };

    Split split(const Elem& x) const {
        if (x.t.empty()) throw DomainError("multiplicative split of zero");
        Split s;
        s.a = valuation(x);
        s.theta = leading_coeff(x);
        Coeff ti = k.inv(s.theta);
        Elem u;
        u.exact = x.exact;
        for (const auto& [i, c] : x.t) {
            MIdx j = midx_sub(i, s.a);
            if (!win.contains(j)) throw DomainError("window too small to split off the leading monomial");
            u.t.emplace(j, k.mul(ti, c));
        }
        s.unit = std::move(u);
        return s;
    }

    /// d/dt_j, j is 1-based. Indices that leave the window are dropped and
    /// clear the flag.
    Elem deriv(const Elem& a, int j) const {
        if (j < 1 || j > n) throw DomainError("derivative variable out of range");
        Elem r;
        r.exact = a.exact;
        for (const auto& [i, c] : a.t) {
            Coeff w = k.mul(k.from_int(i.e[j - 1]), c);
            if (k.is_zero(w)) continue;
            MIdx d = i;
            d.e[j - 1] -= 1;
            if (!win.contains(d)) {
                r.exact = false;
                continue;
            }
            accumulate_in(r, d, w);
        }
        return r;
    }

    /// Coefficient at (-1, ..., -1); the window must contain that index.
    Coeff residue(const Elem& a) const {
        MIdx i = residue_index();
        if (!win.contains(i)) throw DomainError("residue index outside window");
        return coeff_at(a, i);
    }

    MIdx residue_index() const {
        MIdx i;
        for (int c = 0; c < n; ++c) i.e[c] = -1;
        return i;
    }

    /// True inverse coefficients restricted to the window. Preconditions:
    /// x != 0 and both v(x), -v(x) inside the window. The result is exact as a
    /// series only when the true inverse is a single monomial.
    Elem inv(const Elem& x) const {
        if (x.t.empty()) throw DomainError("inverting the zero series");
        Split s = split(x);
        if (!win.contains(s.a) || !win.contains(midx_neg(s.a)))
            throw DomainError("window has no room for the inverse's leading monomial");
        std::map<MIdx, Coeff, SigLess> mhat;
        for (const auto& [i, c] : s.unit.t)
            if (!(i == MIdx{})) mhat.emplace(i, c);

        Elem r;
        Coeff ti = k.inv(s.theta);
        if (mhat.empty()) {
            r.t.emplace(midx_neg(s.a), ti);
            r.exact = x.exact;
            return r;
        }
        std::vector<MIdx> needed;
        for_each_window_index([&](const MIdx& i) { needed.push_back(midx_add(i, s.a)); });
        auto z = inverse_coeffs_at(mhat, needed);
        for (const auto& [i, c] : z) {
            MIdx j = midx_sub(i, s.a);
            if (!win.contains(j)) continue;
            Coeff w = k.mul(ti, c);
            if (!k.is_zero(w)) r.t.emplace(j, w);
        }
        r.exact = false;  // true inverse of a non-monomial has infinite support
        return r;
    }

    /// Exact coefficients of (1 + mhat)^{-1} at `needed`; see
    /// inverse_coeffs_at() below.
    std::map<MIdx, Coeff, SigLess> inverse_coeffs_at(const std::map<MIdx, Coeff, SigLess>& mhat,
                                                     const std::vector<MIdx>& needed) const {
        return hlf::inverse_coeffs_at(k, mhat, needed);
    }

    /// Exact coefficient of a*b at `at` (valid when a and b carry true
    /// coefficients at every index pairing into `at`).
    Coeff product_coeff_at(const Elem& a, const Elem& b, const MIdx& at) const {
        Coeff acc = k.zero();
        for (const auto& [i, c] : a.t) {
            auto it = b.t.find(midx_sub(at, i));
            if (it != b.t.end()) acc = k.add(acc, k.mul(c, it->second));
        }
        return acc;
    }

    template <class Fn>
    void for_each_window_index(Fn&& fn) const {
        MIdx i;
        walk(0, i, fn);
    }

    /// Exact p-th power in characteristic p: (sum c t^i)^p = sum c^p t^{pi}.
    /// Indices leaving the window are dropped with the flag cleared, which is
    /// the consistent truncation of the exact Frobenius (repeated window
    /// multiplication would instead clip binomial cancellations).
    Elem frobenius_p(const Elem& a) const
        requires requires(const R& r, const Coeff& c) { r.frobenius_p(c); }
    {
        Elem r;
        r.exact = a.exact;
        for (const auto& [i, c] : a.t) {
            MIdx j = midx_scale(i, static_cast<int>(k.p));
            if (!win.contains(j)) {
                r.exact = false;
                continue;
            }
            r.t.emplace(j, k.frobenius_p(c));
        }
        return r;
    }

    // --- optional p-divisibility surface (present when R provides it) -------

    bool divisible_p(const Elem& a, int m) const
        requires requires(const R& r, const Coeff& c) { r.divisible_p(c, 1); }
    {
        for (const auto& [i, c] : a.t) {
            (void)i;
            if (!k.divisible_p(c, m)) return false;
        }
        return true;
    }

    Elem divexact_p(const Elem& a, int m) const
        requires requires(const R& r, const Coeff& c) { r.divexact_p(c, 1); }
    {
        Elem r;
        r.exact = a.exact;
        for (const auto& [i, c] : a.t) {
            Coeff w = k.divexact_p(c, m);
            if (!k.is_zero(w)) r.t.emplace(i, w);
        }
        return r;
    }

private:
    void accumulate_in(Elem& r, const MIdx& i, const Coeff& c) const {
        auto [it, inserted] = r.t.emplace(i, c);
        if (!inserted) {
            it->second = k.add(it->second, c);
            if (k.is_zero(it->second)) r.t.erase(it);
        }
    }

    template <class Fn>
    void walk(int c, MIdx& i, Fn& fn) const {
        if (c == n) {
            fn(const_cast<const MIdx&>(i));
            return;
        }
        for (int v = win.lo[c]; v <= win.hi[c]; ++v) {
            i.e[c] = v;
            walk(c + 1, i, fn);
        }
        i.e[c] = 0;
    }
};

using FqSeries = Series<FqField>;
using FqSeriesRing = SeriesRing<FqField>;

// --- exact (unwindowed) Laurent polynomial layer ---------------------------
//
// Raw coefficient maps with no truncation at all; supports may leave any
// window. The peel and the pairing use these internally so residues and
// greedy leading-term extraction see true coefficients.

template <class R>
using CoeffMap = std::map<MIdx, typename R::Elem, SigLess>;

template <class R>
void poly_accumulate(const R& k, CoeffMap<R>& dst, const MIdx& i, const typename R::Elem& c) {
    if (k.is_zero(c)) return;
    auto [it, ins] = dst.emplace(i, c);
    if (!ins) {
        it->second = k.add(it->second, c);
        if (k.is_zero(it->second)) dst.erase(it);
    }
}

template <class R>
CoeffMap<R> poly_mul(const R& k, const CoeffMap<R>& a, const CoeffMap<R>& b) {
    CoeffMap<R> r;
    for (const auto& [ia, ca] : a)
        for (const auto& [ib, cb] : b) poly_accumulate(k, r, midx_add(ia, ib), k.mul(ca, cb));
    return r;
}

template <class R>
CoeffMap<R> poly_one(const R& k) {
    CoeffMap<R> r;
    r.emplace(MIdx{}, k.one());
    return r;
}

template <class R>
CoeffMap<R> poly_pow(const R& k, const CoeffMap<R>& a, u64 e) {
    CoeffMap<R> r = poly_one(k), base = a;
    while (e) {
        if (e & 1) r = poly_mul(k, r, base);
        base = poly_mul(k, base, base);
        e >>= 1;
    }
    return r;
}

template <class R>
CoeffMap<R> poly_deriv(const R& k, const CoeffMap<R>& a, int j) {
    CoeffMap<R> r;
    for (const auto& [i, c] : a) {
        auto w = k.mul(k.from_int(i.e[j - 1]), c);
        if (k.is_zero(w)) continue;
        MIdx d = i;
        d.e[j - 1] -= 1;
        poly_accumulate(k, r, d, w);
    }
    return r;
}

template <class R>
CoeffMap<R> poly_scale(const R& k, const typename R::Elem& s, const CoeffMap<R>& a) {
    CoeffMap<R> r;
    for (const auto& [i, c] : a) poly_accumulate(k, r, i, k.mul(s, c));
    return r;
}

/// Coefficientwise transform between series rings (lift, reduction,
/// embedding). `cmap` maps a source coefficient to a target coefficient; an
/// optional index map handles parameter substitutions like t_i -> s^l.
template <class R1, class R2, class CMap>
Series<R2> map_series(const SeriesRing<R1>& src, const SeriesRing<R2>& dst, const Series<R1>& a, CMap&& cmap) {
    (void)src;
    Series<R2> r;
    r.exact = a.exact;
    for (const auto& [i, c] : a.t) {
        auto w = cmap(c);
        if (dst.k.is_zero(w)) continue;
        if (!dst.win.contains(i)) throw DomainError("series does not fit the target window");
        r.t.emplace(i, w);
    }
    return r;
}

template <class R1, class R2, class CMap, class IMap>
Series<R2> map_series_idx(const SeriesRing<R1>& src, const SeriesRing<R2>& dst, const Series<R1>& a, CMap&& cmap,
                          IMap&& imap) {
    (void)src;
    Series<R2> r;
    r.exact = a.exact;
    for (const auto& [i, c] : a.t) {
        auto w = cmap(c);
        if (dst.k.is_zero(w)) continue;
        MIdx j = imap(i);
        if (!dst.win.contains(j)) throw DomainError("series does not fit the target window");
        auto [it, inserted] = r.t.emplace(j, w);
        if (!inserted) {
            it->second = dst.k.add(it->second, w);
            if (dst.k.is_zero(it->second)) r.t.erase(it);
        }
    }
    return r;
}

/// Constant term of `a` in the outermost variable t_n, as a series in one
/// fewer variable. `a` must have t_n-valuation 0; the result is its image in
/// the residue field of the outer valuation.
template <class R>
Series<R> reduce_outer(const SeriesRing<R>& cur, const SeriesRing<R>& sub, const Series<R>& a) {
    Series<R> r;
    r.exact = a.exact;
    for (const auto& [i, c] : a.t) {
        if (i.e[cur.n - 1] != 0) continue;
        if (!sub.win.contains(i)) throw DomainError("reduction does not fit the residue window");
        r.t.emplace(i, c);
    }
    return r;
}

}  // namespace hlf
