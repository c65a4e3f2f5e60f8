#include "hlf/pairing.hpp"

#include <algorithm>
#include <functional>

namespace hlf {

namespace {

// Leibniz determinant of the Jacobian-style matrix with rows d(x_k)/dt_col,
// columns ordered t_n, ..., t_1.
template <class R>
CoeffMap<R> dlog_determinant_numerator(const R& k, int n, const std::vector<CoeffMap<R>>& lifted) {
    std::vector<std::vector<CoeffMap<R>>> d(lifted.size());
    for (size_t row = 0; row < lifted.size(); ++row) {
        d[row].resize(static_cast<size_t>(n));
        for (int col = 0; col < n; ++col) d[row][col] = poly_deriv(k, lifted[row], n - col);
    }
    CoeffMap<R> det;
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        CoeffMap<R> prod = poly_one(k);
        for (int row = 0; row < n && !prod.empty(); ++row) prod = poly_mul(k, prod, d[row][perm[row]]);
        if (inv % 2) prod = poly_scale(k, k.from_int(-1), prod);
        for (const auto& [i, c] : prod) poly_accumulate(k, det, i, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

struct TermSplit {
    MIdx a_total;          // sum of entry valuations
    bool zero = false;     // some entry was the unit 1 (determinant vanishes)
};

// Splits every lifted entry x = t^v * theta * (1 + mhat) and accumulates the
// combined theta-inverse and unit part U - 1 = prod(1 + mhat_k) - 1.
template <class R>
TermSplit split_term(const R& k, int n, const std::vector<CoeffMap<R>>& lifted,
                     typename R::Elem& theta_inv, CoeffMap<R>& U_m1) {
    TermSplit out;
    theta_inv = k.one();
    CoeffMap<R> U = poly_one(k);
    for (const auto& x : lifted) {
        if (x.empty()) throw DomainError("pairing entry is zero");
        MIdx v = x.begin()->first;
        typename R::Elem lead = x.begin()->second;
        out.a_total = midx_add(out.a_total, v);
        theta_inv = k.mul(theta_inv, k.inv(lead));
        typename R::Elem li = k.inv(lead);
        CoeffMap<R> unit;
        for (const auto& [i, c] : x) {
            MIdx s = midx_sub(i, v);
            if (s == MIdx{}) continue;
            unit.emplace(s, k.mul(li, c));
        }
        if (!unit.empty()) {
            CoeffMap<R> u1 = unit;
            poly_accumulate(k, u1, MIdx{}, k.one());
            U = poly_mul(k, U, u1);
        }
    }
    (void)n;
    auto it = U.find(MIdx{});
    if (it == U.end() || !(it->second == k.one())) throw InternalError("combined unit part lost normalization");
    U_m1 = U;
    U_m1.erase(MIdx{});
    return out;
}

// Exact coefficient of Q * (1 + mhat)^{-1} at `at`.
template <class R>
typename R::Elem quotient_coeff_at(const R& k, const CoeffMap<R>& Q, const CoeffMap<R>& mhat, const MIdx& at) {
    std::vector<MIdx> needed;
    needed.reserve(Q.size());
    for (const auto& [s, c] : Q) {
        (void)c;
        needed.push_back(midx_sub(at, s));
    }
    auto z = inverse_coeffs_at(k, mhat, needed);
    typename R::Elem acc = k.zero();
    for (const auto& [s, c] : Q) {
        auto it = z.find(midx_sub(at, s));
        if (it != z.end()) acc = k.add(acc, k.mul(c, it->second));
    }
    return acc;
}

}  // namespace

PairingContext::PairingContext(const FqSeriesRing& ring, int level) : PairingContext(ring, level, ring.win) {}

PairingContext::PairingContext(const FqSeriesRing& ring, int level, Window family_window)
    : SR(ring),
      r(level),
      pr(ipow_checked(ring.k.p, static_cast<unsigned>(level))),
      zq(ring.k, 2 * level),
      wp(ring.k.p, level, 2 * level + 2),
      Wfq(ring.k, wp),
      iso(wp),
      family(family_window) {
    if (r < 1) throw DomainError("pairing level must be >= 1");
    family.n = SR.n;
    family.validate();
    for (int c = 0; c < SR.n; ++c)
        if (family.lo[c] < SR.win.lo[c] || family.hi[c] > SR.win.hi[c])
            throw DomainError("probe family window exceeds the series window");
    // Constant probes [eta] over the F_p-basis.
    for (int b = 0; b < SR.k.f; ++b) probes.push_back(Probe{true, 0, b, MIdx{}});
    // Monomial probes V^j [eta t^{-i}]: i significance-positive, not
    // p-divisible in every coordinate, with -i inside the family window.
    std::vector<MIdx> fam;
    MIdx cur;
    std::function<void(int)> walk = [&](int c) {
        if (c == SR.n) {
            if (!sig_positive(cur)) return;
            if (!family.contains(midx_neg(cur))) return;
            bool nonpdiv = false;
            for (int cc = 0; cc < SR.n; ++cc)
                if (cur.e[cc] % static_cast<int>(SR.k.p) != 0) nonpdiv = true;
            if (nonpdiv) fam.push_back(cur);
            return;
        }
        for (int v = family.lo[c]; v <= family.hi[c]; ++v) {
            cur.e[c] = v;
            walk(c + 1);
        }
        cur.e[c] = 0;
    };
    walk(0);
    std::sort(fam.begin(), fam.end(), [](const MIdx& a, const MIdx& b) { return sig_less(a, b); });
    for (const MIdx& i : fam)
        for (int b = 0; b < SR.k.f; ++b)
            for (int j = 0; j < r; ++j) probes.push_back(Probe{false, j, b, i});
}

std::vector<FqSeries> PairingContext::probe_witt(const Probe& pb) const {
    std::vector<FqSeries> w(static_cast<size_t>(r), SR.zero());
    FqElem eta = SR.k.basis_elem(pb.eta_idx);
    w[static_cast<size_t>(pb.j)] = pb.is_const ? SR.constant(eta) : SR.monomial(midx_neg(pb.i), eta);
    return w;
}

u64 PairingContext::pair_probe(const SymbolSum& a, const Probe& pb) const { return pair(a, probe_witt(pb)); }

u64 PairingContext::pair(const SymbolSum& a, const std::vector<FqSeries>& w) const {
    if (a.deg != SR.n) throw DomainError("pairing needs a degree-n symbol");
    if (static_cast<int>(w.size()) != r) throw DomainError("Witt vector length does not match the level");

    // Ghost components of the coefficientwise Teichmueller lift of w.
    std::vector<CoeffMap<ZqRing>> lifted_w(w.size());
    for (size_t m = 0; m < w.size(); ++m)
        for (const auto& [i, c] : w[m].t) lifted_w[m].emplace(i, zq.teichmuller(c));
    std::vector<CoeffMap<ZqRing>> ghosts(static_cast<size_t>(r));
    for (int m = 0; m < r; ++m) {
        CoeffMap<ZqRing> g;
        u64 pi = 1;
        for (int i = 0; i <= m; ++i) {
            CoeffMap<ZqRing> t = poly_pow(zq, lifted_w[static_cast<size_t>(i)],
                                          ipow_checked(zq.k->p, static_cast<unsigned>(m - i)));
            t = poly_scale(zq, zq.from_int(static_cast<i64>(pi)), t);
            for (const auto& [ix, c] : t) poly_accumulate(zq, g, ix, c);
            pi *= zq.k->p;
        }
        ghosts[static_cast<size_t>(m)] = std::move(g);
    }

    u64 total = 0;
    for (const auto& term : a.terms) {
        u64 v = pair_term(term, ghosts);
        total = addmod(total, mulmod(imod(term.coef, pr), v, pr), pr);
    }
    return total;
}

u64 PairingContext::pair_term(const SymTerm& term, const std::vector<CoeffMap<ZqRing>>& ghosts) const {
    const FqField& k = SR.k;
    // Coefficientwise Teichmueller lift of the entries.
    std::vector<CoeffMap<ZqRing>> lifted(term.ents.size());
    for (size_t s = 0; s < term.ents.size(); ++s) {
        if (term.ents[s].t.empty()) throw DomainError("pairing entry is zero");
        for (const auto& [i, c] : term.ents[s].t) lifted[s].emplace(i, zq.teichmuller(c));
    }

    CoeffMap<ZqRing> J = dlog_determinant_numerator(zq, SR.n, lifted);
    if (J.empty()) return 0;

    ZqElem theta_inv;
    CoeffMap<ZqRing> U_m1;
    TermSplit split = split_term(zq, SR.n, lifted, theta_inv, U_m1);

    MIdx target = SR.residue_index();

    std::vector<ZqElem> rho(static_cast<size_t>(r));
    for (int m = 0; m < r; ++m) {
        CoeffMap<ZqRing> Q = poly_mul(zq, ghosts[static_cast<size_t>(m)], J);
        // residue of gh_m * D = theta^{-1} * coeff of t^{target + A} in Q * U^{-1}
        ZqElem c = quotient_coeff_at(zq, Q, U_m1, midx_add(target, split.a_total));
        rho[static_cast<size_t>(m)] = zq.mul(theta_inv, c);
    }

    // Unghost over Z_q; divisions must be exact (Teichmueller guard digits).
    std::vector<ZqElem> x(static_cast<size_t>(r));
    for (int m = 0; m < r; ++m) {
        ZqElem acc = rho[static_cast<size_t>(m)];
        u64 pi = 1;
        for (int i = 0; i < m; ++i) {
            ZqElem t = zq.pow(x[static_cast<size_t>(i)], ipow_checked(k.p, static_cast<unsigned>(m - i)));
            acc = zq.sub(acc, zq.mul(zq.from_int(static_cast<i64>(pi)), t));
            pi *= k.p;
        }
        x[static_cast<size_t>(m)] = m == 0 ? acc : zq.divexact_p(acc, m);
    }

    // Reduce mod p to W_r(F_q), trace to W_r(F_p), read off Z/p^r.
    std::vector<FqElem> wred(static_cast<size_t>(r));
    for (int m = 0; m < r; ++m) wred[static_cast<size_t>(m)] = zq.reduce_mod_p(x[static_cast<size_t>(m)]);
    std::vector<u64> tr = witt_trace_fp(Wfq, wred);
    return iso.to_zmod(tr);
}

PadicFrac PairingContext::pair_limit(const SymbolSum& a, const std::vector<FqSeries>& w) const {
    u64 v = pair(a, w);
    PadicFrac f{v, r};
    while (f.num != 0 && f.num % SR.k.p == 0 && f.level > 0) {
        f.num /= SR.k.p;
        f.level -= 1;
    }
    if (f.num == 0) f.level = 0;
    return f;
}

u64 asw_pair_r1_direct(const FqSeriesRing& SR, const SymbolSum& alpha, const FqSeries& a) {
    const FqField& k = SR.k;
    if (alpha.deg != SR.n) throw DomainError("pairing needs a degree-n symbol");
    CoeffMap<FqField> acoef;
    for (const auto& [i, c] : a.t) acoef.emplace(i, c);

    u64 total = 0;
    for (const auto& term : alpha.terms) {
        std::vector<CoeffMap<FqField>> ents(term.ents.size());
        for (size_t s = 0; s < term.ents.size(); ++s) {
            if (term.ents[s].t.empty()) throw DomainError("pairing entry is zero");
            for (const auto& [i, c] : term.ents[s].t) ents[s].emplace(i, c);
        }
        CoeffMap<FqField> J = dlog_determinant_numerator(k, SR.n, ents);
        if (J.empty()) continue;
        FqElem theta_inv;
        CoeffMap<FqField> U_m1;
        TermSplit split = split_term(k, SR.n, ents, theta_inv, U_m1);
        CoeffMap<FqField> Q = poly_mul(k, acoef, J);
        FqElem c = quotient_coeff_at(k, Q, U_m1, midx_add(SR.residue_index(), split.a_total));
        u64 v = k.trace(k.mul(theta_inv, c));
        total = addmod(total, mulmod(imod(term.coef, k.p), v, k.p), k.p);
    }
    return total;
}

}  // namespace hlf
