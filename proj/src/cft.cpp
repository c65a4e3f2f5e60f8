#include "hlf/cft.hpp"

#include <algorithm>

#include "hlf/rng.hpp"

namespace hlf {

// --- unramified extensions --------------------------------------------------

UnramifiedExt::UnramifiedExt(const FqSeriesRing& base, int degree)
    : ell(degree),
      Lk(base.k.p, base.k.f * degree),
      embed(base.k, Lk),
      LS(Lk, base.n, base.win),
      FS(base) {
    if (!is_prime_small(static_cast<u64>(degree))) throw DomainError("extension degree must be prime");
}

FqSeries UnramifiedExt::lift_series(const FqSeries& x) const {
    return map_series(FS, LS, x, [&](const FqElem& c) { return embed.embed(c); });
}

FqSeries UnramifiedExt::descend_series(const FqSeries& x) const {
    return map_series(LS, FS, x, [&](const FqElem& c) { return embed.retract(c); });
}

bool UnramifiedExt::is_base_rational(const FqSeries& x) const {
    for (const auto& [i, c] : x.t) {
        (void)i;
        if (!embed.in_image(c)) return false;
    }
    return true;
}

FqSeries UnramifiedExt::galois(const FqSeries& x, int k) const {
    // Generator of Gal(L/F): coefficientwise q_F-power Frobenius.
    u64 e = 1;
    for (int t = 0; t < k; ++t) e = e * FS.k.q % (Lk.q - 1);
    FqSeries r;
    r.exact = x.exact;
    for (const auto& [i, c] : x.t) r.t.emplace(i, Lk.pow(c, static_cast<i64>(e)));
    return r;
}

FqSeries UnramifiedExt::norm_series(const FqSeries& x) const {
    FqSeries acc = x;
    FqSeries cur = x;
    for (int k = 1; k < ell; ++k) {
        cur = galois(cur, 1);
        acc = LS.mul(acc, cur);
    }
    return descend_series(acc);
}

// --- tame extensions ---------------------------------------------------------

namespace {

Window scaled_window(const Window& w, int var, int ell) {
    Window r = w;
    r.lo[var - 1] *= ell;
    r.hi[var - 1] *= ell;
    return r;
}

}  // namespace

TameExt::TameExt(const FqSeriesRing& base, int degree, int var_index)
    : ell(degree), var(var_index), FS(base), LS(base.k, base.n, scaled_window(base.win, var_index, degree)) {
    if (!is_prime_small(static_cast<u64>(degree))) throw DomainError("extension degree must be prime");
    if ((base.k.q - 1) % static_cast<u64>(degree) != 0)
        throw DomainError("tame degree must divide q-1 (roots of unity must exist)");
    if (base.k.p % static_cast<u64>(degree) == 0) throw DomainError("tame degree must be prime to p");
    if (var < 1 || var > base.n) throw DomainError("tame variable index out of range");
    zeta = base.k.gen_pow((base.k.q - 1) / static_cast<u64>(degree));
}

FqSeries TameExt::lift_series(const FqSeries& x) const {
    return map_series_idx(FS, LS, x, [](const FqElem& c) { return c; }, [&](const MIdx& i) {
        MIdx j = i;
        j.e[var - 1] *= ell;
        return j;
    });
}

FqSeries TameExt::descend_series(const FqSeries& x) const {
    return map_series_idx(LS, FS, x, [](const FqElem& c) { return c; }, [&](const MIdx& i) {
        if (i.e[var - 1] % ell != 0) throw DomainError("element does not descend to the base field");
        MIdx j = i;
        j.e[var - 1] /= ell;
        return j;
    });
}

bool TameExt::is_base_rational(const FqSeries& x) const {
    for (const auto& [i, c] : x.t) {
        (void)c;
        if (i.e[var - 1] % ell != 0) return false;
    }
    return true;
}

FqSeries TameExt::galois(const FqSeries& x, int k) const {
    FqSeries r;
    r.exact = x.exact;
    for (const auto& [i, c] : x.t) {
        i64 e = static_cast<i64>(k) * i.e[var - 1];
        FqElem factor = FS.k.pow(zeta, e);
        FqElem w = FS.k.mul(factor, c);
        if (!FS.k.is_zero(w)) r.t.emplace(i, w);
    }
    return r;
}

FqSeries TameExt::norm_series(const FqSeries& x) const {
    FqSeries acc = x;
    for (int k = 1; k < ell; ++k) acc = LS.mul(acc, galois(x, k));
    return descend_series(acc);
}

// --- Artin-Schreier extensions (dimension 1) ---------------------------------

ArtinSchreierExt::ArtinSchreierExt(const FqSeriesRing& base, FqSeries defining) : FS(base), a(std::move(defining)) {
    if (base.n != 1) throw DomainError("Artin-Schreier extensions are supported in dimension 1 only");
    if (a.t.empty()) throw DomainError("defining element must be nonzero");
    for (const auto& [i, c] : a.t) {
        (void)c;
        if (sig_positive(i)) throw DomainError("defining element must have non-positive support");
        if (sig_less(i, MIdx{}) && i.e[0] % static_cast<int>(base.k.p) == 0)
            throw DomainError("defining element must have reduced (non-p-divisible) negative support");
    }
}

ArtinSchreierExt::LElem ArtinSchreierExt::lift(const FqSeries& x) const {
    LElem r(static_cast<size_t>(FS.k.p), FS.zero());
    r[0] = x;
    return r;
}

ArtinSchreierExt::LElem ArtinSchreierExt::mul(const LElem& x, const LElem& y) const {
    const u64 p = FS.k.p;
    std::vector<FqSeries> conv(2 * p - 1, FS.zero());
    for (u64 i = 0; i < p; ++i)
        for (u64 j = 0; j < p; ++j) conv[i + j] = FS.add(conv[i + j], FS.mul(x[i], y[j]));
    // reduce with y^p = y + a, repeatedly from the top
    for (u64 d = 2 * p - 2; d >= p; --d) {
        FqSeries c = conv[d];
        if (c.t.empty()) continue;
        conv[d] = FS.zero();
        conv[d - p + 1] = FS.add(conv[d - p + 1], c);
        conv[d - p] = FS.add(conv[d - p], FS.mul(c, a));
    }
    LElem r(static_cast<size_t>(p));
    for (u64 i = 0; i < p; ++i) r[i] = conv[i];
    return r;
}

ArtinSchreierExt::LElem ArtinSchreierExt::galois(const LElem& x, int k) const {
    // y -> y + k; substitute and re-expand binomially.
    const u64 p = FS.k.p;
    LElem r(static_cast<size_t>(p), FS.zero());
    for (u64 d = 0; d < p; ++d) {
        if (x[d].t.empty()) continue;
        // (y + k)^d = sum binom(d, j) k^{d-j} y^j
        u64 binom = 1;
        for (u64 j = 0; j <= d; ++j) {
            // binom(d, j) computed incrementally: C(d,0)=1; C(d,j) = C(d,j-1)*(d-j+1)/j
            if (j > 0) binom = binom * (d - j + 1) / j;
            u64 kpow = imod(static_cast<i64>(powmod(imod(k, p), d - j, p)), p);
            u64 coeff = mulmod(binom % p, kpow, p);
            if (!coeff) continue;
            r[j] = FS.add(r[j], FS.scale_int(static_cast<i64>(coeff), x[d]));
        }
    }
    return r;
}

FqSeries ArtinSchreierExt::norm(const LElem& x) const {
    LElem acc = x;
    for (u64 k = 1; k < FS.k.p; ++k) acc = mul(acc, galois(x, static_cast<int>(k)));
    for (u64 d = 1; d < FS.k.p; ++d)
        if (!acc[d].t.empty()) throw InternalError("norm did not descend to the base field");
    return acc[0];
}

// --- symbol norms -------------------------------------------------------------

namespace {

// Applies the slot-wise norm to a term with at most one genuinely-L slot.
// `is_base` / `norm1` / `descend` abstract over the extension kind.
template <class IsBase, class Norm1, class Descend>
SymbolSum norm_single_slot_term(const FqSeriesRing& FSr, const SymTerm& t, int ell, IsBase&& is_base, Norm1&& norm1,
                                Descend&& descend) {
    int lslot = -1;
    for (size_t s = 0; s < t.ents.size(); ++s) {
        if (!is_base(t.ents[s])) {
            if (lslot >= 0) throw InternalError("norm reached a term with two genuinely-L slots");
            lslot = static_cast<int>(s);
        }
    }
    std::vector<FqSeries> ents;
    for (size_t s = 0; s < t.ents.size(); ++s)
        ents.push_back(static_cast<int>(s) == lslot ? norm1(t.ents[s]) : descend(t.ents[s]));
    SymbolSum out = sym_make(FSr, std::move(ents));
    return sym_scale(t.coef * (lslot < 0 ? ell : 1), out);
}

template <class Ext, class Rewrite>
SymbolSum norm_ksym_impl(const KClassContext& KL, const Ext& E, const SymbolSum& a, Rewrite&& rewrite_term) {
    SymbolSum out;
    out.deg = E.FS.n;
    for (const auto& term : a.terms) {
        int lcount = 0;
        for (const auto& e : term.ents)
            if (!E.is_base_rational(e)) ++lcount;
        if (lcount <= 1) {
            out = sym_add(out, norm_single_slot_term(
                                   E.FS, term, E.ell, [&](const FqSeries& x) { return E.is_base_rational(x); },
                                   [&](const FqSeries& x) { return E.norm_series(x); },
                                   [&](const FqSeries& x) { return E.descend_series(x); }));
            continue;
        }
        // Rewrite through the canonical decomposition over L; every canonical
        // generator has a single non-parameter slot.
        SymbolSum single;
        single.deg = a.deg;
        single.terms.push_back(term);
        KDecomp d = KL.decompose(single);
        SymbolSum canon = KL.rebuild(d);
        for (const auto& ct : canon.terms) out = sym_add(out, rewrite_term(ct));
    }
    return sym_normalize(E.FS, out);
}

}  // namespace

SymbolSum norm_ksym(const KClassContext& KL, const UnramifiedExt& E, const SymbolSum& a) {
    // Canonical generators over an unramified extension are already
    // single-slot: parameters are shared with the base field.
    return norm_ksym_impl(KL, E, a, [&](const SymTerm& ct) {
        return norm_single_slot_term(
            E.FS, ct, E.ell, [&](const FqSeries& x) { return E.is_base_rational(x); },
            [&](const FqSeries& x) { return E.norm_series(x); },
            [&](const FqSeries& x) { return E.descend_series(x); });
    });
}

SymbolSum norm_ksym(const KClassContext& KL, const TameExt& E, const SymbolSum& a) {
    // A canonical VK generator can carry the new parameter s alongside a
    // genuinely-L unit slot. Multiplication by ell is invertible on the
    // p-primary part, so {u, ..., s, ...} = ell^{-1} {u, ..., s^ell, ...}
    // as a level-r observation; the right side has a single L slot.
    const u64 pr = KL.pc.pr;
    u64 ell_inv = 0;
    for (u64 c = 1; c < pr; ++c)
        if (c * static_cast<u64>(E.ell) % pr == 1) { ell_inv = c; break; }
    if (!ell_inv) throw InternalError("ell is not invertible mod p^r");

    return norm_ksym_impl(KL, E, a, [&](const SymTerm& ct) {
        int lcount = 0;
        for (const auto& e : ct.ents)
            if (!E.is_base_rational(e)) ++lcount;
        SymTerm work = ct;
        if (lcount >= 2) {
            // replace parameter slots s by s^ell = lifted t_var
            MIdx sidx{};
            sidx.e[E.var - 1] = 1;
            FqSeries s_series = E.LS.monomial(sidx, E.LS.k.one());
            bool replaced = false;
            for (auto& e : work.ents) {
                if (e.t == s_series.t) {
                    MIdx tidx{};
                    tidx.e[E.var - 1] = E.ell;
                    e = E.LS.monomial(tidx, E.LS.k.one());
                    work.coef = static_cast<i64>(imod(work.coef, KL.pc.pr) * ell_inv % KL.pc.pr);
                    replaced = true;
                }
            }
            if (!replaced) throw DomainError("term not reducible to single-L-slot form");
        }
        return norm_single_slot_term(
            E.FS, work, E.ell, [&](const FqSeries& x) { return E.is_base_rational(x); },
            [&](const FqSeries& x) { return E.norm_series(x); },
            [&](const FqSeries& x) { return E.descend_series(x); });
    });
}

SymbolSum lift_ksym(const UnramifiedExt& E, const SymbolSum& a) {
    SymbolSum r;
    r.deg = a.deg;
    for (const auto& t : a.terms) {
        SymTerm nt;
        nt.coef = t.coef;
        for (const auto& e : t.ents) nt.ents.push_back(E.lift_series(e));
        r.terms.push_back(std::move(nt));
    }
    return r;
}

SymbolSum lift_ksym(const TameExt& E, const SymbolSum& a) {
    SymbolSum r;
    r.deg = a.deg;
    for (const auto& t : a.terms) {
        SymTerm nt;
        nt.coef = t.coef;
        for (const auto& e : t.ents) nt.ents.push_back(E.lift_series(e));
        r.terms.push_back(std::move(nt));
    }
    return r;
}

SymbolSum norm_unram_tower(const FqSeriesRing& base, const std::vector<int>& degrees, const SymbolSum& top,
                           int level, Window family) {
    std::vector<std::unique_ptr<UnramifiedExt>> steps;
    const FqSeriesRing* cur = &base;
    for (int d : degrees) {
        steps.push_back(std::make_unique<UnramifiedExt>(*cur, d));
        cur = &steps.back()->LS;
    }
    SymbolSum s = top;
    for (size_t i = steps.size(); i-- > 0;) {
        KClassContext K(steps[i]->LS, level, family);
        s = norm_ksym(K, *steps[i], s);
    }
    return s;
}

SymbolSum lift_unram_tower(const FqSeriesRing& base, const std::vector<int>& degrees, const SymbolSum& bottom) {
    std::vector<std::unique_ptr<UnramifiedExt>> steps;
    const FqSeriesRing* cur = &base;
    SymbolSum s = bottom;
    for (int d : degrees) {
        steps.push_back(std::make_unique<UnramifiedExt>(*cur, d));
        s = lift_ksym(*steps.back(), s);
        cur = &steps.back()->LS;
    }
    return s;
}

// --- dual sequence evidence ----------------------------------------------------

namespace {

// Class coordinates at r = 1: coefficients at negative non-p-divisible window
// indices plus the trace of the constant (F_q/℘F_q = F_p via the trace).
struct ClassCoords {
    const FqSeriesRing& SR;
    const WittOps<SeriesRing<FqField>>& W;
    const WittConstClasses& CC;
    std::vector<MIdx> neg_family;

    ClassCoords(const FqSeriesRing& ring, const WittOps<SeriesRing<FqField>>& wops, const WittConstClasses& cc)
        : SR(ring), W(wops), CC(cc) {
        SR.for_each_window_index([&](const MIdx& i) {
            if (!sig_less(i, MIdx{})) return;
            bool nonpdiv = false;
            for (int c = 0; c < SR.n; ++c)
                if (i.e[c] % static_cast<int>(SR.k.p) != 0) nonpdiv = true;
            if (nonpdiv) neg_family.push_back(i);
        });
        std::sort(neg_family.begin(), neg_family.end(), [](const MIdx& a, const MIdx& b) { return sig_less(a, b); });
    }

    size_t dim() const { return neg_family.size() * static_cast<size_t>(SR.k.f) + 1; }

    std::vector<u64> coords(const FqSeries& x) const {
        ASWClass red = asw_reduce(SR, W, CC, {x});
        std::vector<u64> out;
        for (const MIdx& i : neg_family) {
            FqElem c = SR.coeff_at(red.comps[0], i);
            for (int b = 0; b < SR.k.f; ++b) out.push_back(c.c[b]);
        }
        out.push_back(SR.k.trace(SR.coeff_at(red.comps[0], MIdx{})));
        return out;
    }

    /// Representative series of the coordinate-basis vector `idx`.
    FqSeries rep(size_t idx) const {
        if (idx < neg_family.size() * static_cast<size_t>(SR.k.f)) {
            size_t fi = idx / static_cast<size_t>(SR.k.f);
            int b = static_cast<int>(idx % static_cast<size_t>(SR.k.f));
            return SR.monomial(neg_family[fi], SR.k.basis_elem(b));
        }
        for (int b = 0; b < SR.k.f; ++b) {
            u64 tr = SR.k.trace(SR.k.basis_elem(b));
            if (tr != 0) {
                u64 inv = powmod(tr, SR.k.p - 2, SR.k.p);
                return SR.constant(SR.k.scale(inv, SR.k.basis_elem(b)));
            }
        }
        throw InternalError("trace form degenerate on the power basis");
    }
};

}  // namespace

DualSequenceReport witt_dual_sequence_check(const UnramifiedExt& E, int samples, u64 seed) {
    const FqSeriesRing& FSr = E.FS;
    const FqSeriesRing& LSr = E.LS;
    const u64 p = FSr.k.p;
    if (static_cast<u64>(E.ell) != p) throw DomainError("dual sequence check needs an unramified degree-p extension");

    WittPolys wp(p, 1, 4);
    WittOps<SeriesRing<FqField>> WF(FSr, wp), WL(LSr, wp);
    WittConstClasses CCF(FSr.k, wp), CCL(LSr.k, wp);
    ClassCoords QF(FSr, WF, CCF), QL(LSr, WL, CCL);

    auto sigma = [&](const FqSeries& x) { return E.galois(x, 1); };
    auto trace = [&](const FqSeries& x) {
        FqSeries acc = x, cur = x;
        for (int k = 1; k < E.ell; ++k) {
            cur = sigma(cur);
            acc = LSr.add(acc, cur);
        }
        return E.descend_series(acc);
    };

    DualSequenceReport rep;
    rep.dim_space = 0;

    // (a) Tr . (1 - sigma) = 0 on random window elements.
    Rng rng(seed);
    rep.tr_after_shift_zero = true;
    for (int t = 0; t < samples; ++t) {
        FqSeries x;
        for (int terms = 0; terms < 4; ++terms) {
            MIdx i = rng.idx_in(LSr.win);
            LSr.accumulate(x, i, LSr.k.element(rng.below(LSr.k.q)));
        }
        FqSeries y = trace(LSr.sub(x, sigma(x)));
        if (!y.t.empty()) rep.tr_after_shift_zero = false;
    }

    // Raw window space of L as an F_p-space: (index, basis) pairs.
    std::vector<std::pair<MIdx, int>> lbasis;
    LSr.for_each_window_index([&](const MIdx& i) {
        for (int b = 0; b < LSr.k.f; ++b) lbasis.emplace_back(i, b);
    });
    rep.dim_space = lbasis.size();

    // (b) columns = F-class coordinates of Tr(basis vector); surjectivity is
    // full row rank.
    ZpkMatrix M(p, 1, QF.dim(), lbasis.size());
    for (size_t c = 0; c < lbasis.size(); ++c) {
        FqSeries x = LSr.monomial(lbasis[c].first, LSr.k.basis_elem(lbasis[c].second));
        auto col = QF.coords(trace(x));
        for (size_t rr = 0; rr < col.size(); ++rr) M.at(rr, c) = col[rr];
    }
    rep.tr_surjective = zpk_rank_mod_p(M) == QF.dim();

    // (c) class-space maps: T^: L-classes -> F-classes; S^ = (1-sigma) on
    // L-classes. dim ker T^ must equal dim im S^.
    ZpkMatrix T(p, 1, QF.dim(), QL.dim()), S(p, 1, QL.dim(), QL.dim());
    for (size_t c = 0; c < QL.dim(); ++c) {
        FqSeries x = QL.rep(c);
        auto tc = QF.coords(trace(x));
        for (size_t rr = 0; rr < tc.size(); ++rr) T.at(rr, c) = tc[rr];
        auto sc = QL.coords(LSr.sub(x, sigma(x)));
        for (size_t rr = 0; rr < sc.size(); ++rr) S.at(rr, c) = sc[rr];
    }
    size_t rankT = zpk_rank_mod_p(T), rankS = zpk_rank_mod_p(S);
    rep.dim_ker = QL.dim() - rankT;
    rep.dim_im = rankS;
    rep.kernel_matches_image = rep.dim_ker == rep.dim_im;
    return rep;
}

// --- reciprocity ---------------------------------------------------------------

i64 psi_ur(const FqSeriesRing& SR, const SymbolSum& a) { return val_map(SR, a); }

std::vector<u64> psi_tame(const FqSeriesRing& SR, const SymbolSum& a) { return tame_components(SR, a); }

u64 psi_p(const KClassContext& K, const SymbolSum& a, const std::vector<FqSeries>& w) {
    ASWClass red = asw_reduce(K.SR, K.wops(), K.consts(), w);
    bool zero = true;
    for (const auto& c : red.comps)
        if (!c.t.empty()) zero = false;
    if (zero) throw DomainError("defining Witt vector is the zero class");
    return K.pc.pair(a, w);
}

ReciprocityReport reciprocity_report(const KClassContext& K, const SymbolSum& a,
                                     const std::vector<std::vector<FqSeries>>& queries) {
    ReciprocityReport rep;
    rep.ur_exponent = psi_ur(K.SR, a);
    rep.tame_chars = psi_tame(K.SR, a);
    for (const auto& w : queries) {
        u64 v = psi_p(K, a, w);
        rep.p_chars.emplace_back(w, v);
        // Overlap with the unramified part: constant queries define
        // unramified p-extensions, where the pairing must read
        // trace * Frobenius-exponent mod p.
        bool constant = true;
        for (const auto& c : w)
            for (const auto& [i, cc] : c.t) {
                (void)cc;
                if (!(i == MIdx{})) constant = false;
            }
        if (constant) {
            u64 lhs = v % K.SR.k.p;
            u64 rhs = mulmod(K.SR.k.trace(K.SR.coeff_at(w[0], MIdx{})), imod(rep.ur_exponent, K.SR.k.p), K.SR.k.p);
            if (lhs != rhs) rep.overlaps_agree = false;
        }
    }
    return rep;
}

}  // namespace hlf
