#include "hlf/kdecomp.hpp"

namespace hlf {

KClassContext::KClassContext(const FqSeriesRing& ring, int level) : KClassContext(ring, level, ring.win) {}

KClassContext::KClassContext(const FqSeriesRing& ring, int level, Window family_window)
    : SR(ring), pc(ring, level, family_window) {
    for (const auto& pb : pc.probes) {
        if (pb.is_const || pb.j != 0) continue;
        gens.push_back(VkGen{pb.eta_idx, pb.i});
    }
}

SymbolSum KClassContext::gen_symbol(const VkGen& g) const {
    FqSeries unit = SR.add(SR.one(), SR.monomial(g.i, SR.k.basis_elem(g.theta_idx)));
    return vk_gen_symbol(SR, unit, g.i);
}

const ZpkMatrix& KClassContext::probe_matrix() const {
    if (!probe_matrix_) {
        ZpkMatrix M(SR.k.p, pc.r, pc.probes.size(), gens.size());
        parallel_for(gens.size(), [&](size_t c) {
            SymbolSum s = gen_symbol(gens[c]);
            for (size_t rr = 0; rr < pc.probes.size(); ++rr) M.at(rr, c) = pc.pair_probe(s, pc.probes[rr]);
        });
        probe_matrix_ = std::move(M);
    }
    return *probe_matrix_;
}

KDecomp KClassContext::decompose(const SymbolSum& a) const {
    if (a.deg != SR.n) throw DomainError("decompose needs a degree-n symbol");
    KDecomp d;
    d.level = pc.r;
    d.vZ = val_map(SR, a);
    d.tame = tame_components(SR, a);

    SymbolSum beta = sym_add(a, sym_scale(-d.vZ, param_symbol(SR)));
    for (int i = 1; i <= SR.n; ++i) {
        u64 c = d.tame[static_cast<size_t>(i - 1)];
        if (c) beta = sym_add(beta, sym_scale(-static_cast<i64>(c), tame_gen_symbol(SR, SR.k.gen(), i)));
    }
    beta = sym_normalize(SR, beta);

    std::vector<u64> b(pc.probes.size());
    parallel_for(pc.probes.size(), [&](size_t rr) { b[rr] = pc.pair_probe(beta, pc.probes[rr]); });
    std::vector<u64> x = zpk_solve(probe_matrix(), b);

    d.vk.level = pc.r;
    for (size_t c = 0; c < gens.size(); ++c)
        if (x[c]) d.vk.a[PeelKey{gens[c].theta_idx, gens[c].i}] = x[c];
    return d;
}

SymbolSum KClassContext::rebuild(const KDecomp& d) const {
    SymbolSum s = sym_scale(d.vZ, param_symbol(SR));
    for (int i = 1; i <= SR.n; ++i) {
        u64 c = i <= static_cast<int>(d.tame.size()) ? d.tame[static_cast<size_t>(i - 1)] : 0;
        if (c % (SR.k.q - 1)) s = sym_add(s, sym_scale(static_cast<i64>(c), tame_gen_symbol(SR, SR.k.gen(), i)));
    }
    for (const auto& [key, expo] : d.vk.a) {
        FqSeries unit = SR.add(SR.one(), SR.monomial(key.i, SR.k.basis_elem(key.theta_idx)));
        s = sym_add(s, sym_scale(static_cast<i64>(expo), vk_gen_symbol(SR, unit, key.i)));
    }
    s.deg = SR.n;
    return sym_normalize(SR, s);
}

bool KClassContext::keq(const SymbolSum& a, const SymbolSum& b) const {
    if (!a.terms.empty() && a.deg != SR.n) throw DomainError("keq needs degree-n symbols");
    if (!b.terms.empty() && b.deg != SR.n) throw DomainError("keq needs degree-n symbols");
    if (val_map(SR, with_degree(a)) != val_map(SR, with_degree(b))) return false;
    if (tame_components(SR, with_degree(a)) != tame_components(SR, with_degree(b))) return false;
    SymbolSum diff = sym_add(with_degree(a), sym_scale(-1, with_degree(b)));
    for (const auto& pb : pc.probes)
        if (pc.pair_probe(diff, pb) != 0) return false;
    return true;
}

ZpkMatrix KClassContext::square_gram() const {
    const FqField& k = SR.k;
    // One constant probe with nonzero trace pairs the valuation generator.
    int eta_star = -1;
    for (int b = 0; b < k.f; ++b)
        if (k.trace(k.basis_elem(b)) != 0) { eta_star = b; break; }
    if (eta_star < 0) throw InternalError("trace form degenerate on the power basis");

    std::vector<Probe> rows;
    rows.push_back(Probe{true, 0, eta_star, MIdx{}});
    for (const auto& pb : pc.probes)
        if (!pb.is_const && pb.j == 0) rows.push_back(pb);

    std::vector<SymbolSum> cols;
    cols.push_back(param_symbol(SR));
    for (const auto& g : gens) cols.push_back(gen_symbol(g));

    ZpkMatrix M(k.p, pc.r, rows.size(), cols.size());
    parallel_for(cols.size(), [&](size_t c) {
        for (size_t rr = 0; rr < rows.size(); ++rr) M.at(rr, c) = pc.pair_probe(cols[c], rows[rr]);
    });
    return M;
}

const WittOps<SeriesRing<FqField>>& KClassContext::wops() const {
    if (!wops_) wops_ = std::make_unique<WittOps<SeriesRing<FqField>>>(SR, pc.wp);
    return *wops_;
}

const WittConstClasses& KClassContext::consts() const {
    if (!consts_) consts_ = std::make_unique<WittConstClasses>(SR.k, pc.wp);
    return *consts_;
}

SymbolSum KClassContext::with_degree(const SymbolSum& a) const {
    SymbolSum r = a;
    r.deg = SR.n;
    return r;
}

}  // namespace hlf
