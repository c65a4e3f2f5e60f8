#include "hlf/suites.hpp"

#include <algorithm>

#include "hlf/cft.hpp"
#include "hlf/rng.hpp"

namespace hlf {

namespace {

void add(std::vector<CheckResult>& out, const std::string& name, bool pass, const std::string& detail) {
    out.push_back(CheckResult{name, pass, detail});
}

std::string cfg_tag(u64 p, int f, int n, int r) {
    return "p" + std::to_string(p) + "f" + std::to_string(f) + "n" + std::to_string(n) + "r" + std::to_string(r);
}

// --- criterion 1: Witt ghost oracle -----------------------------------------

std::vector<u64> oracle_ghost(u64 p, u64 mod, const std::vector<u64>& x) {
    int r = static_cast<int>(x.size());
    std::vector<u64> g(r);
    for (int m = 0; m < r; ++m) {
        u64 acc = 0, pi = 1;
        for (int i = 0; i <= m; ++i) {
            u64 e = 1;
            for (int t = 0; t < m - i; ++t) e *= p;
            acc = addmod(acc, mulmod(pi, powmod(x[i], e, mod), mod), mod);
            pi *= p;
        }
        g[m] = acc;
    }
    return g;
}

std::vector<CheckResult> suite_witt_ghost(u64 seed) {
    std::vector<CheckResult> out;
    for (u64 p : {2ull, 3ull}) {
        for (int r : {2, 3}) {
            u64 mod = ipow_checked(p, static_cast<unsigned>(r + 3));
            ZmodRing Z{mod, p};
            WittPolys wp(p, r, r + 3);
            WittOps<ZmodRing> W(Z, wp);
            Rng rng(seed + p * 100 + static_cast<u64>(r));
            u64 pr = ipow_checked(p, static_cast<unsigned>(r));
            bool ok = true;
            int fails = 0;
            for (int t = 0; t < 200; ++t) {
                std::vector<u64> a(static_cast<size_t>(r)), b(static_cast<size_t>(r));
                for (int i = 0; i < r; ++i) {
                    a[static_cast<size_t>(i)] = rng.below(mod);
                    b[static_cast<size_t>(i)] = rng.below(mod);
                }
                auto ga = oracle_ghost(p, mod, a), gb = oracle_ghost(p, mod, b);
                auto s = W.add(a, b), pr_ = W.mul(a, b);
                auto gs = W.ghost(s), gp = W.ghost(pr_);
                for (int m = 0; m < r; ++m) {
                    // ghost of the structure result must agree with
                    // componentwise arithmetic on the ghost side, exactly
                    if (gs[static_cast<size_t>(m)] != addmod(ga[static_cast<size_t>(m)], gb[static_cast<size_t>(m)], mod) ||
                        gp[static_cast<size_t>(m)] != mulmod(ga[static_cast<size_t>(m)], gb[static_cast<size_t>(m)], mod)) {
                        ok = false;
                        ++fails;
                    }
                }
                (void)pr;
            }
            add(out, "witt-ghost." + cfg_tag(p, 1, 0, r) + ".agree", ok,
                ok ? "200 random pairs, exact" : std::to_string(fails) + " mismatches");
        }
    }
    // F(V(x)) = p*x exactly over F_q
    for (auto [p, f] : {std::pair<u64, int>{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
        FqField k(p, f);
        WittPolys wp(p, 3, 6);
        WittOps<FqField> W(k, wp);
        Rng rng(seed + 7 * p + static_cast<u64>(f));
        bool ok = true;
        for (int t = 0; t < 200; ++t) {
            std::vector<FqElem> x{rng.fq(k), rng.fq(k), rng.fq(k)};
            if (!(W.F_charp(W.V(x)) == W.smul(p, x))) ok = false;
        }
        add(out, "witt-ghost.FV." + cfg_tag(p, f, 0, 3), ok, ok ? "F(V(x)) = p x, 200 random" : "mismatch");
    }
    return out;
}

// --- criterion 2: pairing structure suite ------------------------------------

std::vector<CheckResult> suite_pairing_structure(u64 seed) {
    std::vector<CheckResult> out;
    struct Cfg { u64 p; int f, n, r; };
    for (Cfg c : {Cfg{2, 1, 1, 2}, Cfg{2, 2, 2, 2}, Cfg{3, 1, 2, 1}}) {
        FqField k(c.p, c.f);
        FqSeriesRing SR(k, c.n, Window::box(c.n, 8));
        PairingContext pc(SR, c.r, Window::box(c.n, 4));
        PairingContext pc1(SR, 1, Window::box(c.n, 4));
        WittOps<SeriesRing<FqField>> W(SR, pc.wp);
        WittConstClasses CC(k, pc.wp);
        Rng rng(seed + c.p * 1000 + static_cast<u64>(c.f * 100 + c.n * 10 + c.r));
        Window margin = Window::box(c.n, 2);
        std::string tag = cfg_tag(c.p, c.f, c.n, c.r);
        u64 pr = pc.pr;

        bool bilin = true, fvanish = true, steinberg = true, reduce_inv = true, r1 = true;
        for (int t = 0; t < 200; ++t) {
            std::vector<FqSeries> e1, e2;
            for (int s = 0; s < c.n; ++s) {
                e1.push_back(rng.series_nonzero(SR, margin, 2));
                e2.push_back(rng.series_nonzero(SR, margin, 2));
            }
            SymbolSum a = sym_make(SR, e1), a2 = sym_make(SR, e2);
            std::vector<FqSeries> w(static_cast<size_t>(c.r)), w2(static_cast<size_t>(c.r)),
                s(static_cast<size_t>(c.r));
            for (auto& cc : w) cc = rng.series_in(SR, margin, 2);
            for (auto& cc : w2) cc = rng.series_in(SR, margin, 2);
            for (auto& cc : s) cc = rng.series_in(SR, margin, 2);

            if (pc.pair(sym_add(a, a2), w) != addmod(pc.pair(a, w), pc.pair(a2, w), pr)) bilin = false;
            if (pc.pair(a, W.add(w, w2)) != addmod(pc.pair(a, w), pc.pair(a, w2), pr)) bilin = false;
            if (pc.pair(a, W.sub(W.F_charp(s), s)) != 0) fvanish = false;
            if (pc.pair(a, w) != pc.pair(a, asw_reduce(SR, W, CC, w).comps)) reduce_inv = false;

            if (c.n >= 2) {
                FqSeries u = rng.principal_unit(SR, margin, 2);
                FqSeries omu = SR.sub(SR.one(), u);
                if (!omu.t.empty()) {
                    std::vector<FqSeries> ents{u, omu};
                    for (int sl = 2; sl < c.n; ++sl) ents.push_back(rng.series_nonzero(SR, margin, 2));
                    if (pc.pair(sym_make(SR, ents), w) != 0) steinberg = false;
                }
            }

            // r = 1 ghost algorithm vs the direct residue-trace formula
            FqSeries w0 = rng.series_in(SR, margin, 2);
            if (pc1.pair(a, {w0}) != asw_pair_r1_direct(SR, a, w0)) r1 = false;
        }
        add(out, "pairing." + tag + ".bilinear", bilin, "200 random instances, exact");
        add(out, "pairing." + tag + ".F-1-vanishing", fvanish, "200 random instances, exact");
        if (c.n >= 2) add(out, "pairing." + tag + ".steinberg", steinberg, "200 random instances, exact");
        add(out, "pairing." + tag + ".reduce-invariance", reduce_inv, "200 random instances, exact");
        add(out, "pairing." + tag + ".r1-direct-agrees", r1, "ghost route vs charp residue-trace, exact");
    }
    return out;
}

// --- criterion 3: non-degeneracy Gram ----------------------------------------

std::vector<CheckResult> suite_gram(u64 seed) {
    (void)seed;
    std::vector<CheckResult> out;
    FqField k(2, 1);
    FqSeriesRing SR(k, 2, Window::box(2, 4));
    KClassContext K(SR, 2);
    ZpkMatrix G = K.square_gram();
    bool square = G.rows == G.cols && G.rows == 1 + K.gens.size();
    bool inv = zpk_invertible(G);
    size_t rank = zpk_rank_mod_p(G);
    add(out, "gram.p2q2n2r2.square", square,
        std::to_string(G.rows) + "x" + std::to_string(G.cols) + " (1 + " + std::to_string(K.gens.size()) +
            " generators)");
    add(out, "gram.p2q2n2r2.invertible-Z4", inv, inv ? "unit-pivot elimination over Z/4 succeeds" : "singular");
    add(out, "gram.p2q2n2r2.full-rank-mod-2", rank == G.rows,
        "rank " + std::to_string(rank) + " of " + std::to_string(G.rows) +
            " (certifies no nontrivial p-torsion observationally)");
    return out;
}

// --- criterion 4: residue-field identities -------------------------------------

std::vector<CheckResult> suite_identities(u64 seed) {
    std::vector<CheckResult> out;
    // tame_full({theta, t_1..t_n}) = theta exhaustively for q in {2,3,4}
    for (auto [p, f] : {std::pair<u64, int>{2, 1}, {3, 1}, {2, 2}}) {
        for (int n : {1, 2}) {
            FqField k(p, f);
            FqSeriesRing SR(k, n, Window::box(n, 4));
            bool ok = true;
            for (u64 e = 1; e < k.q; ++e) {
                FqElem theta = k.element(e);
                std::vector<FqSeries> ents{SR.constant(theta)};
                for (int v = 1; v <= n; ++v) {
                    MIdx i{};
                    i.e[v - 1] = 1;
                    ents.push_back(SR.monomial(i, k.one()));
                }
                if (!(tame_full(SR, sym_make(SR, ents)) == theta)) ok = false;
            }
            add(out, "identities.tame-iso.q" + std::to_string(k.q) + "n" + std::to_string(n), ok,
                "exhaustive over F_q^*");
        }
    }
    // 50 random (theta, i) with p not dividing any i_k:
    // tame_full({1+theta t^i, t_1,...,t_n}) = 1 and keq({1+theta tau, -theta tau}, 0)
    {
        FqField k(2, 2);
        FqSeriesRing SR(k, 2, Window::box(2, 24));
        KClassContext K(SR, 2, Window::box(2, 4));
        Rng rng(seed + 4);
        bool tame_ok = true, keq_ok = true;
        SymbolSum zero;
        zero.deg = 2;
        for (int t = 0; t < 50; ++t) {
            MIdx i;
            do {
                i = rng.idx_in(Window::box(2, 3));
            } while (!sig_positive(i) || i.e[0] % 2 == 0 || i.e[1] % 2 == 0);
            FqElem theta = rng.fq_nonzero(k);
            FqSeries tau = SR.monomial(i, theta);
            FqSeries u = SR.add(SR.one(), tau);
            SymbolSum nplus1 = sym_make(SR, {u, SR.monomial(MIdx{.e = {1, 0, 0, 0}}, k.one()),
                                             SR.monomial(MIdx{.e = {0, 1, 0, 0}}, k.one())});
            if (!(tame_full(SR, nplus1) == k.one())) tame_ok = false;
            if (!K.keq(sym_make(SR, {u, SR.neg(tau)}), zero)) keq_ok = false;
        }
        add(out, "identities.unit-led-tame-vanishing.q4n2", tame_ok, "50 random (theta, i), exact");
        add(out, "identities.steinberg-chain.q4n2r2", keq_ok, "keq({1+theta tau, -theta tau}, 0), 50 random");
    }
    return out;
}

// --- criterion 5: decomposition round-trip --------------------------------------

std::vector<CheckResult> suite_decomp_roundtrip(u64 seed) {
    std::vector<CheckResult> out;
    FqField k(2, 1);
    FqSeriesRing SR(k, 2, Window::box(2, 48));
    KClassContext K(SR, 2, Window::box(2, 4));
    Rng rng(seed + 5);
    bool tables_ok = true, keq_ok = true;
    for (int t = 0; t < 100; ++t) {
        KDecomp in;
        in.level = 2;
        in.vZ = rng.range(-2, 2);
        in.tame.assign(2, 0);
        in.vk.level = 2;
        int entries = 1 + static_cast<int>(rng.below(4));
        for (int g = 0; g < entries; ++g) {
            const auto& cand = K.gens[rng.below(K.gens.size())];
            in.vk.a[PeelKey{cand.theta_idx, cand.i}] = 1 + rng.below(3);
        }
        SymbolSum s = K.rebuild(in);
        KDecomp got = K.decompose(s);
        if (got.vZ != in.vZ || got.tame != in.tame || !(got.vk.a == in.vk.a)) tables_ok = false;
        if (!K.keq(K.rebuild(got), s)) keq_ok = false;
    }
    add(out, "decomp.p2q2n2r2.tables", tables_ok, "decompose . rebuild is the identity on 100 random tables");
    add(out, "decomp.p2q2n2r2.keq", keq_ok, "rebuild . decompose is keq-equal to the input");
    return out;
}

// --- criterion 6: routed generator families ---------------------------------------

std::vector<CheckResult> suite_routing(u64 seed) {
    std::vector<CheckResult> out;
    FqField k(2, 1);
    FqSeriesRing SR(k, 2, Window::box(2, 48));
    KClassContext K(SR, 2, Window::box(2, 4));
    Rng rng(seed + 6);
    std::vector<KClassContext::VkGen> gens_l1, gens_l2;
    for (const auto& g : K.gens) (l_of(g.i, 2, 2) == 1 ? gens_l1 : gens_l2).push_back(g);
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
        PeelTable t1, t2;
        t1.level = t2.level = 2;
        int n1 = 1 + static_cast<int>(rng.below(3)), n2 = 1 + static_cast<int>(rng.below(3));
        for (int g = 0; g < n1; ++g) {  // l = 2 routes are allowed for J = {1}
            const auto& cand = gens_l2[rng.below(gens_l2.size())];
            t1.a[PeelKey{cand.theta_idx, cand.i}] = 1 + rng.below(3);
        }
        for (int g = 0; g < n2; ++g) {  // l = 1 routes for J = {2}
            const auto& cand = gens_l1[rng.below(gens_l1.size())];
            t2.a[PeelKey{cand.theta_idx, cand.i}] = 1 + rng.below(3);
        }
        FqSeries e1 = rebuild_unit(SR, t1), e2 = rebuild_unit(SR, t2);
        SymbolSum h = h_map(SR, {{{1}, e1}, {{2}, e2}}, 2, 2);
        KDecomp d = K.decompose(h);
        PeelTable merged;
        for (const auto& [key, e] : t1.a) merged.a[key] = e;
        for (const auto& [key, e] : t2.a) merged.a[key] = e;
        if (d.vZ != 0 || !(d.vk.a == merged.a)) ok = false;
    }
    add(out, "routing.n2m2", ok, "h_map then decompose recovers the routed peel tables, 50 random");
    return out;
}

// --- criterion 7: norm dualities ----------------------------------------------------

std::vector<CheckResult> suite_norm_duality(u64 seed) {
    std::vector<CheckResult> out;
    {
        FqField k(2, 1);
        FqSeriesRing FS(k, 1, Window::box(1, 8));
        UnramifiedExt E(FS, 2);
        KClassContext KL(E.LS, 1, Window::box(1, 4));
        PairingContext pcF(FS, 1, Window::box(1, 4));
        Rng rng(seed + 7);
        Window small = Window::box(1, 2);
        bool ok = true;
        int done = 0;
        while (done < 100) {
            FqSeries x;
            for (int terms = 0; terms < 3; ++terms)
                E.LS.accumulate(x, rng.idx_in(small), E.Lk.element(rng.below(E.Lk.q)));
            if (x.t.empty()) continue;
            ++done;
            SymbolSum alpha = sym_make(E.LS, {x});
            FqSeries beta = rng.series_in(FS, small, 2);
            if (pcF.pair(norm_ksym(KL, E, alpha), {beta}) != KL.pc.pair(alpha, {E.lift_series(beta)})) ok = false;
        }
        add(out, "duality.unram-p.F4-over-F2", ok, "(N a, b]_F = (a, i b]_L, 100 random pairs, exact");
    }
    {
        FqField k(3, 1);
        FqSeriesRing FS(k, 1, Window::box(1, 8));
        TameExt E(FS, 2, 1);
        KClassContext KL(E.LS, 1, Window::box(1, 4));
        Rng rng(seed + 8);
        Window small = Window::box(1, 2);
        bool ok = true;
        for (int t = 0; t < 100; ++t) {
            FqSeries x = rng.series_nonzero(E.LS, small, 3);
            FqSeries beta = rng.series_nonzero(FS, small, 2);
            SymbolSum alpha = sym_make(E.LS, {x});
            SymbolSum nal = norm_ksym(KL, E, alpha);
            SymbolSum lhs_sym = nal;
            for (auto& term : lhs_sym.terms) term.ents.push_back(beta);
            lhs_sym.deg = 2;
            SymbolSum rhs_sym = alpha;
            for (auto& term : rhs_sym.terms) term.ents.push_back(E.lift_series(beta));
            rhs_sym.deg = 2;
            if (!(tame_full(FS, lhs_sym) == tame_full(E.LS, rhs_sym))) ok = false;
        }
        add(out, "duality.tame-l2.F3", ok, "t(N a, b)_F = t(a, i b)_L, 100 random pairs, exact");
    }
    return out;
}

// --- criterion 8: Proposition evidence ----------------------------------------------

std::vector<CheckResult> suite_proposition(u64 seed) {
    std::vector<CheckResult> out;
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 4));
    UnramifiedExt E(FS, 2);
    DualSequenceReport rep = witt_dual_sequence_check(E, 50, seed + 9);
    add(out, "proposition.dual-seq.tr-shift-zero", rep.tr_after_shift_zero, "Tr(1-sigma) = 0, 50 random");
    add(out, "proposition.dual-seq.tr-surjective", rep.tr_surjective, "Tr onto reduced classes, window [-4,4]");
    add(out, "proposition.dual-seq.ker-equals-im", rep.kernel_matches_image,
        "dim ker Tr = " + std::to_string(rep.dim_ker) + " = dim im (1-sigma) = " + std::to_string(rep.dim_im));

    // Norm-image annihilation by the defining vector plus a unit witness.
    FqSeriesRing FS8(k, 1, Window::box(1, 8));
    UnramifiedExt E8(FS8, 2);
    KClassContext KL(E8.LS, 1, Window::box(1, 4));
    PairingContext pcF(FS8, 1, Window::box(1, 4));
    std::vector<FqSeries> wdef = {FS8.one()};  // trace(1) = 1 defines the unramified degree-2 extension
    Rng rng(seed + 10);
    Window small = Window::box(1, 2);
    bool annihilated = true;
    int done = 0;
    while (done < 50) {
        FqSeries x;
        for (int terms = 0; terms < 3; ++terms)
            E8.LS.accumulate(x, rng.idx_in(small), E8.Lk.element(rng.below(E8.Lk.q)));
        if (x.t.empty()) continue;
        ++done;
        if (pcF.pair(norm_ksym(KL, E8, sym_make(E8.LS, {x})), wdef) != 0) annihilated = false;
    }
    MIdx t1{};
    t1.e[0] = 1;
    bool witness = pcF.pair(sym_make(FS8, {FS8.monomial(t1, k.one())}), wdef) == 1;
    add(out, "proposition.norm-image-annihilated", annihilated, "(N alpha, w] = 0 for 50 random alpha over L");
    add(out, "proposition.cokernel-witness", witness, "({t}, w] = 1 certifies cokernel order p");
    return out;
}

// --- criterion 9: Psi agreement ------------------------------------------------------

std::vector<CheckResult> suite_psi_agreement(u64 seed) {
    std::vector<CheckResult> out;
    for (auto [p, f] : {std::pair<u64, int>{2, 1}, {2, 2}}) {
        FqField k(p, f);
        FqSeriesRing FS(k, 1, Window::box(1, 6));
        KClassContext K(FS, 1, Window::box(1, 4));
        Rng rng(seed + 11 + static_cast<u64>(f));
        bool ok = true;
        int done = 0;
        while (done < 100) {
            FqSeries x = rng.series_nonzero(FS, Window::box(1, 2), 3);
            FqElem a = rng.fq_nonzero(k);
            if (k.trace(a) == 0) {
                // trace-zero constants define the trivial class; psi_p
                // rejects them, and the agreement statement is vacuous
                continue;
            }
            ++done;
            SymbolSum alpha = sym_make(FS, {x});
            u64 lhs = psi_p(K, alpha, {FS.constant(a)}) % p;
            u64 rhs = mulmod(k.trace(a), imod(psi_ur(FS, alpha), p), p);
            if (lhs != rhs) ok = false;
        }
        add(out, "psi.agreement.q" + std::to_string(k.q), ok,
            "psi_p(alpha, a)_1 = trace(a) psi_ur(alpha) mod p, 100 random");
    }
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"witt-ghost",       "pairing-structure", "gram",       "identities", "decomp-roundtrip",
            "routing",          "norm-duality",      "proposition", "psi-agreement"};
}

std::vector<CheckResult> run_suite(const std::string& name, u64 seed) {
    if (name == "witt-ghost") return suite_witt_ghost(seed);
    if (name == "pairing-structure") return suite_pairing_structure(seed);
    if (name == "gram") return suite_gram(seed);
    if (name == "identities") return suite_identities(seed);
    if (name == "decomp-roundtrip") return suite_decomp_roundtrip(seed);
    if (name == "routing") return suite_routing(seed);
    if (name == "norm-duality") return suite_norm_duality(seed);
    if (name == "proposition") return suite_proposition(seed);
    if (name == "psi-agreement") return suite_psi_agreement(seed);
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const auto& n : suite_names()) {
            auto part = run_suite(n, seed);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw DomainError("unknown check suite: " + name);
}

}  // namespace hlf
