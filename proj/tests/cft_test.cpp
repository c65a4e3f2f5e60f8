#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hlf/cft.hpp"
#include "hlf/rng.hpp"

using namespace hlf;

namespace {

MIdx ix(int a) { MIdx i; i.e[0] = a; return i; }

FqSeries mono(const FqSeriesRing& SR, const MIdx& i) { return SR.monomial(i, SR.k.one()); }

}  // namespace

TEST_CASE("unramified norm: N(omega) = 1 over F_4((t))/F_2((t))") {
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 6));
    UnramifiedExt E(FS, 2);
    // conjugate-product oracle: omega * omega^2 = omega^3 = 1
    FqSeries w = E.LS.constant(E.Lk.x_class());
    FqSeries nw = E.norm_series(w);
    CHECK(nw.t == FS.one().t);
}

TEST_CASE("unramified norm of a base element is the ell-th power") {
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 8));
    UnramifiedExt E(FS, 2);
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        FqSeries x = rng.series_nonzero(FS, Window::box(1, 2), 3);
        FqSeries nx = E.norm_series(E.lift_series(x));
        CHECK(nx.t == FS.mul(x, x).t);
    }
}

TEST_CASE("tame norm: N(s) = -t over F_3((t)), s^2 = t") {
    FqField k(3, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 6));
    TameExt E(FS, 2, 1);
    FqSeries s = mono(E.LS, ix(1));
    FqSeries ns = E.norm_series(s);
    FqSeries expect = FS.monomial(ix(1), k.from_int(2));  // -t = 2t
    CHECK(ns.t == expect.t);
}

TEST_CASE("tame lift/descend round trip and Galois fixes the base") {
    FqField k(3, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 4));
    TameExt E(FS, 2, 1);
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        FqSeries x = rng.series_nonzero(FS, Window::box(1, 2), 3);
        FqSeries lx = E.lift_series(x);
        CHECK(E.is_base_rational(lx));
        CHECK(E.descend_series(lx).t == x.t);
        CHECK(E.galois(lx, 1).t == lx.t);
    }
}

TEST_CASE("artin-schreier norm: N(y) = -a for y^p - y = a") {
    // The minimal polynomial of y is X^p - X - a, so the product of the
    // conjugates is (-1)^p (-a) = -a for odd p, and a for p = 2... in char p:
    // prod (y + k) = y^p - y = a.
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 6));
    FqSeries a = mono(FS, ix(-1));
    ArtinSchreierExt E(FS, a);
    ArtinSchreierExt::LElem y(2, FS.zero());
    y[1] = FS.one();
    CHECK(E.norm(y).t == a.t);

    FqField k3(3, 1);
    FqSeriesRing FS3(k3, 1, Window::box(1, 6));
    FqSeries a3 = FS3.monomial(ix(-1), k3.from_int(2));
    ArtinSchreierExt E3(FS3, a3);
    ArtinSchreierExt::LElem y3(3, FS3.zero());
    y3[1] = FS3.one();
    // y(y+1)(y+2) = y^3 + 2y^2·3... in char 3: y^3 - y = a
    CHECK(E3.norm(y3).t == a3.t);

    CHECK_THROWS_AS(ArtinSchreierExt(FS, mono(FS, ix(1))), DomainError);   // positive support
    CHECK_THROWS_AS(ArtinSchreierExt(FS, mono(FS, ix(-2))), DomainError);  // p-divisible support
}

TEST_CASE("norm_ksym: unramified K_1 instances") {
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 8));
    UnramifiedExt E(FS, 2);
    KClassContext KL(E.LS, 1, Window::box(1, 4));

    // N({omega, ...}) at n=1: N({omega}) = {1} = 0
    SymbolSum s = sym_make(E.LS, {E.LS.constant(E.Lk.x_class())});
    SymbolSum ns = norm_ksym(KL, E, s);
    CHECK(ns.terms.empty());  // entry 1 is dropped as the zero class

    // projection formula: N(i(beta)) = 2 * beta
    KClassContext KF(FS, 1, Window::box(1, 4));
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        FqSeries x = rng.series_nonzero(FS, Window::box(1, 2), 2);
        SymbolSum beta = sym_make(FS, {x});
        SymbolSum nb = norm_ksym(KL, E, lift_ksym(E, beta));
        CHECK(KF.keq(nb, sym_scale(2, beta)));
    }
}

TEST_CASE("norm_ksym: tame K_1 instance N({s}) = {2t} = {2} + {t}") {
    FqField k(3, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 6));
    TameExt E(FS, 2, 1);
    KClassContext KL(E.LS, 1, Window::box(1, 4));
    KClassContext KF(FS, 1, Window::box(1, 3));
    SymbolSum s = sym_make(E.LS, {mono(E.LS, ix(1))});
    SymbolSum ns = norm_ksym(KL, E, s);
    SymbolSum expect = sym_make(FS, {FS.monomial(ix(1), k.from_int(2))});
    CHECK(KF.keq(ns, expect));
    SymbolSum split = sym_add(sym_make(FS, {FS.constant(k.from_int(2))}), sym_make(FS, {mono(FS, ix(1))}));
    CHECK(KF.keq(ns, split));
}

TEST_CASE("norm duality: (N alpha, beta]_F = (alpha, i beta]_L, unramified degree p") {
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 8));
    UnramifiedExt E(FS, 2);
    KClassContext KL(E.LS, 1, Window::box(1, 4));
    PairingContext pcF(FS, 1, Window::box(1, 4));
    Rng rng(11);
    Window small = Window::box(1, 2);
    for (int t = 0; t < 40; ++t) {
        FqSeries x;
        for (int terms = 0; terms < 3; ++terms)
            E.LS.accumulate(x, rng.idx_in(small), E.Lk.element(rng.below(E.Lk.q)));
        if (x.t.empty()) continue;
        SymbolSum alpha = sym_make(E.LS, {x});
        FqSeries beta = rng.series_in(FS, small, 2);
        SymbolSum nalpha = norm_ksym(KL, E, alpha);
        u64 lhs = pcF.pair(nalpha, {beta});
        u64 rhs = KL.pc.pair(alpha, {E.lift_series(beta)});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("tame duality: t(N alpha, beta)_F = t(alpha, i beta)_L, ell = 2 over F_3((t))") {
    FqField k(3, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 8));
    TameExt E(FS, 2, 1);
    KClassContext KL(E.LS, 1, Window::box(1, 4));
    Rng rng(13);
    Window small = Window::box(1, 2);
    for (int t = 0; t < 40; ++t) {
        FqSeries x = rng.series_nonzero(E.LS, small, 3);
        FqSeries beta = rng.series_nonzero(FS, small, 2);
        SymbolSum alpha = sym_make(E.LS, {x});
        SymbolSum nalpha = norm_ksym(KL, E, alpha);
        // adjoin and evaluate the iterated tame symbol on both sides
        SymbolSum lhs_sym = nalpha;
        for (auto& term : lhs_sym.terms) term.ents.push_back(beta);
        lhs_sym.deg = 2;
        FqElem lhs = tame_full(FS, lhs_sym);
        SymbolSum rhs_sym = alpha;
        for (auto& term : rhs_sym.terms) term.ents.push_back(E.lift_series(beta));
        rhs_sym.deg = 2;
        FqElem rhs = tame_full(E.LS, rhs_sym);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("tower independence: degrees 2*3 vs 3*2, unramified on K_1") {
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 8));
    KClassContext KF(FS, 1, Window::box(1, 3));
    Window fam = Window::box(1, 3);
    Rng rng(17);
    for (int t = 0; t < 5; ++t) {
        FqSeries x = rng.series_nonzero(FS, Window::box(1, 2), 2);
        SymbolSum beta = sym_make(FS, {x});
        SymbolSum a = norm_unram_tower(FS, {2, 3}, lift_unram_tower(FS, {2, 3}, beta), 1, fam);
        SymbolSum b = norm_unram_tower(FS, {3, 2}, lift_unram_tower(FS, {3, 2}, beta), 1, fam);
        CHECK(KF.keq(a, b));
        CHECK(KF.keq(a, sym_scale(6, beta)));
    }
    // empty tower is the identity
    SymbolSum beta = sym_make(FS, {rng.series_nonzero(FS, Window::box(1, 2), 2)});
    CHECK(KF.keq(norm_unram_tower(FS, {}, beta, 1, fam), beta));
}

TEST_CASE("witt dual sequence at r = 1 for F_4/F_2 over the window block") {
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 4));
    UnramifiedExt E(FS, 2);
    DualSequenceReport rep = witt_dual_sequence_check(E, 30, 19);
    CHECK(rep.tr_after_shift_zero);
    CHECK(rep.tr_surjective);
    CHECK(rep.kernel_matches_image);
    // constant part instance: Tr(omega) = omega + omega^2 = 1 hits the
    // nontrivial class
    FqSeries w = E.LS.constant(E.Lk.x_class());
    FqSeries trw = E.descend_series(E.LS.add(w, E.galois(w, 1)));
    CHECK(trw.t == FS.one().t);
}

TEST_CASE("norm-image annihilation and witness certify cokernel order p") {
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 8));
    UnramifiedExt E(FS, 2);
    KClassContext KL(E.LS, 1, Window::box(1, 4));
    PairingContext pcF(FS, 1, Window::box(1, 4));
    // defining Witt vector of the unramified degree-2 extension: constant 1
    std::vector<FqSeries> w = {FS.one()};
    Rng rng(23);
    Window small = Window::box(1, 2);
    for (int t = 0; t < 20; ++t) {
        FqSeries x;
        for (int terms = 0; terms < 3; ++terms)
            E.LS.accumulate(x, rng.idx_in(small), E.Lk.element(rng.below(E.Lk.q)));
        if (x.t.empty()) continue;
        SymbolSum nalpha = norm_ksym(KL, E, sym_make(E.LS, {x}));
        CHECK(pcF.pair(nalpha, w) == 0);
    }
    // witness: ({t}, 1] = trace(1) = 1
    CHECK(pcF.pair(sym_make(FS, {mono(FS, ix(1))}), w) == 1);
}

TEST_CASE("psi maps and reciprocity report") {
    FqField k(2, 1);
    FqSeriesRing FS(k, 1, Window::box(1, 6));
    KClassContext K(FS, 1, Window::box(1, 4));

    SymbolSum st = sym_make(FS, {mono(FS, ix(1))});
    CHECK(psi_ur(FS, param_symbol(FS)) == 1);
    CHECK(psi_p(K, sym_make(FS, {FS.add(FS.one(), mono(FS, ix(1)))}), {mono(FS, ix(-1))}) == 1);
    CHECK(psi_p(K, st, {mono(FS, ix(-1))}) == 0);  // ({t}, t^{-1}] = 0
    // t and t^2 are (F-1)-trivial, so they do not define an extension
    CHECK_THROWS_AS(psi_p(K, st, {mono(FS, ix(1))}), DomainError);
    CHECK_THROWS_AS(psi_p(K, st, {FS.monomial(ix(2), k.one())}), DomainError);

    ReciprocityReport rep = reciprocity_report(K, st, {{FS.one()}, {mono(FS, ix(-1))}});
    CHECK(rep.ur_exponent == 1);
    CHECK(rep.overlaps_agree);
    CHECK(rep.p_chars.size() == 2);
    CHECK(rep.p_chars[0].second == 1);  // ({t}, 1] = 1 = trace(1)*val

    // zero symbol gives the zero report
    SymbolSum zero;
    zero.deg = 1;
    ReciprocityReport zrep = reciprocity_report(K, zero, {{FS.one()}});
    CHECK(zrep.ur_exponent == 0);
    CHECK(zrep.p_chars[0].second == 0);
    CHECK(zrep.overlaps_agree);
}

TEST_CASE("psi agreement: psi_p(alpha, a)_1 = trace(a) psi_ur(alpha) mod p") {
    for (auto [p, f] : {std::pair<u64, int>{2, 1}, {2, 2}}) {
        FqField k(p, f);
        FqSeriesRing FS(k, 1, Window::box(1, 6));
        KClassContext K(FS, 1, Window::box(1, 4));
        Rng rng(29 + f);
        for (int t = 0; t < 30; ++t) {
            FqSeries x = rng.series_nonzero(FS, Window::box(1, 2), 3);
            SymbolSum alpha = sym_make(FS, {x});
            FqElem a = rng.fq_nonzero(k);
            if (k.trace(a) == 0 && k.is_zero(a)) continue;
            std::vector<FqSeries> w = {FS.constant(a)};
            ASWClass red = asw_reduce(K.SR, K.wops(), K.consts(), w);
            bool zero = true;
            for (const auto& c : red.comps)
                if (!c.t.empty()) zero = false;
            if (zero) continue;  // trace-zero constants define the trivial class
            CHECK(psi_p(K, alpha, w) == mulmod(k.trace(a), imod(psi_ur(FS, alpha), p), p));
        }
    }
}

TEST_CASE("tame norm duality at n = 2 exercises the mixed-slot rewriting") {
    // alpha with two genuinely-L slots forces the decomposition rewriting,
    // including the replacement {u, s} -> ell^{-1} {u, s^ell} on the
    // p-primary part. The rewriting is exact up to the probe family's
    // resolution, so the duality is checked against Witt monomials (their
    // reduced classes stay inside the family; general second arguments at
    // r >= 2 pick up Witt carries beyond it).
    FqField k(3, 1);
    FqSeriesRing FS(k, 2, Window::box(2, 12));
    TameExt E(FS, 2, 1);  // s^2 = t_1
    for (int r : {1, 2}) {
        KClassContext KL(E.LS, r, Window::box(2, 4));
        PairingContext pcF(FS, r, Window::box(2, 4));
        Rng rng(400 + r);
        for (int t = 0; t < 12; ++t) {
            // both entries genuinely-L: odd s-powers present
            MIdx s1{}, s2{};
            s1.e[0] = 1;
            s2.e[0] = 1;
            s2.e[1] = 1;
            FqSeries x = E.LS.add(E.LS.monomial(s1, rng.fq_nonzero(k)), E.LS.one());
            FqSeries y = E.LS.add(E.LS.monomial(s2, rng.fq_nonzero(k)), E.LS.one());
            SymbolSum alpha = sym_make(E.LS, {x, y});
            int lcount = 0;
            for (const auto& e : alpha.terms[0].ents)
                if (!E.is_base_rational(e)) ++lcount;
            REQUIRE(lcount == 2);
            SymbolSum nal = norm_ksym(KL, E, alpha);
            MIdx i = rng.idx_positive_nonpdiv(Window::box(2, 2), k.p);
            int depth = static_cast<int>(rng.below(static_cast<u64>(r)));
            std::vector<FqSeries> beta(static_cast<size_t>(r), FS.zero());
            beta[static_cast<size_t>(depth)] = FS.monomial(midx_neg(i), rng.fq_nonzero(k));
            std::vector<FqSeries> ibeta;
            for (const auto& c : beta) ibeta.push_back(E.lift_series(c));
            CHECK(pcF.pair(nal, beta) == KL.pc.pair(alpha, ibeta));
        }
    }
}
