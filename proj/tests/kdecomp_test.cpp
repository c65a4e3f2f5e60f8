#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hlf/kdecomp.hpp"
#include "hlf/rng.hpp"

using namespace hlf;

namespace {

MIdx ix(int a) { MIdx i; i.e[0] = a; return i; }
MIdx ix(int a, int b) { MIdx i; i.e[0] = a; i.e[1] = b; return i; }

FqSeries mono(const FqSeriesRing& SR, const MIdx& i) { return SR.monomial(i, SR.k.one()); }

}  // namespace

TEST_CASE("decompose: n = 1 reduces to split + peel") {
    FqField k(2, 1);
    FqSeriesRing SR(k, 1, Window::box(1, 4));
    KClassContext K(SR, 2);

    // alpha = {t(1+t)}: vZ = 1, no tame part, vk = {(1, i=1): 1}
    FqSeries x = SR.mul(mono(SR, ix(1)), SR.add(SR.one(), mono(SR, ix(1))));
    KDecomp d = K.decompose(sym_make(SR, {x}));
    CHECK(d.vZ == 1);
    CHECK(d.tame == std::vector<u64>{0});
    REQUIRE(d.vk.a.size() == 1);
    CHECK(d.vk.a.count(PeelKey{0, ix(1)}) == 1);
    CHECK(d.vk.a.at(PeelKey{0, ix(1)}) == 1);

    // split+peel oracle for the same class
    auto sp = SR.split(x);
    PeelTable oracle = unit_peel(SR, sp.unit, 2);
    CHECK(oracle.a == d.vk.a);

    // canonical generator
    KDecomp dp = K.decompose(param_symbol(SR));
    CHECK(dp.vZ == 1);
    CHECK(dp.vk.a.empty());
}

TEST_CASE("decompose: linearity of the probe system at n = 2") {
    FqField k(2, 1);
    FqSeriesRing SR(k, 2, Window::box(2, 4));
    KClassContext K(SR, 2);
    FqSeries u = SR.add(SR.one(), mono(SR, ix(1, 0)));
    SymbolSum s = sym_make(SR, {u, mono(SR, ix(0, 1))});  // {1+t_1, t_2}
    KDecomp d = K.decompose(sym_add(s, s));
    CHECK(d.vZ == 0);
    REQUIRE(d.vk.a.size() == 1);
    CHECK(d.vk.a.at(PeelKey{0, ix(1, 0)}) == 2);
}

TEST_CASE("keq: reflexivity, Steinberg, and the vanishing chain") {
    for (auto [p, f] : {std::pair<u64, int>{2, 2}, {3, 1}}) {
        FqField k(p, f);
        FqSeriesRing SR(k, 2, Window::box(2, 6));
        KClassContext K(SR, 2);
        Rng rng(7 + static_cast<int>(p) + f);
        Window small = Window::box(2, 2);
        SymbolSum zero;
        zero.deg = 2;
        for (int trial = 0; trial < 10; ++trial) {
            // reflexivity on random two-entry symbols
            SymbolSum a = sym_make(SR, {rng.series_nonzero(SR, small, 2), rng.series_nonzero(SR, small, 2)});
            CHECK(K.keq(a, a));

            // Steinberg: {u, 1-u} = 0
            FqSeries u = rng.principal_unit(SR, small, 2);
            FqSeries omu = SR.sub(SR.one(), u);
            if (!omu.t.empty()) CHECK(K.keq(sym_make(SR, {u, omu}), zero));

            // {1+theta tau, -theta tau} = 0
            MIdx i;
            do {
                i = rng.idx_in(small);
            } while (!sig_positive(i) || i.e[0] % static_cast<int>(p) == 0 || i.e[1] % static_cast<int>(p) == 0);
            FqElem theta = rng.fq_nonzero(k);
            FqSeries tau = SR.monomial(i, theta);
            FqSeries one_plus = SR.add(SR.one(), tau);
            FqSeries minus = SR.neg(tau);
            CHECK(K.keq(sym_make(SR, {one_plus, minus}), zero));
        }
    }
}

TEST_CASE("keq: multilinearity and antisymmetry observationally") {
    FqField k(3, 1);
    FqSeriesRing SR(k, 2, Window::box(2, 6));
    KClassContext K(SR, 1);
    Rng rng(17);
    Window small = Window::box(2, 2);
    SymbolSum zero;
    zero.deg = 2;
    for (int trial = 0; trial < 8; ++trial) {
        FqSeries x = rng.series_nonzero(SR, small, 2);
        FqSeries y = rng.series_nonzero(SR, small, 2);
        FqSeries z = rng.series_nonzero(SR, small, 2);
        SymbolSum lhs = sym_make(SR, {SR.mul(x, y), z});
        SymbolSum rhs = sym_add(sym_make(SR, {x, z}), sym_make(SR, {y, z}));
        CHECK(K.keq(lhs, rhs));
        SymbolSum sym = sym_add(sym_make(SR, {x, y}), sym_make(SR, {y, x}));
        CHECK(K.keq(sym, zero));
    }
}

TEST_CASE("square Gram is invertible and full-rank mod p at (2,2,2,2)") {
    FqField k(2, 1);
    FqSeriesRing SR(k, 2, Window::box(2, 4));
    KClassContext K(SR, 2);
    ZpkMatrix G = K.square_gram();
    CHECK(G.rows == G.cols);
    CHECK(G.rows == 1 + K.gens.size());
    CHECK(zpk_invertible(G));
    CHECK(zpk_rank_mod_p(G) == G.rows);
}

TEST_CASE("decompose round-trip on random VK tables") {
    FqField k(2, 1);
    FqSeriesRing SR(k, 2, Window::box(2, 48));  // storage large enough that rebuilds stay exact
    KClassContext K(SR, 2, Window::box(2, 4));
    Rng rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        KDecomp in;
        in.level = 2;
        in.vZ = rng.range(-2, 2);
        in.tame.assign(2, 0);  // q = 2: trivial tame part
        in.vk.level = 2;
        for (int g = 0; g < 3; ++g) {
            const auto& cand = K.gens[rng.below(K.gens.size())];
            u64 e = 1 + rng.below(3);
            in.vk.a[PeelKey{cand.theta_idx, cand.i}] = e;
        }
        SymbolSum s = K.rebuild(in);
        KDecomp out = K.decompose(s);
        CHECK(out.vZ == in.vZ);
        CHECK(out.tame == in.tame);
        CHECK(out.vk.a == in.vk.a);
        CHECK(K.keq(K.rebuild(out), s));
    }
}

TEST_CASE("decompose / h_map consistency at n = m = 2") {
    FqField k(2, 1);
    FqSeriesRing SR(k, 2, Window::box(2, 48));
    KClassContext K(SR, 2, Window::box(2, 4));
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        // eps_{J={1}} from generators with l = 2, eps_{J={2}} with l = 1
        PeelTable t1, t2;
        t1.level = t2.level = 2;
        for (const auto& g : K.gens) {
            if (rng.chance(1, 4)) {
                int l = l_of(g.i, 2, 2);
                u64 e = 1 + rng.below(3);
                if (l == 2)
                    t1.a[PeelKey{g.theta_idx, g.i}] = e;
                else if (rng.chance(1, 2))
                    t2.a[PeelKey{g.theta_idx, g.i}] = e;
            }
        }
        FqSeries e1 = rebuild_unit(SR, t1), e2 = rebuild_unit(SR, t2);
        SymbolSum h = h_map(SR, {{{1}, e1}, {{2}, e2}}, 2, 2);
        KDecomp d = K.decompose(h);
        PeelTable merged;
        merged.level = 2;
        for (const auto& [key, e] : t1.a) merged.a[key] = e;
        for (const auto& [key, e] : t2.a) merged.a[key] = e;
        CHECK(d.vZ == 0);
        CHECK(d.vk.a == merged.a);
    }
}
