#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hlf/fq.hpp"

using namespace hlf;

namespace {

// Independent polynomial-reduction oracle: multiply coordinate vectors as
// polynomials and reduce by long division against the modulus.
FqElem oracle_mul(const FqField& k, const FqElem& a, const FqElem& b) {
    std::vector<u64> conv(2 * k.f, 0);
    for (int i = 0; i < k.f; ++i)
        for (int j = 0; j < k.f; ++j) conv[i + j] = addmod(conv[i + j], mulmod(a.c[i], b.c[j], k.p), k.p);
    for (int d = 2 * k.f - 2; d >= k.f; --d) {
        u64 c = conv[d];
        if (!c) continue;
        conv[d] = 0;
        for (int i = 0; i < k.f; ++i)
            conv[d - k.f + i] = submod(conv[d - k.f + i], mulmod(c, k.modulus[i], k.p), k.p);
    }
    FqElem r{};
    for (int i = 0; i < k.f; ++i) r.c[i] = conv[i];
    return r;
}

}  // namespace

TEST_CASE("F_4 arithmetic: omega * omega = omega + 1") {
    FqField k(2, 2);  // x^2 + x + 1
    FqElem w = k.x_class();
    FqElem w2 = k.mul(w, w);
    FqElem expect{};
    expect.c[0] = 1;
    expect.c[1] = 1;
    CHECK(w2 == expect);
    CHECK(w2 == oracle_mul(k, w, w));
}

TEST_CASE("characteristic 2: 1 + 1 = 0") {
    FqField k(2, 2);
    CHECK(k.is_zero(k.add(k.one(), k.one())));
}

TEST_CASE("F_3: inv(2) = 2") {
    FqField k(3, 1);
    CHECK(k.inv(k.from_int(2)) == k.from_int(2));
}

TEST_CASE("division by zero is an error") {
    FqField k(3, 1);
    CHECK_THROWS_AS(k.inv(k.zero()), DomainError);
}

TEST_CASE("trace examples") {
    FqField f4(2, 2);
    CHECK(f4.trace(f4.x_class()) == 1);  // omega + omega^2 = 1
    CHECK(f4.trace(f4.one()) == 0);      // 1 + 1 in char 2
    FqField f2(2, 1);
    CHECK(f2.trace(f2.one()) == 1);  // f = 1 identity
    CHECK(f2.trace(f2.zero()) == 0);
}

TEST_CASE("field axioms and x^q = x on random elements") {
    for (auto [p, f] : {std::pair<u64, int>{2, 2}, {3, 2}, {2, 4}, {7, 1}, {3, 3}}) {
        FqField k(p, f);
        for (u64 ia = 0; ia < k.q; ++ia) {
            FqElem a = k.element(ia);
            CHECK(k.pow(a, static_cast<i64>(k.q)) == a);
            CHECK(k.trace(k.frobenius(a)) == k.trace(a));
            if (!k.is_zero(a)) {
                CHECK(k.mul(a, k.inv(a)) == k.one());
                CHECK(k.pow(a, static_cast<i64>(k.q - 1)) == k.one());
                CHECK(k.pth_root(k.pow(a, static_cast<i64>(p))) == a);
            }
            for (u64 ib = 0; ib < k.q; ++ib) {
                FqElem b = k.element(ib);
                CHECK(k.mul(a, b) == oracle_mul(k, a, b));
                CHECK(k.mul(a, b) == k.mul(b, a));
                CHECK(k.add(a, b) == k.add(b, a));
            }
        }
    }
}

TEST_CASE("trace is additive and surjective onto Z/p") {
    FqField k(3, 2);
    bool hit[3] = {false, false, false};
    for (u64 ia = 0; ia < k.q; ++ia) {
        hit[k.trace(k.element(ia))] = true;
        for (u64 ib = 0; ib < k.q; ++ib)
            CHECK(k.trace(k.add(k.element(ia), k.element(ib))) ==
                  addmod(k.trace(k.element(ia)), k.trace(k.element(ib)), k.p));
    }
    CHECK(hit[0]);
    CHECK(hit[1]);
    CHECK(hit[2]);
}

TEST_CASE("reducible modulus is rejected") {
    CHECK_THROWS_AS(FqField(2, 2, {1, 0, 1}), DomainError);  // x^2+1 = (x+1)^2
    CHECK_THROWS_AS(FqField(3, 2, {2, 0, 1}), DomainError);  // x^2+2 = (x+1)(x+2)
}

TEST_CASE("all default moduli construct") {
    for (auto [p, f] : {std::pair<u64, int>{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
                        {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}}) {
        FqField k(p, f);
        CHECK(k.q == ipow_checked(p, static_cast<unsigned>(f)));
    }
}

TEST_CASE("subfield embedding is a field homomorphism") {
    FqField f2(2, 1), f4(2, 2), f16(2, 4);
    FqEmbedding e24(f2, f4), e416(f4, f16);
    CHECK(e24.embed(f2.one()) == f4.one());
    for (u64 ia = 0; ia < f4.q; ++ia)
        for (u64 ib = 0; ib < f4.q; ++ib) {
            FqElem a = f4.element(ia), b = f4.element(ib);
            CHECK(e416.embed(f4.mul(a, b)) == f16.mul(e416.embed(a), e416.embed(b)));
            CHECK(e416.embed(f4.add(a, b)) == f16.add(e416.embed(a), e416.embed(b)));
            CHECK(e416.retract(e416.embed(a)) == a);
        }
    CHECK_FALSE(e416.in_image(f16.x_class()));  // generator of F_16 is not in F_4
}
