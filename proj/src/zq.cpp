#include "hlf/zq.hpp"

namespace hlf {

ZqRing::ZqRing(const FqField& base, int precision) : k(&base), N(precision) {
    if (N < 1) throw DomainError("p-adic precision must be >= 1");
    pN = ipow_checked(k->p, static_cast<unsigned>(N));

    const int f = k->f;
    const u64 p = k->p;

    // x^f = -sum modulus[i] x^i with the coefficientwise lift.
    ZqElem xf{};
    for (int i = 0; i < f; ++i) xf.c[i] = submod(0, k->modulus[i] % pN, pN);
    xpow_red_[0] = xf;
    for (int j = 1; j < f; ++j) {
        const ZqElem& prev = xpow_red_[j - 1];
        ZqElem cur{};
        u64 top = prev.c[f - 1];
        for (int i = f - 1; i >= 1; --i) cur.c[i] = prev.c[i - 1];
        for (int i = 0; i < f; ++i) cur.c[i] = addmod(cur.c[i], mulmod(top, xf.c[i], pN), pN);
        xpow_red_[j] = cur;
    }

    // Lifted Frobenius image of x: Hensel root of the lifted modulus that is
    // congruent to x^p mod p. Newton iteration doubles precision each step.
    ZqElem fx;
    if (f == 1) {
        fx = from_int(static_cast<i64>(submod(0, k->modulus[0], p)));
    } else {
        fx = lift_coeffwise(k->frobenius(k->x_class()));
        std::vector<u64> lifted(k->modulus.begin(), k->modulus.end());
        std::vector<u64> deriv(f);
        for (int i = 1; i <= f; ++i) deriv[i - 1] = mulmod(static_cast<u64>(i) % pN, lifted[i] % pN, pN);
        for (int it = 0; it < 2 * N + 4; ++it) {
            ZqElem val = eval_at(lifted, fx);
            if (is_zero(val)) break;
            ZqElem dval = eval_at(deriv, fx);
            fx = sub(fx, mul(val, inv(dval)));
        }
        if (!is_zero(eval_at(lifted, fx))) throw InternalError("Hensel iteration failed to converge");
    }
    ZqElem acc = one();
    for (int i = 0; i < f; ++i) {
        frob_pows_[i] = acc;
        acc = mul(acc, fx);
    }
}

ZqElem ZqRing::eval_at(const std::vector<u64>& poly, const ZqElem& at) const {
    ZqElem acc = zero();
    for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) {
        acc = mul(acc, at);
        ZqElem c{};
        c.c[0] = poly[i] % pN;
        acc = add(acc, c);
    }
    return acc;
}

ZqElem ZqRing::add(const ZqElem& a, const ZqElem& b) const {
    ZqElem r{};
    for (int i = 0; i < k->f; ++i) r.c[i] = addmod(a.c[i], b.c[i], pN);
    return r;
}

ZqElem ZqRing::sub(const ZqElem& a, const ZqElem& b) const {
    ZqElem r{};
    for (int i = 0; i < k->f; ++i) r.c[i] = submod(a.c[i], b.c[i], pN);
    return r;
}

ZqElem ZqRing::neg(const ZqElem& a) const { return sub(zero(), a); }

ZqElem ZqRing::mul(const ZqElem& a, const ZqElem& b) const {
    const int f = k->f;
    std::array<u64, 2 * kMaxF> conv{};
    for (int i = 0; i < f; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < f; ++j) conv[i + j] = addmod(conv[i + j], mulmod(a.c[i], b.c[j], pN), pN);
    }
    ZqElem r{};
    for (int i = 0; i < f; ++i) r.c[i] = conv[i];
    for (int e = 0; e < f - 1; ++e) {
        u64 c = conv[f + e];
        if (!c) continue;
        for (int i = 0; i < f; ++i) r.c[i] = addmod(r.c[i], mulmod(c, xpow_red_[e].c[i], pN), pN);
    }
    return r;
}

ZqElem ZqRing::pow(const ZqElem& a, u64 e) const {
    ZqElem r = one(), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

ZqElem ZqRing::inv(const ZqElem& a) const {
    FqElem am = reduce_mod_p(a);
    if (k->is_zero(am)) throw DomainError("inverting a non-unit in Z_q");
    ZqElem y = lift_coeffwise(k->inv(am));
    for (int it = 0; it < N + 2; ++it) {
        // y <- y(2 - ay)
        ZqElem t = sub(from_int(2), mul(a, y));
        y = mul(y, t);
    }
    if (!(mul(a, y) == one())) throw InternalError("Newton inversion failed");
    return y;
}

FqElem ZqRing::reduce_mod_p(const ZqElem& a) const {
    FqElem r{};
    for (int i = 0; i < k->f; ++i) r.c[i] = a.c[i] % k->p;
    return r;
}

ZqElem ZqRing::lift_coeffwise(const FqElem& a) const {
    ZqElem r{};
    for (int i = 0; i < k->f; ++i) r.c[i] = a.c[i];
    return r;
}

ZqElem ZqRing::teichmuller(const FqElem& a) const {
    if (k->is_zero(a)) return zero();
    ZqElem t = lift_coeffwise(a);
    for (int it = 0; it < N + 2; ++it) t = pow(t, k->q);
    if (!(pow(t, k->q) == t)) throw InternalError("Teichmuller iteration did not stabilize");
    return t;
}

ZqElem ZqRing::frobenius(const ZqElem& a) const {
    ZqElem r = zero();
    for (int i = 0; i < k->f; ++i) {
        ZqElem s{};
        s.c[0] = a.c[i];
        r = add(r, mul(s, frob_pows_[i]));
    }
    return r;
}

u64 ZqRing::trace(const ZqElem& a) const {
    ZqElem s = a, t = a;
    for (int j = 1; j < k->f; ++j) {
        t = frobenius(t);
        s = add(s, t);
    }
    for (int i = 1; i < k->f; ++i)
        if (s.c[i]) throw InternalError("Zq trace did not land in Z_p");
    return s.c[0];
}

bool ZqRing::divisible_p(const ZqElem& a, int m) const {
    u64 pm = ipow_checked(k->p, static_cast<unsigned>(m));
    for (int i = 0; i < k->f; ++i)
        if (a.c[i] % pm) return false;
    return true;
}

ZqElem ZqRing::divexact_p(const ZqElem& a, int m) const {
    u64 pm = ipow_checked(k->p, static_cast<unsigned>(m));
    ZqElem r{};
    for (int i = 0; i < k->f; ++i) {
        if (a.c[i] % pm) throw DomainError("integrality violation: inexact division by p^m");
        r.c[i] = a.c[i] / pm;
    }
    return r;
}

}  // namespace hlf
