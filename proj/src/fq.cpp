#include "hlf/fq.hpp"

#include <algorithm>

namespace hlf {

namespace {

// Dense polynomial over Z/p, lowest degree first.
using Poly = std::vector<u64>;

int deg(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

// Remainder of a mod b (b monic-normalizable), all mod p.
Poly poly_rem(Poly a, const Poly& b, u64 p) {
    int db = deg(b);
    u64 lead_inv = powmod(b[db], p - 2, p);
    for (int i = deg(a); i >= db; i = deg(a)) {
        u64 c = mulmod(a[i], lead_inv, p);
        for (int k = 0; k <= db; ++k) a[i - db + k] = submod(a[i - db + k], mulmod(c, b[k], p), p);
    }
    a.resize(db > 0 ? db : 1);
    return a;
}

}  // namespace

FqField::FqField(u64 p_, int f_, std::vector<u64> modulus_) : p(p_), f(f_), modulus(std::move(modulus_)) {
    if (!is_prime_small(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (f < 1 || f > kMaxF) throw DomainError("extension degree f out of range");
    q = ipow_checked(p, static_cast<unsigned>(f));
    if (q > kMaxQ) throw DomainError("q exceeds desk-scale bound");
    if (static_cast<int>(modulus.size()) != f + 1) throw DomainError("modulus must have degree f");
    for (auto& c : modulus) c %= p;
    if (modulus[f] != 1) throw DomainError("modulus must be monic");
    check_irreducible();
    build_tables();
}

void FqField::check_irreducible() const {
    if (f == 1) return;
    // Trial-divide by every monic polynomial of degree 1..f/2.
    for (int d = 1; 2 * d <= f; ++d) {
        u64 count = ipow_checked(p, static_cast<unsigned>(d));
        for (u64 idx = 0; idx < count; ++idx) {
            Poly divisor(d + 1, 0);
            u64 t = idx;
            for (int k = 0; k < d; ++k, t /= p) divisor[k] = t % p;
            divisor[d] = 1;
            Poly m(modulus.begin(), modulus.end());
            if (deg(poly_rem(m, divisor, p)) < 0)
                throw DomainError("modulus is reducible over F_" + std::to_string(p));
        }
    }
}

void FqField::build_tables() {
    // x^{f+k} mod modulus for schoolbook reduction.
    FqElem xf{};  // x^f = -sum modulus[k] x^k
    for (int k = 0; k < f; ++k) xf.c[k] = submod(0, modulus[k], p);
    xpow_red_[0] = xf;
    for (int k = 1; k < f; ++k) {
        // multiply previous by x
        const FqElem& prev = xpow_red_[k - 1];
        FqElem cur{};
        u64 top = prev.c[f - 1];
        for (int i = f - 1; i >= 1; --i) cur.c[i] = prev.c[i - 1];
        cur.c[0] = 0;
        for (int i = 0; i < f; ++i) cur.c[i] = addmod(cur.c[i], mulmod(top, xf.c[i], p), p);
        xpow_red_[k] = cur;
    }

    // Multiplicative generator.
    if (f == 1) {
        u64 g = 0;
        for (u64 cand = 2; cand < p; ++cand) {
            bool prim = true;
            for (u64 d = 2; d < p - 1; ++d)
                if ((p - 1) % d == 0 && powmod(cand, (p - 1) / d, p) == 1) { prim = false; break; }
            if (prim) { g = cand; break; }
        }
        if (p == 2) g = 1;
        if (p > 2 && g == 0) throw InternalError("no primitive root found");
        gen_ = from_int(static_cast<i64>(g));
    } else {
        gen_ = x_class();
    }

    pow_table_.resize(q - 1);
    FqElem acc = one();
    for (u64 k = 0; k < q - 1; ++k) {
        pow_table_[k] = acc;
        if (dlog_table_.count(acc))
            throw DomainError("defining root is not primitive; supply a primitive modulus");
        dlog_table_[acc] = k;
        acc = mul(acc, gen_);
    }
    if (!(acc == one())) throw InternalError("generator order mismatch");
}

std::vector<u64> FqField::default_modulus(u64 p, int f) {
    // Standard (Conway-style) primitive polynomials, low degree first.
    struct Entry { u64 p; int f; std::vector<u64> m; };
    static const std::vector<Entry> table = {
        {2, 1, {0, 1}},          {2, 2, {1, 1, 1}},          {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}}, {2, 5, {1, 0, 1, 0, 0, 1}}, {2, 6, {1, 1, 0, 1, 1, 0, 1}},
        {3, 1, {0, 1}},          {3, 2, {2, 2, 1}},          {3, 3, {1, 2, 0, 1}},
        {3, 4, {2, 0, 0, 2, 1}},
        {5, 1, {0, 1}},          {5, 2, {2, 4, 1}},          {5, 3, {3, 3, 0, 1}},
        {7, 1, {0, 1}},          {7, 2, {3, 6, 1}},
    };
    for (const auto& e : table)
        if (e.p == p && e.f == f) return e.m;
    throw DomainError("no default modulus for p=" + std::to_string(p) + ", f=" + std::to_string(f));
}

FqElem FqField::add(const FqElem& a, const FqElem& b) const {
    FqElem r{};
    for (int i = 0; i < f; ++i) r.c[i] = addmod(a.c[i], b.c[i], p);
    return r;
}

FqElem FqField::sub(const FqElem& a, const FqElem& b) const {
    FqElem r{};
    for (int i = 0; i < f; ++i) r.c[i] = submod(a.c[i], b.c[i], p);
    return r;
}

FqElem FqField::neg(const FqElem& a) const { return sub(zero(), a); }

FqElem FqField::scale(u64 s, const FqElem& a) const {
    FqElem r{};
    s %= p;
    for (int i = 0; i < f; ++i) r.c[i] = mulmod(s, a.c[i], p);
    return r;
}

FqElem FqField::mul(const FqElem& a, const FqElem& b) const {
    std::array<u64, 2 * kMaxF> conv{};
    for (int i = 0; i < f; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < f; ++j) conv[i + j] = addmod(conv[i + j], mulmod(a.c[i], b.c[j], p), p);
    }
    FqElem r{};
    for (int i = 0; i < f; ++i) r.c[i] = conv[i];
    for (int k = 0; k < f - 1; ++k) {
        u64 c = conv[f + k];
        if (!c) continue;
        for (int i = 0; i < f; ++i) r.c[i] = addmod(r.c[i], mulmod(c, xpow_red_[k].c[i], p), p);
    }
    return r;
}

FqElem FqField::inv(const FqElem& a) const {
    if (is_zero(a)) throw DomainError("division by zero in F_q");
    return gen_pow((q - 1 - dlog(a)) % (q - 1));
}

FqElem FqField::pow(const FqElem& a, i64 e) const {
    if (is_zero(a)) {
        if (e < 0) throw DomainError("division by zero in F_q");
        return e == 0 ? one() : zero();
    }
    u64 k = imod(e, q - 1);
    return gen_pow(mulmod(dlog(a), k, q - 1) % (q - 1));
}

u64 FqField::trace(const FqElem& a) const {
    FqElem s = a, t = a;
    for (int k = 1; k < f; ++k) {
        t = frobenius(t);
        s = add(s, t);
    }
    for (int i = 1; i < f; ++i)
        if (s.c[i]) throw InternalError("trace did not land in the prime field");
    return s.c[0];
}

FqElem FqField::pth_root(const FqElem& a) const {
    // Inverse of Frobenius: a^{p^{f-1}}.
    FqElem r = a;
    for (int k = 0; k < f - 1; ++k) r = frobenius(r);
    return r;
}

u64 FqField::dlog(const FqElem& a) const {
    auto it = dlog_table_.find(a);
    if (it == dlog_table_.end()) throw DomainError("discrete log of zero");
    return it->second;
}

FqElem FqField::x_class() const {
    FqElem e{};
    if (f == 1) {
        e.c[0] = submod(0, modulus[0], p);  // root of the degree-1 modulus
        return e;
    }
    e.c[1] = 1;
    return e;
}

u64 FqField::index_of(const FqElem& a) const {
    u64 idx = 0;
    for (int i = f - 1; i >= 0; --i) idx = idx * p + a.c[i];
    return idx;
}

FqElem FqField::element(u64 idx) const {
    FqElem e{};
    for (int i = 0; i < f; ++i, idx /= p) e.c[i] = idx % p;
    return e;
}

FqElem FqField::basis_elem(int k) const {
    FqElem e{};
    e.c[k] = 1;
    return e;
}

std::string FqField::to_string(const FqElem& a) const {
    if (is_zero(a)) return "0";
    std::string s;
    for (int i = 0; i < f; ++i) {
        if (!a.c[i]) continue;
        std::string term;
        if (i == 0) term = std::to_string(a.c[i]);
        else {
            if (a.c[i] != 1) term = std::to_string(a.c[i]) + "*";
            term += "g";
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (!s.empty()) s += "+";
        s += term;
    }
    return s;
}

FqEmbedding::FqEmbedding(const FqField& s, const FqField& b) : sub(&s), big(&b) {
    if (s.p != b.p || b.f % s.f != 0) throw DomainError("no embedding: incompatible fields");
    // Lexicographically least root of sub's modulus in big.
    bool found = false;
    FqElem root{};
    for (u64 idx = 0; idx < b.q; ++idx) {
        FqElem cand = b.element(idx);
        FqElem acc = b.zero(), cp = b.one();
        for (u64 c : s.modulus) {
            acc = b.add(acc, b.scale(c, cp));
            cp = b.mul(cp, cand);
        }
        if (b.is_zero(acc)) { root = cand; found = true; break; }
    }
    if (!found) throw InternalError("no root of subfield modulus in big field");
    FqElem acc = b.one();
    for (int k = 0; k < s.f; ++k) {
        root_pow_[k] = acc;
        acc = b.mul(acc, root);
    }
    for (u64 idx = 0; idx < s.q; ++idx) {
        FqElem e = s.element(idx);
        retract_table_[embed(e)] = e;
    }
}

FqElem FqEmbedding::embed(const FqElem& a) const {
    FqElem r = big->zero();
    for (int k = 0; k < sub->f; ++k) r = big->add(r, big->scale(a.c[k], root_pow_[k]));
    return r;
}

bool FqEmbedding::in_image(const FqElem& a) const { return retract_table_.count(a) != 0; }

FqElem FqEmbedding::retract(const FqElem& a) const {
    auto it = retract_table_.find(a);
    if (it == retract_table_.end()) throw DomainError("element is not in the base field");
    return it->second;
}

}  // namespace hlf
