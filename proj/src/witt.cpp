#include "hlf/witt.hpp"

#include <algorithm>
#include <random>

namespace hlf {

namespace {

// Sparse integer polynomials (coefficients mod 2^64-safe p^K) in 2r
// variables, used only while building the structure polynomials.
using Expv = std::vector<std::uint8_t>;
using Spoly = std::map<Expv, u64>;

Spoly sp_var(size_t v, size_t nvars) {
    Expv e(nvars, 0);
    e[v] = 1;
    return {{e, 1}};
}

void sp_addmul(Spoly& dst, const Spoly& a, u64 scale, u64 mod) {
    for (const auto& [e, c] : a) {
        u64 v = mulmod(c, scale, mod);
        if (!v) continue;
        auto [it, ins] = dst.emplace(e, v);
        if (!ins) {
            it->second = addmod(it->second, v, mod);
            if (!it->second) dst.erase(it);
        }
    }
}

Spoly sp_mul(const Spoly& a, const Spoly& b, u64 mod) {
    Spoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            u64 v = mulmod(ca, cb, mod);
            if (!v) continue;
            Expv e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) {
                int s = ea[i] + eb[i];
                if (s > 255) throw InternalError("structure polynomial exponent overflow");
                e[i] = static_cast<std::uint8_t>(s);
            }
            auto [it, ins] = r.emplace(std::move(e), v);
            if (!ins) {
                it->second = addmod(it->second, v, mod);
                if (!it->second) r.erase(it);
            }
        }
    return r;
}

Spoly sp_pow(const Spoly& a, u64 e, u64 mod) {
    if (a.empty()) return e == 0 ? Spoly{{Expv{}, 1}} : Spoly{};
    Spoly r = {{Expv(a.begin()->first.size(), 0), 1}};
    Spoly base = a;
    while (e) {
        if (e & 1) r = sp_mul(r, base, mod);
        base = sp_mul(base, base, mod);
        e >>= 1;
    }
    return r;
}

Spoly sp_divexact_p(const Spoly& a, u64 p, int m) {
    u64 pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    Spoly r;
    for (const auto& [e, c] : a) {
        if (c % pm) throw InternalError("ghost recursion produced a non-integral coefficient");
        u64 v = c / pm;
        if (v) r.emplace(e, v);
    }
    return r;
}

WittPoly freeze(const Spoly& a) {
    WittPoly p;
    p.terms.reserve(a.size());
    for (const auto& [e, c] : a) p.terms.push_back(WittMono{c, e});
    return p;
}

}  // namespace

WittPolys::WittPolys(u64 p_, int r_, int digits_) : p(p_), r(r_), digits(digits_) {
    if (r < 1 || r > 8) throw DomainError("Witt length out of range");
    // Working modulus p^K with K = digits + 2r guard digits for the exact
    // divisions inside the recursion.
    const int K = digits + 2 * r;
    const u64 mod = ipow_checked(p, static_cast<unsigned>(K));
    const size_t nv = 2 * static_cast<size_t>(r);

    auto ghost_of = [&](bool ys, int m) {
        // sum_{i<=m} p^i z_i^{p^{m-i}} for z = x or y
        Spoly g;
        u64 pi = 1;
        for (int i = 0; i <= m; ++i) {
            Spoly t = sp_pow(sp_var((ys ? r : 0) + i, nv), ipow_checked(p, static_cast<unsigned>(m - i)), mod);
            sp_addmul(g, t, pi, mod);
            pi *= p;
        }
        return g;
    };

    std::vector<Spoly> S, P, N;
    for (int m = 0; m < r; ++m) {
        Spoly gx = ghost_of(false, m), gy = ghost_of(true, m);

        Spoly s = gx;
        sp_addmul(s, gy, 1, mod);
        Spoly pr = sp_mul(gx, gy, mod);
        Spoly ng;
        sp_addmul(ng, gx, mod - 1, mod);
        u64 pi = 1;
        for (int i = 0; i < m; ++i) {
            u64 e = ipow_checked(p, static_cast<unsigned>(m - i));
            sp_addmul(s, sp_pow(S[i], e, mod), mod - pi, mod);
            sp_addmul(pr, sp_pow(P[i], e, mod), mod - pi, mod);
            sp_addmul(ng, sp_pow(N[i], e, mod), mod - pi, mod);
            pi *= p;
        }
        S.push_back(sp_divexact_p(s, p, m));
        P.push_back(sp_divexact_p(pr, p, m));
        N.push_back(sp_divexact_p(ng, p, m));
    }
    for (int m = 0; m < r; ++m) {
        sum_.push_back(freeze(S[m]));
        prod_.push_back(freeze(P[m]));
        neg_.push_back(freeze(N[m]));
    }
    self_check();
}

void WittPolys::self_check() const {
    // Structure arithmetic must agree with componentwise ghost arithmetic;
    // checked over Z/p^{digits} on a handful of pseudorandom vectors.
    ZmodRing Z{ipow_checked(p, static_cast<unsigned>(digits)), p};
    WittOps<ZmodRing> W(Z, *this);
    std::mt19937_64 rng(0xC0FFEE);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<u64> a(r), b(r);
        for (int i = 0; i < r; ++i) {
            a[i] = rng() % Z.m;
            b[i] = rng() % Z.m;
        }
        auto ga = W.ghost(a), gb = W.ghost(b);
        auto s = W.add(a, b), pr = W.mul(a, b), ng = W.neg(a);
        auto gs = W.ghost(s), gp = W.ghost(pr), gn = W.ghost(ng);
        for (int m = 0; m < r; ++m) {
            if (gs[m] != Z.add(ga[m], gb[m]) || gp[m] != Z.mul(ga[m], gb[m]) || gn[m] != Z.neg(ga[m]))
                throw InternalError("structure polynomials fail the ghost check");
        }
    }
}

WrZmodIso::WrZmodIso(const WittPolys& polys) : p(polys.p), r(polys.r) {
    pr = ipow_checked(p, static_cast<unsigned>(r));
    ZmodRing Z{p, p};
    WittOps<ZmodRing> W(Z, polys);
    std::vector<u64> acc = W.zero();
    std::vector<u64> one = W.teich(1 % p);
    for (u64 m = 0; m < pr; ++m) {
        reps_.push_back(acc);
        back_[acc] = m;
        acc = W.add(acc, one);
    }
    if (!(acc == W.zero())) throw InternalError("W_r(F_p) is not cyclic of order p^r?");
}

u64 WrZmodIso::to_zmod(const std::vector<u64>& comps) const {
    auto it = back_.find(comps);
    if (it == back_.end()) throw InternalError("vector not in the W_r(F_p) table");
    return it->second;
}

std::vector<u64> witt_trace_fp(const WittOps<FqField>& W, const std::vector<FqElem>& a) {
    const FqField& k = W.R;
    auto twist = [&](const std::vector<FqElem>& v) {
        std::vector<FqElem> w(v.size());
        for (size_t i = 0; i < v.size(); ++i) w[i] = k.frobenius(v[i]);
        return w;
    };
    std::vector<FqElem> acc = a, cur = a;
    for (int j = 1; j < k.f; ++j) {
        cur = twist(cur);
        acc = W.add(acc, cur);
    }
    std::vector<u64> out(a.size());
    for (size_t i = 0; i < acc.size(); ++i) {
        for (int c = 1; c < k.f; ++c)
            if (acc[i].c[c]) throw InternalError("Witt trace did not land over the prime field");
        out[i] = acc[i].c[0];
    }
    return out;
}

WittConstClasses::WittConstClasses(const FqField& k, const WittPolys& polys) : k_(k), W_(k, polys) {
    // Enumerate (F-1)(x) over all of W_r(F_q); q^r is desk scale.
    const int r = polys.r;
    u64 total = 1;
    for (int i = 0; i < r; ++i) {
        if (total > 200000 / k.q) throw DomainError("W_r(F_q) too large to tabulate");
        total *= k.q;
    }
    std::set<std::vector<FqElem>> img;
    std::vector<FqElem> x(static_cast<size_t>(r));
    for (u64 idx = 0; idx < total; ++idx) {
        u64 t = idx;
        for (int i = 0; i < r; ++i, t /= k.q) x[i] = k.element(t % k.q);
        img.insert(W_.sub(W_.F_charp(x), x));
    }
    image_.assign(img.begin(), img.end());
}

std::vector<FqElem> WittConstClasses::canon(const std::vector<FqElem>& a) const {
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
    std::vector<FqElem> best = a;
    for (const auto& d : image_) best = std::min(best, W_.add(a, d));
    memo_[a] = best;
    return best;
}

size_t WittConstClasses::class_count() const {
    u64 total = 1;
    for (int i = 0; i < W_.r; ++i) total *= k_.q;
    return total / image_.size();
}

// --- asw_reduce ------------------------------------------------------------

namespace {

FqSeries positive_part(const FqSeries& s) {
    FqSeries r;
    for (const auto& [i, c] : s.t)
        if (sig_positive(i)) r.t.emplace(i, c);
    return r;
}

bool find_pdiv_negative(const FqField& k, const FqSeries& s, int n, MIdx& out) {
    for (const auto& [i, c] : s.t) {
        (void)c;
        if (!sig_less(i, MIdx{})) continue;
        bool alldiv = true;
        for (int cc = 0; cc < n; ++cc)
            if (i.e[cc] % static_cast<int>(k.p) != 0) { alldiv = false; break; }
        if (alldiv) { out = i; return true; }
    }
    return false;
}

}  // namespace

ASWClass asw_reduce(const FqSeriesRing& SR, const WittOps<SeriesRing<FqField>>& W, const WittConstClasses& consts,
                    const std::vector<FqSeries>& w_in) {
    const FqField& k = SR.k;
    const int r = W.r;
    if (static_cast<int>(w_in.size()) != r) throw DomainError("Witt vector length does not match the level");
    std::vector<FqSeries> w = w_in;

    auto sub_F_minus_one = [&](const std::vector<FqSeries>& s) {
        // w <- w - (F-1)(s)
        w = W.sub(w, W.sub(W.F_charp(s), s));
    };

    // (i) Kill strictly positive parts, component by component. The vector x
    // carrying component j's positive part equals (F-1)(s) for the convergent
    // series s = -(x + F(x) + F^2(x) + ...), whose tail leaves the window, so
    // within the window w - x represents the same class.
    for (int j = 0; j < r; ++j) {
        FqSeries pos = positive_part(w[j]);
        if (pos.empty()) continue;
        std::vector<FqSeries> x = W.zero();
        x[j] = pos;
        w = W.sub(w, x);
        if (!positive_part(w[j]).empty()) throw InternalError("positive part survived elimination");
    }

    // (ii) Shift p-divisible negative directions down with
    // (F-1)(V^j [eta t^{i/p}]), component by component.
    auto fix_pdiv = [&]() {
        for (int j = 0; j < r; ++j) {
            MIdx i;
            int guard = 0;
            while (find_pdiv_negative(k, w[j], SR.n, i)) {
                MIdx ip = i;
                for (int cc = 0; cc < SR.n; ++cc) ip.e[cc] /= static_cast<int>(k.p);
                FqElem eta = k.pth_root(SR.coeff_at(w[j], i));
                std::vector<FqSeries> v = W.zero();
                v[j] = SR.monomial(ip, eta);
                sub_F_minus_one(v);
                if (++guard > 100000) throw InternalError("p-divisible elimination did not terminate");
            }
        }
    };
    fix_pdiv();

    // (iii) Normalize the constant (residue-field) part. Extracting the
    // constant term is a ring homomorphism on non-positively supported
    // series, so the subtraction clears every constant at once.
    std::vector<FqElem> c(static_cast<size_t>(r));
    for (int j = 0; j < r; ++j) c[j] = SR.coeff_at(w[j], MIdx{});
    std::vector<FqElem> cstar = consts.canon(c);
    if (!(cstar == c)) {
        auto iota = [&](const std::vector<FqElem>& v) {
            std::vector<FqSeries> s(static_cast<size_t>(r));
            for (int j = 0; j < r; ++j) s[j] = SR.constant(v[j]);
            return s;
        };
        w = W.sub(w, iota(c));
        fix_pdiv();
        w = W.add(w, iota(cstar));
        fix_pdiv();
    }

    for (int j = 0; j < r; ++j) {
        if (!positive_part(w[j]).empty()) throw InternalError("normal form has positive support");
        if (!(SR.coeff_at(w[j], MIdx{}) == cstar[j])) throw InternalError("normal form constant drifted");
    }
    return ASWClass{std::move(w), r};
}

}  // namespace hlf
