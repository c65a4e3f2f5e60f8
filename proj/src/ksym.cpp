#include "hlf/ksym.hpp"

#include <algorithm>

namespace hlf {

bool series_less(const FqSeries& a, const FqSeries& b) {
    return std::lexicographical_compare(
        a.t.begin(), a.t.end(), b.t.begin(), b.t.end(), [](const auto& x, const auto& y) {
            if (!(x.first == y.first)) return sig_less(x.first, y.first);
            return x.second < y.second;
        });
}

namespace {

bool term_entries_less(const SymTerm& a, const SymTerm& b) {
    return std::lexicographical_compare(a.ents.begin(), a.ents.end(), b.ents.begin(), b.ents.end(),
                                        [](const FqSeries& x, const FqSeries& y) { return series_less(x, y); });
}

bool term_entries_equal(const SymTerm& a, const SymTerm& b) {
    if (a.ents.size() != b.ents.size()) return false;
    for (size_t i = 0; i < a.ents.size(); ++i)
        if (!(a.ents[i].t == b.ents[i].t)) return false;
    return true;
}

}  // namespace

SymbolSum sym_make(const FqSeriesRing& SR, std::vector<FqSeries> entries) {
    for (const auto& e : entries)
        if (SR.is_zero(e)) throw DomainError("symbol entry is zero");
    SymbolSum s;
    s.deg = static_cast<int>(entries.size());
    s.terms.push_back(SymTerm{1, std::move(entries)});
    return s;
}

SymbolSum sym_add(const SymbolSum& a, const SymbolSum& b) {
    if (!a.terms.empty() && !b.terms.empty() && a.deg != b.deg)
        throw DomainError("adding symbols of different degree");
    SymbolSum r;
    r.deg = a.terms.empty() ? b.deg : a.deg;
    r.terms = a.terms;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return r;
}

SymbolSum sym_scale(i64 s, const SymbolSum& a) {
    SymbolSum r;
    r.deg = a.deg;
    if (s == 0) return r;
    r.terms = a.terms;
    for (auto& t : r.terms) t.coef *= s;
    return r;
}

SymbolSum sym_normalize(const FqSeriesRing& SR, const SymbolSum& a) {
    SymbolSum r;
    r.deg = a.deg;
    std::vector<SymTerm> ts;
    for (const auto& t : a.terms) {
        if (t.coef == 0) continue;
        bool trivial = false;
        for (const auto& e : t.ents)
            if (e.t == SR.one().t) trivial = true;  // {1, ...} is the zero class
        if (!trivial) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end(), term_entries_less);
    for (auto& t : ts) {
        if (!r.terms.empty() && term_entries_equal(r.terms.back(), t))
            r.terms.back().coef += t.coef;
        else
            r.terms.push_back(t);
    }
    std::erase_if(r.terms, [](const SymTerm& t) { return t.coef == 0; });
    return r;
}

FqSeriesRing residue_ring(const FqSeriesRing& SR) {
    if (SR.n < 1) throw InternalError("no residue ring below dimension 0");
    Window w = SR.win;
    w.n = SR.n - 1;
    w.lo[SR.n - 1] = w.hi[SR.n - 1] = 0;
    return FqSeriesRing(SR.k, SR.n - 1, w);
}

namespace {

struct MTerm {
    i64 coef;
    std::vector<FqSeries> ents;  // placeholder one() at marked slots
    u64 marks;                   // bit k set: slot k holds t_n
};

// Emits the normalized boundary terms of a marked term into `out`
// (parameter-last sign convention; the caller flips for parameter-first).
void emit(const FqSeriesRing& cur, const FqSeriesRing& sub, MTerm t, SymbolSum& out) {
    int m = static_cast<int>(t.ents.size());
    int nmarks = __builtin_popcountll(t.marks);
    if (nmarks == 0) return;  // a term of units maps to 0
    if (nmarks == 1) {
        int k = __builtin_ctzll(t.marks);
        i64 sign = ((m - 1 - k) % 2) ? -1 : 1;
        SymTerm res;
        res.coef = t.coef * sign;
        for (int s = 0; s < m; ++s) {
            if (s == k) continue;
            FqSeries red = reduce_outer(cur, sub, t.ents[s]);
            if (red.t.empty()) throw InternalError("unit entry reduced to zero");
            if (red.t == sub.one().t) return;  // {1, ...} dies
            res.ents.push_back(std::move(red));
        }
        out.terms.push_back(std::move(res));
        return;
    }
    // Two or more t_n slots: bring the second mark next to the first
    // (antisymmetry sign), then rewrite {t_n, t_n} -> {-1, t_n}.
    u64 mk = t.marks;
    int k1 = __builtin_ctzll(mk);
    mk &= mk - 1;
    int k2 = __builtin_ctzll(mk);
    i64 sign = ((k2 - k1 - 1) % 2) ? -1 : 1;
    MTerm nt;
    nt.coef = t.coef * sign;
    nt.ents = t.ents;
    nt.ents.erase(nt.ents.begin() + k2);
    nt.ents.insert(nt.ents.begin() + k1, cur.from_int(-1));
    u64 high = t.marks >> (k2 + 1);  // marks above k2 keep their positions
    nt.marks = (1ull << (k1 + 1)) | (high << (k2 + 1));
    if (cur.k.p == 2) {
        // -1 = 1: the inserted entry is the unit 1, so the term vanishes.
        return;
    }
    emit(cur, sub, std::move(nt), out);
}

SymbolSum boundary_core(const FqSeriesRing& SR, const FqSeriesRing& sub, const SymbolSum& a, bool param_first) {
    if (a.deg < 1) throw DomainError("boundary needs degree >= 1");
    if (SR.n < 1) throw DomainError("boundary needs at least one variable");

    // Working ring with room for the unit parts x * t_n^{-a}.
    Window w = SR.win;
    w.lo[SR.n - 1] = 0;
    w.hi[SR.n - 1] = SR.win.hi[SR.n - 1] - SR.win.lo[SR.n - 1];
    FqSeriesRing work(SR.k, SR.n, w);

    SymbolSum out;
    out.deg = a.deg - 1;
    i64 flip = (param_first && a.deg % 2 == 0) ? -1 : 1;  // (-1)^{m-1}

    for (const auto& term : a.terms) {
        if (static_cast<int>(term.ents.size()) != a.deg) throw InternalError("term degree mismatch");
        std::vector<i64> tnval(term.ents.size());
        std::vector<FqSeries> unit(term.ents.size());
        for (size_t s = 0; s < term.ents.size(); ++s) {
            if (term.ents[s].t.empty()) throw DomainError("symbol entry is zero");
            MIdx v = SR.valuation(term.ents[s]);
            tnval[s] = v.e[SR.n - 1];
            MIdx shift{};
            shift.e[SR.n - 1] = -static_cast<int>(tnval[s]);
            FqSeries u = work.shift(term.ents[s], shift);
            if (!u.exact && term.ents[s].exact) throw InternalError("unit part left the working window");
            unit[s] = std::move(u);
        }
        // Multilinear expansion over which slots contribute their t_n part.
        int m = a.deg;
        for (u64 S = 1; S < (1ull << m); ++S) {
            i64 coef = term.coef * flip;
            bool dead = false;
            for (int s = 0; s < m; ++s)
                if (S >> s & 1) {
                    if (tnval[s] == 0) { dead = true; break; }
                    coef *= tnval[s];
                }
            if (dead || coef == 0) continue;
            MTerm mt;
            mt.coef = coef;
            mt.marks = S;
            mt.ents.resize(static_cast<size_t>(m));
            for (int s = 0; s < m; ++s) mt.ents[s] = (S >> s & 1) ? work.one() : unit[s];
            emit(work, sub, std::move(mt), out);
        }
    }
    return sym_normalize(sub, out);
}

}  // namespace

SymbolSum boundary(const FqSeriesRing& SR, const FqSeriesRing& sub, const SymbolSum& a) {
    return boundary_core(SR, sub, a, true);
}

SymbolSum tame_boundary(const FqSeriesRing& SR, const FqSeriesRing& sub, const SymbolSum& a) {
    return boundary_core(SR, sub, a, false);
}

i64 val_map(const FqSeriesRing& SR, const SymbolSum& a) {
    if (a.deg != SR.n) throw DomainError("valuation map needs degree n");
    std::vector<FqSeriesRing> chain{SR};
    for (int d = SR.n; d >= 1; --d) chain.push_back(residue_ring(chain.back()));
    SymbolSum cur = a;
    for (int d = 0; d < SR.n; ++d) cur = boundary(chain[d], chain[d + 1], cur);
    i64 v = 0;
    for (const auto& t : cur.terms) v += t.coef;
    return v;
}

FqElem tame_full(const FqSeriesRing& SR, const SymbolSum& a) {
    if (a.deg != SR.n + 1) throw DomainError("iterated tame symbol needs degree n+1");
    std::vector<FqSeriesRing> chain{SR};
    for (int d = SR.n; d >= 1; --d) chain.push_back(residue_ring(chain.back()));
    SymbolSum cur = a;
    for (int d = 0; d < SR.n; ++d) cur = tame_boundary(chain[d], chain[d + 1], cur);
    // Degree-1 symbols over F_q: multiply out coef-fold powers.
    const FqField& k = SR.k;
    FqElem acc = k.one();
    for (const auto& t : cur.terms) {
        if (t.ents.size() != 1) throw InternalError("tame chain did not reach degree 1");
        FqElem c = t.ents[0].t.empty() ? k.zero() : t.ents[0].t.begin()->second;
        if (k.is_zero(c)) throw InternalError("tame value has a zero entry");
        acc = k.mul(acc, k.pow(c, t.coef));
    }
    return acc;
}

SymbolSum param_symbol(const FqSeriesRing& SR) {
    std::vector<FqSeries> ents;
    for (int v = SR.n; v >= 1; --v) {
        MIdx i{};
        i.e[v - 1] = 1;
        ents.push_back(SR.monomial(i, SR.k.one()));
    }
    return sym_make(SR, std::move(ents));
}

std::vector<u64> tame_components(const FqSeriesRing& SR, const SymbolSum& a) {
    if (a.deg != SR.n) throw DomainError("tame components need degree n");
    const FqField& k = SR.k;
    const u64 ord = k.q - 1;
    std::vector<u64> out(static_cast<size_t>(SR.n), 0);
    if (ord == 1) return out;
    i64 vz = val_map(SR, a);
    SymbolSum params = param_symbol(SR);
    for (int i = 1; i <= SR.n; ++i) {
        MIdx ti{};
        ti.e[i - 1] = 1;
        FqSeries tser = SR.monomial(ti, k.one());
        auto adjoin = [&](const SymbolSum& s) {
            SymbolSum r;
            r.deg = s.deg + 1;
            for (const auto& t : s.terms) {
                SymTerm nt = t;
                nt.ents.push_back(tser);
                r.terms.push_back(std::move(nt));
            }
            return r;
        };
        FqElem raw = tame_full(SR, adjoin(a));
        // Contamination of the Z-summand: tame_full(({t_n..t_1} adjoined t_i))
        // is a sign, removed via the valuation coordinate.
        FqElem ci = tame_full(SR, adjoin(params));
        u64 d = k.dlog(k.mul(raw, k.pow(ci, -vz)));
        // Undo the reorder of t_i from the last slot to slot i+1.
        if ((SR.n - i) % 2) d = (ord - d) % ord;
        out[static_cast<size_t>(i - 1)] = d;
    }
    return out;
}

SymbolSum tame_gen_symbol(const FqSeriesRing& SR, const FqElem& theta, int i) {
    if (SR.k.is_zero(theta)) throw DomainError("tame generator needs a nonzero constant");
    std::vector<FqSeries> ents{SR.constant(theta)};
    for (int v = 1; v <= SR.n; ++v) {
        if (v == i) continue;
        MIdx ix{};
        ix.e[v - 1] = 1;
        ents.push_back(SR.monomial(ix, SR.k.one()));
    }
    return sym_make(SR, std::move(ents));
}

SymbolSum vk_gen_symbol(const FqSeriesRing& SR, const FqSeries& unit, const MIdx& i) {
    int l = l_of(i, SR.n, SR.k.p);
    std::vector<FqSeries> ents{unit};
    for (int v = 1; v <= SR.n; ++v) {
        if (v == l) continue;
        MIdx ix{};
        ix.e[v - 1] = 1;
        ents.push_back(SR.monomial(ix, SR.k.one()));
    }
    return sym_make(SR, std::move(ents));
}

SymbolSum h_map(const FqSeriesRing& SR, const std::vector<std::pair<std::vector<int>, FqSeries>>& eps, int m,
                int r_level) {
    SymbolSum out;
    out.deg = m;
    for (const auto& [J, e] : eps) {
        if (static_cast<int>(J.size()) != m - 1) throw DomainError("index set J must have m-1 elements");
        for (int j : J)
            if (j < 1 || j > SR.n) throw DomainError("index set J out of range");
        PeelTable t = unit_peel(SR, e, r_level);
        for (const auto& [key, expo] : t.a) {
            (void)expo;
            int l = l_of(key.i, SR.n, SR.k.p);
            if (std::find(J.begin(), J.end(), l) != J.end())
                throw DomainError("unit is not in E_J: peel support routes into J");
        }
        if (e.t == SR.one().t) continue;
        std::vector<FqSeries> ents{e};
        for (int j : J) {
            MIdx ix{};
            ix.e[j - 1] = 1;
            ents.push_back(SR.monomial(ix, SR.k.one()));
        }
        out = sym_add(out, sym_make(SR, std::move(ents)));
    }
    return sym_normalize(SR, out);
}

}  // namespace hlf
