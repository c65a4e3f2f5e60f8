#include "hlf/peel.hpp"

namespace hlf {

int l_of(const MIdx& i, int n, u64 p) {
    for (int c = 0; c < n; ++c)
        if (i.e[c] % static_cast<int>(p) != 0) return c + 1;
    throw DomainError("index is p-divisible in every coordinate");
}

PeelTable unit_peel(const FqSeriesRing& SR, const FqSeries& u, int r_level) {
    const FqField& k = SR.k;
    if (r_level < 1) throw DomainError("peel level must be >= 1");
    if (u.t.empty() || !(SR.valuation(u) == MIdx{}) || !(SR.leading_coeff(u) == k.one()))
        throw DomainError("unit_peel requires a principal unit");
    const u64 pr = ipow_checked(k.p, static_cast<unsigned>(r_level));

    // The accumulated divisor D (a product of generators) is kept as an exact
    // polynomial; the residual u/D is evaluated on the window through the
    // exact inverse machinery, so greedy leading-term extraction never sees
    // truncation junk.
    PeelTable table;
    table.level = r_level;
    CoeffMap<FqField> divisor_m1;  // D - 1, significance-positive support

    std::vector<MIdx> needed;
    for (const auto& [j, cj] : u.t) {
        (void)cj;
        SR.for_each_window_index([&](const MIdx& i) { needed.push_back(midx_sub(i, j)); });
    }

    MIdx prev{};
    bool first = true;
    int guard = 0;
    for (;;) {
        auto z = SR.inverse_coeffs_at(divisor_m1, needed);
        // residual v = u * D^{-1} on the window, minus 1
        CoeffMap<FqField> resid;
        SR.for_each_window_index([&](const MIdx& i) {
            FqElem acc = k.zero();
            for (const auto& [j, cj] : u.t) {
                auto it = z.find(midx_sub(i, j));
                if (it != z.end()) acc = k.add(acc, k.mul(cj, it->second));
            }
            if (i == MIdx{}) acc = k.sub(acc, k.one());
            poly_accumulate(k, resid, i, acc);
        });
        if (resid.empty()) break;
        MIdx i = resid.begin()->first;
        FqElem c = resid.begin()->second;
        if (!sig_positive(i)) throw InternalError("peel residual is not a principal unit");
        if (!first && !sig_less(prev, i)) throw InternalError("peel leading index did not increase");
        prev = i;
        first = false;

        // i = p^kk * i' with p not dividing gcd(i'); the leading coefficient
        // is an exact p^kk-th power since Frobenius is bijective.
        int kk = 0;
        MIdx ip = i;
        auto all_div = [&](const MIdx& m) {
            for (int cc = 0; cc < SR.n; ++cc)
                if (m.e[cc] % static_cast<int>(k.p) != 0) return false;
            return true;
        };
        while (all_div(ip)) {
            for (int cc = 0; cc < SR.n; ++cc) ip.e[cc] /= static_cast<int>(k.p);
            ++kk;
        }
        FqElem eta = c;
        for (int t = 0; t < kk; ++t) eta = k.pth_root(eta);
        u64 pk = ipow_checked(k.p, static_cast<unsigned>(kk));

        for (int b = 0; b < k.f; ++b) {
            u64 cb = eta.c[b];
            if (!cb) continue;
            u64 expo = cb * pk;
            PeelKey key{b, ip};
            auto it = table.a.find(key);
            if (it == table.a.end()) {
                if (expo % pr) table.a.emplace(key, expo % pr);
            } else {
                it->second = (it->second + expo) % pr;
                if (!it->second) table.a.erase(it);
            }
            CoeffMap<FqField> gen = poly_one(k);
            poly_accumulate(k, gen, ip, k.basis_elem(b));
            CoeffMap<FqField> D = divisor_m1;
            poly_accumulate(k, D, MIdx{}, k.one());
            D = poly_mul(k, D, poly_pow(k, gen, expo));
            auto one_it = D.find(MIdx{});
            if (one_it == D.end() || !(one_it->second == k.one()))
                throw InternalError("divisor lost its unit normalization");
            D.erase(one_it);
            divisor_m1 = std::move(D);
        }
        if (++guard > 20000) throw InternalError("unit_peel did not terminate");
    }
    return table;
}

FqSeries rebuild_unit(const FqSeriesRing& SR, const PeelTable& table) {
    FqSeries acc = SR.one();
    for (const auto& [key, expo] : table.a) {
        FqSeries gen = SR.add(SR.one(), SR.monomial(key.i, SR.k.basis_elem(key.theta_idx)));
        acc = SR.mul(acc, SR.pow_int(gen, expo));
    }
    return acc;
}

}  // namespace hlf
