#pragma once

// Deterministic generator helpers for property suites and tests. Bounded
// draws use plain modulo so the stream is identical across platforms.

#include <random>

#include "hlf/peel.hpp"
#include "hlf/series.hpp"

namespace hlf {

class Rng {
public:
    explicit Rng(u64 seed) : eng_(seed) {}

    u64 next() { return eng_(); }
    u64 below(u64 bound) { return bound ? eng_() % bound : 0; }
    i64 range(i64 lo, i64 hi) { return lo + static_cast<i64>(below(static_cast<u64>(hi - lo + 1))); }
    bool chance(u64 num, u64 den) { return below(den) < num; }

    FqElem fq(const FqField& k) { return k.element(below(k.q)); }
    FqElem fq_nonzero(const FqField& k) { return k.element(1 + below(k.q - 1)); }

    MIdx idx_in(const Window& w) {
        MIdx i;
        for (int c = 0; c < w.n; ++c) i.e[c] = static_cast<int>(range(w.lo[c], w.hi[c]));
        return i;
    }

    /// Random index in the box, significance-positive.
    MIdx idx_positive(const Window& w) {
        for (;;) {
            MIdx i = idx_in(w);
            if (sig_positive(i)) return i;
        }
    }

    /// Significance-positive with p not dividing gcd of the coordinates.
    MIdx idx_positive_nonpdiv(const Window& w, u64 p) {
        for (;;) {
            MIdx i = idx_positive(w);
            bool ok = false;
            for (int c = 0; c < w.n; ++c)
                if (i.e[c] % static_cast<int>(p) != 0) ok = true;
            if (ok) return i;
        }
    }

    /// Sparse series with `terms` random terms inside `box` (may be zero).
    FqSeries series_in(const FqSeriesRing& SR, const Window& box, int terms) {
        FqSeries s;
        for (int t = 0; t < terms; ++t) SR.accumulate(s, idx_in(box), fq(SR.k));
        return s;
    }

    FqSeries series_nonzero(const FqSeriesRing& SR, const Window& box, int terms) {
        for (;;) {
            FqSeries s = series_in(SR, box, terms);
            if (!s.t.empty()) return s;
        }
    }

    /// Principal unit 1 + (positive terms in box).
    FqSeries principal_unit(const FqSeriesRing& SR, const Window& box, int terms) {
        FqSeries s = SR.one();
        for (int t = 0; t < terms; ++t) SR.accumulate(s, idx_positive(box), fq(SR.k));
        return s;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace hlf
