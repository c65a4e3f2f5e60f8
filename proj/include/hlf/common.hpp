#pragma once

#include <atomic>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlf {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Violated mathematical precondition (zero divisor, window too small, ...).
/// CLI maps this to exit code 2.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Expression syntax error. `offset` is the 1-based column of the offending
/// character. CLI maps this to exit code 3.
struct ParseError : std::runtime_error {
    int offset;
    ParseError(const std::string& msg, int off)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

/// Broken internal invariant; indicates a bug, not bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;  // a,b < m <= 2^63 so no overflow
    return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// p^e with overflow check; errors rather than wrapping.
inline u64 ipow_checked(u64 p, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / 4 / p) throw DomainError("modulus p^N does not fit in a machine word");
        r *= p;
    }
    return r;
}

inline bool is_prime_small(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Reduce a signed integer into [0, m).
inline u64 imod(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

/// Worker count for batch matrix assembly. Results are written by index, so
/// output is identical for every setting.
inline std::atomic<int>& worker_count() {
    static std::atomic<int> n{1};
    return n;
}

template <class Fn>
void parallel_for(size_t count, Fn&& fn) {
    int threads = worker_count().load();
    if (threads <= 1 || count < 8) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    size_t chunk = (count + static_cast<size_t>(threads) - 1) / static_cast<size_t>(threads);
    std::vector<std::future<void>> futs;
    for (size_t start = 0; start < count; start += chunk) {
        size_t end = std::min(count, start + chunk);
        futs.push_back(std::async(std::launch::async, [&fn, start, end] {
            for (size_t i = start; i < end; ++i) fn(i);
        }));
    }
    for (auto& f : futs) f.get();
}

}  // namespace hlf
