#pragma once

// Session configuration shared by the CLI and the check suites: the field,
// dimension, window, truncation level, and seed. Values come from flags or a
// key=value config file; flags win.

#include <memory>
#include <string>

#include "hlf/kdecomp.hpp"

namespace hlf {

struct SessionConfig {
    u64 p = 2;
    int f = 1;
    int n = 1;
    std::vector<u64> modulus;  // empty: use the built-in default for (p, f)
    int window_radius = 4;     // symmetric box; per-variable bounds via window_lo/hi
    std::vector<int> window_lo, window_hi;  // optional per-variable bounds
    int r = 1;
    u64 seed = 1;
    int threads = 1;

    void load_file(const std::string& path);  // key=value lines, '#' comments
    /// "4" (symmetric radius) or per-variable "lo:hi,lo:hi,...".
    void set_window(const std::string& text);
    void validate() const;
};

/// Owns the field, the series ring, and the decomposition context.
class Session {
public:
    SessionConfig cfg;
    FqField field;
    FqSeriesRing ring;
    std::unique_ptr<KClassContext> K;

    explicit Session(SessionConfig config);

    Window window() const;
};

}  // namespace hlf
