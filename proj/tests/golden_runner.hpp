#pragma once

// Golden-corpus runner shared by the CLI test and the acceptance suite.
//
// Corpus format: lines starting with "$ " hold CLI arguments; following lines
// up to a blank line are the expected combined stdout+stderr. A final
// expected line "!exit=<n>" asserts the exit code. Every command is run
// twice and with two worker counts; outputs must be byte-identical.

#include <string>

namespace hlf_test {

struct GoldenStats {
    int cases = 0;
    int failures = 0;
    std::string first_failure;
};

GoldenStats run_golden(const std::string& cli_path, const std::string& corpus_path, bool verbose);

}  // namespace hlf_test
