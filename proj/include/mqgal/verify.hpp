#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mqgal {

/// Bounds for the verification suite. Defaults match the documented
/// acceptance thresholds; the CLI lets callers tighten or relax them.
struct VerifyOptions {
    std::int64_t frobenius_bound = 100'000;   // exact membership scan
    std::int64_t coverage_bound = 1'000'000;  // histogram coverage and uniformity
    std::int64_t estimate_bound = 1'000'000;  // degree estimator bound
    std::int64_t window_start = 1'000'000;    // main-term window (N, 2N]
    double tolerance = 0.10;
    int random_instances = 50;
    std::uint64_t seed = 12345;
    std::ostream* progress = nullptr;  // per-check lines, e.g. stderr
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// Runs the seven verification checks in order. Exceptions inside a check
/// fail that check (with the message as detail) instead of aborting the
/// suite.
std::vector<CheckResult> run_acceptance(const VerifyOptions& opts = {});

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace mqgal
