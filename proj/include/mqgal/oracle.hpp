#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mqgal/galois.hpp"
#include "mqgal/patterns.hpp"

namespace mqgal {

constexpr std::int64_t kMaxScanLimit = 100'000'000;

/// Prime-by-prime check of the predicted density of a residue pattern over
/// the window (N, 2N]. Admissible primes are the odd ones coprime to d and
/// to every a_i; excluded_count tallies the rest of the window.
struct EmpiricalReport {
    std::string instance;
    std::int64_t range_start = 0;  // scans primes in (range_start, range_end]
    std::int64_t range_end = 0;
    std::int64_t f = 1;
    std::int64_t d = 1;
    std::string theta;
    std::int64_t admissible_count = 0;
    std::int64_t excluded_count = 0;
    std::int64_t matching_count = 0;  // admissible primes realizing (f, theta)
    double expected_count = 0;        // density * admissible_count
    double log_weighted_sum = 0;      // sum of log p over matching primes
    double theory_main_term = 0;      // C * N / (2^n phi(d))
    double relative_error = 0;        // |sum - theory| / max(theory, 1)
    double tolerance = 0;
    bool pass = false;
    std::int64_t constant_C = 0;
};

/// Compares the log-weighted count of primes in (N, 2N] realizing
/// (sp, rc) against the predicted main term. N is capped at kMaxScanLimit.
/// The production scan is chunked across threads with partial sums folded
/// in chunk order, so results are reproducible run to run; the serial
/// variant recomputes everything sequentially.
EmpiricalReport empirical_pattern_sum(const ProblemInstance& inst, const SignPattern& sp,
                                      const ResidueClass& rc, std::int64_t n_start,
                                      double tolerance = 0.10);
EmpiricalReport empirical_pattern_sum_serial(const ProblemInstance& inst, const SignPattern& sp,
                                             const ResidueClass& rc, std::int64_t n_start,
                                             double tolerance = 0.10);

/// Frobenius class counts over all admissible primes up to limit, indexed
/// like group.elements().
struct FrobeniusHistogram {
    GaloisGroup group;
    std::vector<std::int64_t> counts;
    std::int64_t limit = 0;
    std::int64_t admissible_count = 0;
    std::int64_t excluded_count = 0;
};

FrobeniusHistogram chebotarev_histogram(const ProblemInstance& inst, std::int64_t limit);
FrobeniusHistogram chebotarev_histogram_serial(const ProblemInstance& inst, std::int64_t limit);

/// Field degree read off prime counts alone: the identity Frobenius class
/// has density 1 / degree among admissible primes. Needs no group
/// enumeration, so it works far beyond the enumeration budget. Raises
/// InsufficientPrimesError when no identity prime shows up.
struct DegreeEstimate {
    std::int64_t limit = 0;
    std::int64_t admissible_count = 0;
    std::int64_t identity_count = 0;
    double estimate = 0;
};

DegreeEstimate degree_estimate(const ProblemInstance& inst, std::int64_t limit);
DegreeEstimate degree_estimate_serial(const ProblemInstance& inst, std::int64_t limit);

}  // namespace mqgal
