#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mqgal/oracle.hpp"
#include "oracle_refs.hpp"

using namespace mqgal;

TEST_CASE("window tally over (10, 20] by hand") {
    // Primes 11, 13, 17, 19; none excluded for S=(2,3), d=5.
    ProblemInstance inst({2, 3}, 5);

    EmpiricalReport hit =
        empirical_pattern_sum(inst, SignPattern::from_signs({-1, 1}), ResidueClass(1, 5), 10);
    CHECK(hit.range_start == 10);
    CHECK(hit.range_end == 20);
    CHECK(hit.admissible_count == 4);
    CHECK(hit.excluded_count == 0);
    CHECK(hit.matching_count == 1);  // only p=11: 11 = 1 mod 5, (2/11) = -1, (3/11) = +1
    CHECK(hit.log_weighted_sum == doctest::Approx(std::log(11.0)));
    CHECK(hit.constant_C == 1);
    CHECK(hit.theory_main_term == doctest::Approx(10.0 / 16.0));

    EmpiricalReport miss =
        empirical_pattern_sum(inst, SignPattern::all_plus(2), ResidueClass(1, 5), 10);
    CHECK(miss.matching_count == 0);
    CHECK(miss.log_weighted_sum == 0.0);

    EmpiricalReport p13 =
        empirical_pattern_sum(inst, SignPattern::from_signs({-1, 1}), ResidueClass(3, 5), 10);
    CHECK(p13.matching_count == 1);
    CHECK(p13.log_weighted_sum == doctest::Approx(std::log(13.0)));
}

TEST_CASE("excluded primes are tallied, not dropped") {
    {
        // window (2, 4] holds only p=3, which divides a_2
        ProblemInstance inst({2, 3}, 5);
        EmpiricalReport r =
            empirical_pattern_sum(inst, SignPattern::all_plus(2), ResidueClass(1, 5), 2);
        CHECK(r.admissible_count == 0);
        CHECK(r.excluded_count == 1);
    }
    {
        // window (15, 30] holds 17, 19, 23, 29; p=29 divides d
        ProblemInstance inst({2, 3}, 29);
        EmpiricalReport r =
            empirical_pattern_sum(inst, SignPattern::all_plus(2), ResidueClass(1, 29), 15);
        CHECK(r.admissible_count == 3);
        CHECK(r.excluded_count == 1);
    }
}

TEST_CASE("infeasible class matches exactly zero primes") {
    ProblemInstance inst({5}, 5);
    EmpiricalReport r =
        empirical_pattern_sum(inst, SignPattern::all_minus(1), ResidueClass(1, 5), 100'000);
    CHECK(r.constant_C == 0);
    CHECK(r.matching_count == 0);
    CHECK(r.log_weighted_sum == 0.0);
    CHECK(r.theory_main_term == 0.0);
    CHECK(r.relative_error == 0.0);
    CHECK(r.pass);
}

TEST_CASE("feasible class at a serious window stays within tolerance") {
    ProblemInstance inst({2, 3}, 8);
    EmpiricalReport r =
        empirical_pattern_sum(inst, SignPattern::all_plus(2), ResidueClass(1, 8), 1'000'000);
    CHECK(r.constant_C == 2);
    CHECK(r.pass);
    CHECK(r.relative_error < 0.10);
    CHECK(r.matching_count > 0);
    // conservation: every prime in the window is admissible or excluded
    std::int64_t total = static_cast<std::int64_t>(sieve(1'000'000, 2'000'000).primes.size());
    CHECK(r.admissible_count + r.excluded_count == total);
}

TEST_CASE("parallel and serial scans agree") {
    ProblemInstance inst({2, 3}, 8);
    for (std::int64_t n : {10, 1'000, 100'000}) {
        EmpiricalReport a =
            empirical_pattern_sum(inst, SignPattern::all_plus(2), ResidueClass(1, 8), n);
        EmpiricalReport b =
            empirical_pattern_sum_serial(inst, SignPattern::all_plus(2), ResidueClass(1, 8), n);
        CHECK(a.admissible_count == b.admissible_count);
        CHECK(a.excluded_count == b.excluded_count);
        CHECK(a.matching_count == b.matching_count);
        CHECK(a.log_weighted_sum == doctest::Approx(b.log_weighted_sum).epsilon(1e-12));
    }
}

TEST_CASE("scan bounds are validated") {
    ProblemInstance inst({2, 3}, 8);
    SignPattern sp = SignPattern::all_plus(2);
    CHECK_THROWS_AS(empirical_pattern_sum(inst, sp, ResidueClass(1, 8), 0), DomainError);
    CHECK_THROWS_AS(empirical_pattern_sum(inst, sp, ResidueClass(1, 8), 200'000'000),
                    CapacityError);
    CHECK_THROWS_AS(chebotarev_histogram(inst, 0), DomainError);
    CHECK_THROWS_AS(chebotarev_histogram(inst, 200'000'000), CapacityError);
    CHECK_THROWS_AS(degree_estimate(inst, 200'000'000), CapacityError);
}

TEST_CASE("frobenius histogram covers the group uniformly") {
    {
        ProblemInstance inst({2, 3}, 8);
        FrobeniusHistogram h = chebotarev_histogram(inst, 1'000'000);
        REQUIRE(h.counts.size() == 8);
        std::int64_t total = std::accumulate(h.counts.begin(), h.counts.end(), std::int64_t{0});
        CHECK(total == h.admissible_count);
        double ideal = static_cast<double>(h.admissible_count) / 8.0;
        for (std::int64_t c : h.counts) {
            CHECK(c > 0);
            CHECK(std::abs(c - ideal) / ideal < 0.10);
        }
    }
    {
        ProblemInstance inst({5}, 5);
        FrobeniusHistogram h = chebotarev_histogram(inst, 1'000'000);
        REQUIRE(h.counts.size() == 4);
        double ideal = static_cast<double>(h.admissible_count) / 4.0;
        for (std::int64_t c : h.counts) CHECK(std::abs(c - ideal) / ideal < 0.10);
    }
}

TEST_CASE("histogram parallel and serial agree exactly on counts") {
    for (const auto& [els, d] : std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>{
             {{2, 3}, 8}, {{5}, 5}, {{6, 10, 15}, 12}}) {
        ProblemInstance inst(els, d);
        FrobeniusHistogram a = chebotarev_histogram(inst, 200'000);
        FrobeniusHistogram b = chebotarev_histogram_serial(inst, 200'000);
        CHECK(a.counts == b.counts);
        CHECK(a.admissible_count == b.admissible_count);
        CHECK(a.excluded_count == b.excluded_count);
    }
}

TEST_CASE("degree estimator pinned instance and monotone refinement") {
    ProblemInstance inst({2, 3}, 24);
    DegreeEstimate e4 = degree_estimate(inst, 10'000);
    DegreeEstimate e5 = degree_estimate(inst, 100'000);
    DegreeEstimate e6 = degree_estimate(inst, 1'000'000);
    CHECK(std::abs(e6.estimate - 8.0) / 8.0 < 0.10);
    double err4 = std::abs(e4.estimate - 8.0);
    double err5 = std::abs(e5.estimate - 8.0);
    double err6 = std::abs(e6.estimate - 8.0);
    int improving = (err4 >= err5 ? 1 : 0) + (err5 >= err6 ? 1 : 0) + (err4 >= err6 ? 1 : 0);
    CHECK(improving >= 2);
    CHECK(e6.identity_count > 0);
    CHECK(e6.admissible_count > e5.admissible_count);

    DegreeEstimate serial = degree_estimate_serial(inst, 100'000);
    CHECK(serial.identity_count == e5.identity_count);
    CHECK(serial.admissible_count == e5.admissible_count);
}

TEST_CASE("estimator reports starvation instead of guessing") {
    ProblemInstance inst({2, 3}, 997);
    CHECK_THROWS_AS(degree_estimate(inst, 100), InsufficientPrimesError);
}
