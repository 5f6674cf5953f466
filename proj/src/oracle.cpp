#include "mqgal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace mqgal {

namespace {

void check_scan_limit(std::int64_t limit) {
    if (limit < 1) throw DomainError("scan bound must be positive, got " + std::to_string(limit));
    if (limit > kMaxScanLimit)
        throw CapacityError("scan bound " + std::to_string(limit) + " exceeds " +
                            std::to_string(kMaxScanLimit));
}

// Odd p coprime to d and to every element.
bool admissible(const ProblemInstance& inst, std::int64_t p) {
    if (p < 3) return false;
    if (inst.d() % p == 0) return false;
    for (int i = 0; i < inst.n(); ++i)
        if (inst.elements()[static_cast<std::size_t>(i)] % p == 0) return false;
    return true;
}

bool matches(const ProblemInstance& inst, const SignPattern& sp, const ResidueClass& rc,
             std::int64_t p) {
    std::int64_t f = mod_floor(p, rc.d);
    if (f == 0) f = rc.d;
    if (f != rc.f) return false;
    for (int i = 0; i < inst.n(); ++i)
        if (kronecker(inst.element_sqf(i), p) != sp.sign(i)) return false;
    return true;
}

bool is_identity_frobenius(const ProblemInstance& inst, std::int64_t p) {
    if (mod_floor(p, inst.d()) != mod_floor(1, inst.d())) return false;
    for (int i = 0; i < inst.n(); ++i)
        if (kronecker(inst.element_sqf(i), p) != 1) return false;
    return true;
}

EmpiricalReport start_report(const ProblemInstance& inst, const SignPattern& sp,
                             const ResidueClass& rc, std::int64_t n_start, double tolerance,
                             const DensityResult& dens) {
    EmpiricalReport rep;
    rep.instance = inst.describe();
    rep.range_start = n_start;
    rep.range_end = 2 * n_start;
    rep.f = rc.f;
    rep.d = rc.d;
    rep.theta = to_string(sp);
    rep.tolerance = tolerance;
    rep.constant_C = dens.constant_C;
    rep.theory_main_term = static_cast<double>(dens.constant_C) * static_cast<double>(n_start) /
                           (std::ldexp(1.0, inst.n()) * static_cast<double>(euler_phi(rc.d)));
    return rep;
}

void seal_report(EmpiricalReport& rep, const DensityResult& dens) {
    if (dens.density_num > 0)
        rep.expected_count = static_cast<double>(rep.admissible_count) *
                             static_cast<double>(dens.density_num) /
                             static_cast<double>(dens.density_den);
    rep.relative_error = std::abs(rep.log_weighted_sum - rep.theory_main_term) /
                         std::max(rep.theory_main_term, 1.0);
    rep.pass = rep.relative_error <= rep.tolerance;
}

}  // namespace

EmpiricalReport empirical_pattern_sum(const ProblemInstance& inst, const SignPattern& sp,
                                      const ResidueClass& rc, std::int64_t n_start,
                                      double tolerance) {
    check_scan_limit(n_start);
    DensityResult dens = main_term_constant(inst, sp, rc);
    EmpiricalReport rep = start_report(inst, sp, rc, n_start, tolerance, dens);

    PrimeRange pr = sieve(n_start, 2 * n_start);
    const std::vector<std::int64_t>& ps = pr.primes;

    struct Partial {
        std::int64_t admissible = 0;
        std::int64_t excluded = 0;
        std::int64_t matching = 0;
        double logsum = 0;
    };
    const std::int64_t chunk = std::int64_t{1} << 16;
    const std::int64_t total = static_cast<std::int64_t>(ps.size());
    const std::int64_t nchunks = std::max<std::int64_t>(1, (total + chunk - 1) / chunk);
    std::vector<Partial> parts(static_cast<std::size_t>(nchunks));

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        Partial& part = parts[static_cast<std::size_t>(c)];
        const std::int64_t hi = std::min(total, (c + 1) * chunk);
        for (std::int64_t i = c * chunk; i < hi; ++i) {
            std::int64_t p = ps[static_cast<std::size_t>(i)];
            if (!admissible(inst, p)) {
                ++part.excluded;
                continue;
            }
            ++part.admissible;
            if (matches(inst, sp, rc, p)) {
                ++part.matching;
                part.logsum += std::log(static_cast<double>(p));
            }
        }
    }

    // Fold in chunk order so the floating sum is reproducible.
    for (const Partial& part : parts) {
        rep.admissible_count += part.admissible;
        rep.excluded_count += part.excluded;
        rep.matching_count += part.matching;
        rep.log_weighted_sum += part.logsum;
    }
    seal_report(rep, dens);
    return rep;
}

EmpiricalReport empirical_pattern_sum_serial(const ProblemInstance& inst, const SignPattern& sp,
                                             const ResidueClass& rc, std::int64_t n_start,
                                             double tolerance) {
    check_scan_limit(n_start);
    DensityResult dens = main_term_constant(inst, sp, rc);
    EmpiricalReport rep = start_report(inst, sp, rc, n_start, tolerance, dens);

    PrimeRange pr = sieve_serial(n_start, 2 * n_start);
    for (std::int64_t p : pr.primes) {
        if (!admissible(inst, p)) {
            ++rep.excluded_count;
            continue;
        }
        ++rep.admissible_count;
        if (matches(inst, sp, rc, p)) {
            ++rep.matching_count;
            rep.log_weighted_sum += std::log(static_cast<double>(p));
        }
    }
    seal_report(rep, dens);
    return rep;
}

FrobeniusHistogram chebotarev_histogram(const ProblemInstance& inst, std::int64_t limit) {
    check_scan_limit(limit);
    FrobeniusHistogram h{build_group(inst), {}, limit, 0, 0};
    h.counts.assign(static_cast<std::size_t>(h.group.order()), 0);
    FrobeniusMap frob(inst);

    PrimeRange pr = sieve(1, limit);
    const std::vector<std::int64_t>& ps = pr.primes;
    std::int64_t adm = 0;
    std::int64_t exc = 0;
    std::exception_ptr err = nullptr;

#pragma omp parallel for schedule(static) reduction(+ : adm, exc)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(ps.size()); ++i) {
        std::int64_t p = ps[static_cast<std::size_t>(i)];
        if (!admissible(inst, p)) {
            ++exc;
            continue;
        }
        ++adm;
        try {
            std::ptrdiff_t idx = h.group.index_of(frob(p));
            if (idx < 0)
                throw ConsistencyError("Frobenius image at p=" + std::to_string(p) +
                                       " missing from the group");
            // Histogram cells take integer increments only, so the final
            // counts do not depend on thread interleaving.
#pragma omp atomic
            ++h.counts[static_cast<std::size_t>(idx)];
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    h.admissible_count = adm;
    h.excluded_count = exc;
    return h;
}

FrobeniusHistogram chebotarev_histogram_serial(const ProblemInstance& inst, std::int64_t limit) {
    check_scan_limit(limit);
    FrobeniusHistogram h{build_group(inst), {}, limit, 0, 0};
    h.counts.assign(static_cast<std::size_t>(h.group.order()), 0);

    PrimeRange pr = sieve_serial(1, limit);
    for (std::int64_t p : pr.primes) {
        if (!admissible(inst, p)) {
            ++h.excluded_count;
            continue;
        }
        ++h.admissible_count;
        std::int64_t f = mod_floor(p, inst.d());
        if (f == 0) f = inst.d();
        std::uint32_t neg = 0;
        for (int i = 0; i < inst.n(); ++i)
            if (kronecker(inst.element_sqf(i), p) < 0) neg |= std::uint32_t{1} << i;
        std::ptrdiff_t idx = h.group.index_of({f, SignPattern(inst.n(), neg), inst.d()});
        if (idx < 0)
            throw ConsistencyError("Frobenius image at p=" + std::to_string(p) +
                                   " missing from the group");
        ++h.counts[static_cast<std::size_t>(idx)];
    }
    return h;
}

DegreeEstimate degree_estimate(const ProblemInstance& inst, std::int64_t limit) {
    check_scan_limit(limit);
    PrimeRange pr = sieve(1, limit);
    const std::vector<std::int64_t>& ps = pr.primes;
    std::int64_t adm = 0;
    std::int64_t idc = 0;

#pragma omp parallel for schedule(static) reduction(+ : adm, idc)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(ps.size()); ++i) {
        std::int64_t p = ps[static_cast<std::size_t>(i)];
        if (!admissible(inst, p)) continue;
        ++adm;
        if (is_identity_frobenius(inst, p)) ++idc;
    }
    if (idc == 0)
        throw InsufficientPrimesError("no prime up to " + std::to_string(limit) +
                                      " has identity Frobenius; raise the bound");
    return {limit, adm, idc, static_cast<double>(adm) / static_cast<double>(idc)};
}

DegreeEstimate degree_estimate_serial(const ProblemInstance& inst, std::int64_t limit) {
    check_scan_limit(limit);
    PrimeRange pr = sieve_serial(1, limit);
    std::int64_t adm = 0;
    std::int64_t idc = 0;
    for (std::int64_t p : pr.primes) {
        if (!admissible(inst, p)) continue;
        ++adm;
        if (is_identity_frobenius(inst, p)) ++idc;
    }
    if (idc == 0)
        throw InsufficientPrimesError("no prime up to " + std::to_string(limit) +
                                      " has identity Frobenius; raise the bound");
    return {limit, adm, idc, static_cast<double>(adm) / static_cast<double>(idc)};
}

}  // namespace mqgal
