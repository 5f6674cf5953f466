#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mqgal/patterns.hpp"
#include "mqgal/subsetlat.hpp"

namespace mqgal {

/// Automorphism of Q(sqrt(a_1), ..., sqrt(a_n), zeta_d): sends zeta_d to
/// zeta_d^f and sqrt(a_i) to signs[i] * sqrt(a_i).
struct GaloisElement {
    std::int64_t f;
    SignPattern signs;
    std::int64_t d;

    friend bool operator==(const GaloisElement&, const GaloisElement&) = default;
};

bool operator<(const GaloisElement& a, const GaloisElement& b);
std::string to_string(const GaloisElement& el);

class GaloisGroup {
public:
    GaloisGroup(ProblemInstance inst, std::vector<GaloisElement> elements);

    const ProblemInstance& instance() const { return inst_; }
    const std::vector<GaloisElement>& elements() const { return elements_; }
    std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }

    /// Position in the sorted element list, or -1.
    std::ptrdiff_t index_of(const GaloisElement& el) const;
    bool contains(const GaloisElement& el) const { return index_of(el) >= 0; }

private:
    ProblemInstance inst_;
    std::vector<GaloisElement> elements_;
};

/// [Q(sqrt(a_1), ..., sqrt(a_n), zeta_d) : Q] = 2^n phi(d) / |active
/// subgroup|. Requires d >= 3.
std::int64_t degree(const ProblemInstance& inst);

/// Explicit element list of the Galois group. Requires d >= 3 and the
/// enumeration budget of enumerate_pattern_group; the list size is checked
/// against the degree.
GaloisGroup build_group(const ProblemInstance& inst);

/// Composition acts by multiplying the cyclotomic exponents mod d and the
/// sign patterns pointwise. Elements must share d and pattern length.
GaloisElement compose(const GaloisElement& a, const GaloisElement& b);

/// Frobenius at an unramified odd prime: f = p mod d, signs[i] = (a_i/p).
/// Rejects p even, p | d and p | a_i with DomainError naming the obstacle.
/// The image provably lies in the group; a failed membership check raises
/// ConsistencyError.
class FrobeniusMap {
public:
    explicit FrobeniusMap(const ProblemInstance& inst);

    const ProblemInstance& instance() const { return inst_; }
    GaloisElement operator()(std::int64_t p) const;

private:
    struct Row {
        SubsetMask mask;
        std::int64_t disc;
    };
    ProblemInstance inst_;
    std::vector<Row> rows_;  // basis of the active subgroup
};

GaloisElement frobenius(const ProblemInstance& inst, std::int64_t p);

/// Group of the compositum with several cyclotomic layers: build_group
/// with d = lcm of the moduli, each of which must be >= 3.
GaloisGroup multi_cyclotomic(const std::vector<std::int64_t>& elements,
                             const std::vector<std::int64_t>& moduli);

/// Degree times the number of distinct squarefree subset values times |H|
/// equals 2^n phi(d); the identity is checked before the report is
/// returned.
struct CancellationReport {
    std::int64_t degree = 0;
    std::int64_t quotient_order = 0;  // distinct squarefree values over the active subgroup
    std::int64_t h_order = 0;
    std::int64_t product = 0;
    std::int64_t full_order = 0;      // 2^n phi(d)
};

CancellationReport cancellation(const ProblemInstance& inst);

}  // namespace mqgal
