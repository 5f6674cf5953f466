#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mqgal/subsetlat.hpp"

namespace mqgal {

/// Assignment of +1/-1 to each index of S, stored as a mask of the
/// positions carrying -1.
class SignPattern {
public:
    SignPattern(int n, std::uint32_t negatives);

    static SignPattern all_plus(int n) { return SignPattern(n, 0); }
    static SignPattern all_minus(int n);
    static SignPattern from_signs(const std::vector<int>& signs);

    int n() const { return n_; }
    std::uint32_t negatives() const { return negatives_; }
    int sign(int i) const;

    /// Pointwise product; patterns must have equal length.
    SignPattern operator*(const SignPattern& other) const;

    friend bool operator==(const SignPattern&, const SignPattern&) = default;

private:
    int n_;
    std::uint32_t negatives_;
};

std::string to_string(const SignPattern& sp);

/// Invertible residue f mod d, representative in [1, d] (d stands for the
/// zero residue, which is invertible only when d = 1).
struct ResidueClass {
    std::int64_t f;
    std::int64_t d;

    ResidueClass(std::int64_t f_in, std::int64_t d_in);
};

struct PatternGroupElement {
    std::int64_t f;
    SignPattern theta;

    friend bool operator==(const PatternGroupElement&, const PatternGroupElement&) = default;
};

bool operator<(const PatternGroupElement& a, const PatternGroupElement& b);

struct DensityResult {
    std::int64_t constant_C = 0;      // 0, or the order of the active subgroup
    std::int64_t subgroup_order = 0;
    std::int64_t density_num = 0;     // C / (2^n phi(d)), reduced
    std::int64_t density_den = 1;
    bool feasible = false;
};

/// Product of the pattern over the subset; empty subset gives +1.
int theta_of_subset(const SignPattern& sp, SubsetMask t);

/// Value of (s / p) shared by every prime p in the class f mod d. Requires
/// s squarefree with |s| dividing d, and s = 1 mod 4, or s = 3 mod 4 with
/// 4 | d, or s even with 8 | d; otherwise the symbol genuinely varies
/// within the class and ClassSymbolError is thrown.
int symbol_on_class(std::int64_t s, const ResidueClass& rc);

/// theta(T) * (sqf(T) / f); defined when sqf(T) satisfies the
/// symbol_on_class preconditions.
int mu(const ProblemInstance& inst, const SignPattern& sp, const ResidueClass& rc, SubsetMask t);

/// Sum of mu over the subgroup matching rc.d, i.e. the constant weighting
/// the main term of the pattern-counting asymptotic, together with the
/// exact density C / (2^n phi(d)). The sum collapses to 0 or the full
/// subgroup order; anything else raises ConsistencyError.
DensityResult main_term_constant(const ProblemInstance& inst, const SignPattern& sp,
                                 const ResidueClass& rc);

/// Whether (sp, rc) occurs for infinitely many primes, i.e. mu is
/// identically 1 on the active subgroup. Early-exits on the first witness
/// against.
bool is_feasible(const ProblemInstance& inst, const SignPattern& sp, const ResidueClass& rc);

/// All pairs (f, theta) whose mu is trivial on the active subgroup, sorted
/// by (f, theta). Requires n <= 16 and phi(d) * 2^n <= 2^24, else
/// CapacityError. The result is verified: identity present, equal fiber
/// sizes over every f, total matching count_pattern_group, inverses
/// present, and exhaustive closure when the group has at most 4096
/// elements.
std::vector<PatternGroupElement> enumerate_pattern_group(const ProblemInstance& inst);

/// 2^n phi(d) / |active subgroup| without enumerating the group.
std::int64_t count_pattern_group(const ProblemInstance& inst);

}  // namespace mqgal
