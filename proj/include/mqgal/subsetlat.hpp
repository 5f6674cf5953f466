#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqgal/arith.hpp"
#include "mqgal/errors.hpp"

namespace mqgal {

/// Bitmask over the indices of S; bit i set means a_i is in the subset.
/// Symmetric difference of subsets is bitwise XOR.
using SubsetMask = std::uint32_t;

constexpr int kMaxSubsetElements = 24;

/// A problem instance (a_1, ..., a_n; d) with the per-element squarefree
/// parts and their GF(2) prime-support vectors precomputed. The list order
/// is fixed: index i corresponds to bit i of a SubsetMask.
class ProblemInstance {
public:
    ProblemInstance(std::vector<std::int64_t> elements, std::int64_t modulus);

    int n() const { return static_cast<int>(elements_.size()); }
    std::int64_t d() const { return d_; }
    const std::vector<std::int64_t>& elements() const { return elements_; }
    std::int64_t element_sqf(int i) const { return sqf_[static_cast<std::size_t>(i)]; }
    SubsetMask full_mask() const { return n() == 32 ? ~0u : (1u << n()) - 1; }

    std::string describe() const;

    // GF(2) representation of the squarefree parts: distinct primes across
    // all sqf(a_i) form the universe; each element carries a support bitset.
    const std::vector<std::int64_t>& prime_universe() const { return universe_; }
    int support_words() const { return words_; }
    const std::uint64_t* element_support(int i) const {
        return support_.data() + static_cast<std::size_t>(i) * words_;
    }
    bool element_negative(int i) const { return negative_[static_cast<std::size_t>(i)] != 0; }
    bool element_threes_parity(int i) const { return threes_[static_cast<std::size_t>(i)] != 0; }
    const std::vector<std::uint64_t>& nondivisor_mask() const { return nondivisor_; }
    int prime_two_index() const { return two_index_; }

private:
    std::vector<std::int64_t> elements_;
    std::int64_t d_;
    std::vector<std::int64_t> sqf_;
    std::vector<std::int64_t> universe_;
    int words_ = 0;
    int two_index_ = -1;                    // position of prime 2, or -1
    std::vector<std::uint64_t> support_;    // n * words_ packed bitsets
    std::vector<std::uint8_t> negative_;    // sign of sqf(a_i)
    std::vector<std::uint8_t> threes_;      // parity of primes = 3 mod 4 in sqf(a_i)
    std::vector<std::uint64_t> nondivisor_; // universe primes not dividing d
};

enum class SubgroupClass { D0, D1, D2, H };

std::string to_string(SubgroupClass cls);

/// Which subgroup governs residue patterns mod d: D2 when 4 does not divide
/// d, D1 when 4 | d but 8 does not, D0 when 8 | d.
SubgroupClass active_class(std::int64_t d);

/// An enumerated subgroup of (P(S), xor), verified closed and containing
/// the empty mask before being returned.
struct SubsetSubgroup {
    SubgroupClass cls = SubgroupClass::H;
    std::vector<SubsetMask> members;        // sorted ascending
    std::optional<std::int64_t> modulus;    // absent for H

    std::size_t size() const { return members.size(); }
    bool contains(SubsetMask m) const;
};

struct Coset {
    SubsetMask representative = 0;   // minimum mask in the coset
    std::vector<SubsetMask> members; // sorted ascending
    std::int64_t common_sqf = 1;     // sqf of the representative
};

struct CosetDecomposition {
    SubsetSubgroup subgroup;
    std::vector<Coset> cosets;       // ordered by representative
};

/// Squarefree part of the product over the subset; empty mask gives 1.
std::int64_t sqf_of_subset(const ProblemInstance& inst, SubsetMask t);

/// Enumerates the requested subgroup over all 2^n subsets. The production
/// path chunks the mask space across threads; subgroup_serial evaluates the
/// defining predicate mask by mask and is kept as the reference.
SubsetSubgroup subgroup(const ProblemInstance& inst, SubgroupClass cls);
SubsetSubgroup subgroup_serial(const ProblemInstance& inst, SubgroupClass cls);

/// Partitions P(S) into cosets of sub, representatives minimal in each
/// coset. For sub = H the members of a coset all share one squarefree value
/// and distinct cosets have distinct values; both facts are verified.
CosetDecomposition coset_decomposition(const ProblemInstance& inst, const SubsetSubgroup& sub);

/// |D_i| / |D_i intersect H|, the number of distinct squarefree values
/// realized by the subgroup. cls must be D0, D1 or D2.
std::int64_t quotient_order(const ProblemInstance& inst, SubgroupClass cls);

/// Greedy GF(2) basis of a set of masks (row echelon by highest bit).
std::vector<SubsetMask> xor_basis(const std::vector<SubsetMask>& masks);

}  // namespace mqgal
