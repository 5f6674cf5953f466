#include "mqgal/patterns.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace mqgal {

namespace {

void check_compatible(const ProblemInstance& inst, const SignPattern& sp, const ResidueClass& rc) {
    if (sp.n() != inst.n())
        throw DomainError("sign pattern has length " + std::to_string(sp.n()) +
                          ", instance has " + std::to_string(inst.n()) + " elements");
    if (rc.d != inst.d())
        throw DomainError("residue class modulus " + std::to_string(rc.d) +
                          " does not match instance modulus " + std::to_string(inst.d()));
}

}  // namespace

SignPattern::SignPattern(int n, std::uint32_t negatives) : n_(n), negatives_(negatives) {
    if (n < 0 || n > kMaxSubsetElements)
        throw DomainError("sign pattern length " + std::to_string(n) + " out of range");
    if (n < 32 && (negatives >> n) != 0)
        throw DomainError("sign mask has bits beyond the pattern length");
}

SignPattern SignPattern::all_minus(int n) {
    return SignPattern(n, n == 0 ? 0u : (std::uint32_t{1} << n) - 1);
}

SignPattern SignPattern::from_signs(const std::vector<int>& signs) {
    std::uint32_t neg = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] == -1)
            neg |= std::uint32_t{1} << i;
        else if (signs[i] != 1)
            throw DomainError("sign entries must be +1 or -1, got " + std::to_string(signs[i]));
    }
    return SignPattern(static_cast<int>(signs.size()), neg);
}

int SignPattern::sign(int i) const {
    if (i < 0 || i >= n_) throw DomainError("sign index " + std::to_string(i) + " out of range");
    return (negatives_ >> i & 1) ? -1 : 1;
}

SignPattern SignPattern::operator*(const SignPattern& other) const {
    if (n_ != other.n_) throw DomainError("cannot multiply sign patterns of different length");
    return SignPattern(n_, negatives_ ^ other.negatives_);
}

std::string to_string(const SignPattern& sp) {
    std::string out;
    for (int i = 0; i < sp.n(); ++i) {
        if (i) out += ',';
        out += sp.sign(i) == 1 ? "+1" : "-1";
    }
    return out;
}

ResidueClass::ResidueClass(std::int64_t f_in, std::int64_t d_in) : f(f_in), d(d_in) {
    if (d < 1) throw DomainError("residue modulus must be positive, got " + std::to_string(d));
    if (f < 1 || f > d)
        throw DomainError("residue representative " + std::to_string(f) + " not in [1, " +
                          std::to_string(d) + "]");
    if (std::gcd(f, d) != 1)
        throw DomainError("residue " + std::to_string(f) + " is not invertible mod " +
                          std::to_string(d));
}

bool operator<(const PatternGroupElement& a, const PatternGroupElement& b) {
    if (a.f != b.f) return a.f < b.f;
    return a.theta.negatives() < b.theta.negatives();
}

int theta_of_subset(const SignPattern& sp, SubsetMask t) {
    if (sp.n() < 32 && (t >> sp.n()) != 0)
        throw DomainError("subset mask exceeds sign pattern length");
    return (std::popcount(sp.negatives() & t) & 1) ? -1 : 1;
}

int symbol_on_class(std::int64_t s, const ResidueClass& rc) {
    if (s == 0) throw DomainError("symbol numerator must be nonzero");
    if (!is_squarefree(s)) throw DomainError(std::to_string(s) + " is not squarefree");
    const std::int64_t a = s < 0 ? -s : s;
    const std::int64_t r = mod_floor(s, 4);
    // The conductor of the attached character is |s| or 4|s|; it must
    // divide d for the symbol to be constant on the class.
    bool constant = rc.d % a == 0 &&
                    (r == 1 || (r == 3 && rc.d % 4 == 0) || (r == 2 && rc.d % 8 == 0));
    if (!constant)
        throw ClassSymbolError("(" + std::to_string(s) + "/p) is not constant for p = " +
                               std::to_string(rc.f) + " mod " + std::to_string(rc.d));
    int k = kronecker(fundamental_discriminant(s), rc.f);
    if (k == 0) throw ConsistencyError("class symbol vanished on an invertible residue");
    return k;
}

int mu(const ProblemInstance& inst, const SignPattern& sp, const ResidueClass& rc, SubsetMask t) {
    check_compatible(inst, sp, rc);
    return theta_of_subset(sp, t) * symbol_on_class(sqf_of_subset(inst, t), rc);
}

DensityResult main_term_constant(const ProblemInstance& inst, const SignPattern& sp,
                                 const ResidueClass& rc) {
    check_compatible(inst, sp, rc);
    SubsetSubgroup sub = subgroup(inst, active_class(rc.d));
    std::int64_t c = 0;
    for (SubsetMask t : sub.members)
        c += theta_of_subset(sp, t) * symbol_on_class(sqf_of_subset(inst, t), rc);
    const std::int64_t order = static_cast<std::int64_t>(sub.members.size());
    if (c != 0 && c != order)
        throw ConsistencyError("character sum " + std::to_string(c) +
                               " is neither 0 nor the subgroup order " + std::to_string(order));
    DensityResult res;
    res.constant_C = c;
    res.subgroup_order = order;
    res.feasible = c > 0;
    if (c > 0) {
        const std::int64_t two_n = std::int64_t{1} << inst.n();
        res.density_num = 1;
        res.density_den = checked_mul(two_n / order, euler_phi(rc.d));
    }
    return res;
}

bool is_feasible(const ProblemInstance& inst, const SignPattern& sp, const ResidueClass& rc) {
    check_compatible(inst, sp, rc);
    SubsetSubgroup sub = subgroup(inst, active_class(rc.d));
    for (SubsetMask t : sub.members)
        if (theta_of_subset(sp, t) * symbol_on_class(sqf_of_subset(inst, t), rc) != 1)
            return false;
    return true;
}

std::vector<PatternGroupElement> enumerate_pattern_group(const ProblemInstance& inst) {
    const int n = inst.n();
    const std::int64_t d = inst.d();
    const std::int64_t phi = euler_phi(d);
    const std::int64_t two_n = std::int64_t{1} << n;
    if (n > 16 || phi > (std::int64_t{1} << 24) / two_n)
        throw CapacityError("group enumeration budget exceeded: phi(" + std::to_string(d) +
                            ") * 2^" + std::to_string(n) + " > 2^24");

    SubsetSubgroup sub = subgroup(inst, active_class(d));
    struct Row {
        SubsetMask mask;
        std::int64_t disc;
    };
    std::vector<Row> rows;
    for (SubsetMask b : xor_basis(sub.members)) {
        std::int64_t s = sqf_of_subset(inst, b);
        symbol_on_class(s, ResidueClass(1, d));  // preconditions hold for every f
        rows.push_back({b, fundamental_discriminant(s)});
    }

    std::vector<PatternGroupElement> out;
    for (std::int64_t f = 1; f <= d; ++f) {
        if (std::gcd(f, d) != 1) continue;
        std::uint32_t targets = 0;
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (kronecker(rows[j].disc, f) < 0) targets |= std::uint32_t{1} << j;
        // mu is multiplicative in the subset, so triviality on the basis
        // rows is triviality on the whole subgroup.
        for (std::uint32_t m = 0; m < static_cast<std::uint32_t>(two_n); ++m) {
            bool ok = true;
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (static_cast<std::uint32_t>(std::popcount(m & rows[j].mask) & 1) !=
                    (targets >> j & 1)) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.push_back({f, SignPattern(n, m)});
        }
    }

    const std::int64_t expected = count_pattern_group(inst);
    if (static_cast<std::int64_t>(out.size()) != expected)
        throw ConsistencyError("pattern group has " + std::to_string(out.size()) +
                               " elements, counting formula gives " + std::to_string(expected));
    if (out.front().f != 1 || out.front().theta.negatives() != 0)
        throw ConsistencyError("pattern group misses the identity");

    const std::int64_t fiber = two_n / static_cast<std::int64_t>(sub.members.size());
    std::int64_t run = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        ++run;
        if (i + 1 == out.size() || out[i + 1].f != out[i].f) {
            if (run != fiber)
                throw ConsistencyError("fiber over f=" + std::to_string(out[i].f) + " has " +
                                       std::to_string(run) + " elements, expected " +
                                       std::to_string(fiber));
            run = 0;
        }
    }

    for (const PatternGroupElement& el : out) {
        std::int64_t inv = d == 1 ? 1 : mod_inverse(el.f, d);
        if (!std::binary_search(out.begin(), out.end(), PatternGroupElement{inv, el.theta}))
            throw ConsistencyError("inverse of f=" + std::to_string(el.f) + " missing");
    }

    if (out.size() <= 4096) {
        for (const PatternGroupElement& a : out) {
            for (const PatternGroupElement& b : out) {
                std::int64_t f = static_cast<std::int64_t>(static_cast<__int128>(a.f) * b.f % d);
                if (f == 0) f = d;
                if (!std::binary_search(out.begin(), out.end(),
                                        PatternGroupElement{f, a.theta * b.theta}))
                    throw ConsistencyError("pattern group not closed under composition");
            }
        }
    }
    return out;
}

std::int64_t count_pattern_group(const ProblemInstance& inst) {
    SubsetSubgroup sub = subgroup(inst, active_class(inst.d()));
    const std::int64_t two_n = std::int64_t{1} << inst.n();
    const std::int64_t order = static_cast<std::int64_t>(sub.members.size());
    if (two_n % order != 0)
        throw ConsistencyError("active subgroup order does not divide 2^n");
    return checked_mul(two_n / order, euler_phi(inst.d()));
}

}  // namespace mqgal
