#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "mqgal/patterns.hpp"
#include "oracle_refs.hpp"

using namespace mqgal;

TEST_CASE("sign pattern basics") {
    SignPattern sp = SignPattern::from_signs({1, -1, 1});
    CHECK(sp.n() == 3);
    CHECK(sp.sign(0) == 1);
    CHECK(sp.sign(1) == -1);
    CHECK(sp.negatives() == 0b010);
    CHECK(to_string(sp) == "+1,-1,+1");
    CHECK(to_string(SignPattern::all_plus(2)) == "+1,+1");
    CHECK(SignPattern::all_minus(2).negatives() == 0b11);
    CHECK(sp * sp == SignPattern::all_plus(3));
    CHECK(SignPattern::from_signs({1, -1}) * SignPattern::from_signs({-1, -1}) ==
          SignPattern::from_signs({-1, 1}));

    CHECK_THROWS_AS(SignPattern(2, 0b100), DomainError);
    CHECK_THROWS_AS(SignPattern::from_signs({1, 2}), DomainError);
    CHECK_THROWS_AS(SignPattern::all_plus(1) * SignPattern::all_plus(2), DomainError);
    CHECK_THROWS_AS(sp.sign(3), DomainError);
}

TEST_CASE("residue class validation") {
    CHECK_NOTHROW(ResidueClass(1, 8));
    CHECK_NOTHROW(ResidueClass(7, 8));
    CHECK_NOTHROW(ResidueClass(1, 1));
    CHECK_THROWS_AS(ResidueClass(5, 5), DomainError);   // not invertible
    CHECK_THROWS_AS(ResidueClass(0, 5), DomainError);   // below range
    CHECK_THROWS_AS(ResidueClass(6, 5), DomainError);   // above range
    CHECK_THROWS_AS(ResidueClass(2, 8), DomainError);
    CHECK_THROWS_AS(ResidueClass(1, 0), DomainError);
}

TEST_CASE("theta of a subset is the product over its indices") {
    SignPattern sp = SignPattern::from_signs({-1, 1, -1, -1});
    for (SubsetMask t = 0; t < 16; ++t) {
        int prod = 1;
        for (int i = 0; i < 4; ++i)
            if ((t >> i) & 1u) prod *= sp.sign(i);
        CHECK(theta_of_subset(sp, t) == prod);
    }
    CHECK(theta_of_subset(sp, 0) == 1);
    CHECK_THROWS_AS(theta_of_subset(sp, 1u << 5), DomainError);
}

TEST_CASE("symbol on a class: pinned values") {
    CHECK(symbol_on_class(5, ResidueClass(2, 5)) == -1);
    CHECK(symbol_on_class(1, ResidueClass(3, 8)) == 1);
    CHECK(symbol_on_class(1, ResidueClass(1, 1)) == 1);
    CHECK(symbol_on_class(3, ResidueClass(1, 12)) == 1);
    CHECK(symbol_on_class(2, ResidueClass(7, 8)) == 1);
    CHECK(symbol_on_class(2, ResidueClass(3, 8)) == -1);
    CHECK(symbol_on_class(-1, ResidueClass(1, 4)) == 1);
    CHECK(symbol_on_class(-1, ResidueClass(3, 4)) == -1);
}

TEST_CASE("symbol on a class: rejected inputs") {
    CHECK_THROWS_AS(symbol_on_class(0, ResidueClass(1, 8)), DomainError);
    CHECK_THROWS_AS(symbol_on_class(4, ResidueClass(1, 8)), DomainError);    // not squarefree
    CHECK_THROWS_AS(symbol_on_class(3, ResidueClass(1, 5)), ClassSymbolError);   // 3 does not divide 5
    CHECK_THROWS_AS(symbol_on_class(3, ResidueClass(1, 3)), ClassSymbolError);   // 3 mod 4 needs 4 | d
    CHECK_THROWS_AS(symbol_on_class(2, ResidueClass(1, 4)), ClassSymbolError);   // even needs 8 | d
    CHECK_THROWS_AS(symbol_on_class(-1, ResidueClass(1, 2)), ClassSymbolError);  // -1 = 3 mod 4
    CHECK_THROWS_AS(symbol_on_class(10, ResidueClass(1, 20)), ClassSymbolError);
}

TEST_CASE("symbol on a class is constant across primes in the class") {
    // Wherever the symbol is defined it must equal (s/p) for every prime
    // p in the class; sample the first few via trial division.
    for (std::int64_t s : {-6, -5, -3, -2, -1, 2, 3, 5, 6, 10, 15}) {
        for (std::int64_t d : {4, 5, 8, 12, 15, 20, 24, 40, 60, 120}) {
            std::int64_t mag = s < 0 ? -s : s;
            bool defined = d % mag == 0;
            std::int64_t r4 = ((s % 4) + 4) % 4;
            if (r4 == 3 && d % 4 != 0) defined = false;
            if (s % 2 == 0 && d % 8 != 0) defined = false;
            if (!defined) continue;
            for (std::int64_t f = 1; f <= d; ++f) {
                if (std::gcd(f, d) != 1) continue;
                int sym = symbol_on_class(s, ResidueClass(f, d));
                int sampled = 0;
                for (std::int64_t p = f; sampled < 5 && p < 100'000; p += d) {
                    if (p < 3 || !refs::primes_trial(p - 1, p).size()) continue;
                    if ((2 * mag) % p == 0) continue;
                    CHECK(sym == refs::legendre_euler(s, p));
                    ++sampled;
                }
                CHECK(sampled == 5);
            }
        }
    }
}

TEST_CASE("mu pinned values and multiplicativity") {
    ProblemInstance inst({5}, 5);
    SignPattern minus = SignPattern::all_minus(1);
    CHECK(mu(inst, minus, ResidueClass(2, 5), 1) == 1);   // theta(-1) * (5/2 class) = -1 * -1
    CHECK(mu(inst, minus, ResidueClass(1, 5), 1) == -1);
    CHECK(mu(inst, minus, ResidueClass(1, 5), 0) == 1);   // empty subset

    std::vector<std::vector<std::int64_t>> pools{
        {2, 3}, {5}, {2, 8, 3}, {2, 3, 5, 6, 10, 15, -7, 14, 21, -35}};
    std::int64_t violations = 0;
    for (const auto& els : pools)
        for (std::int64_t d : {4, 5, 8, 12, 24, 40}) {
            ProblemInstance pi(els, d);
            SubsetSubgroup active = subgroup(pi, active_class(d));
            for (std::int64_t f = 1; f <= d; ++f) {
                if (std::gcd(f, d) != 1) continue;
                ResidueClass rc(f, d);
                for (std::uint32_t neg = 0; neg < (1u << std::min(pi.n(), 5)); ++neg) {
                    SignPattern sp(pi.n(), neg);
                    // cache one pass, then compare all pairs
                    std::vector<int> vals;
                    vals.reserve(active.size());
                    for (SubsetMask m : active.members) vals.push_back(mu(pi, sp, rc, m));
                    for (std::size_t i = 0; i < active.size(); ++i)
                        for (std::size_t j = i; j < active.size(); ++j) {
                            SubsetMask xy = active.members[i] ^ active.members[j];
                            if (mu(pi, sp, rc, xy) != vals[i] * vals[j]) ++violations;
                        }
                }
            }
        }
    CHECK(violations == 0);
}

TEST_CASE("mu rejects subsets outside the symbol domain") {
    ProblemInstance inst({3}, 5);  // sqf 3 does not divide 5
    CHECK_THROWS_AS(mu(inst, SignPattern::all_plus(1), ResidueClass(1, 5), 1), ClassSymbolError);
}

TEST_CASE("main term pinned values") {
    ProblemInstance i238({2, 3}, 8);
    DensityResult pp = main_term_constant(i238, SignPattern::all_plus(2), ResidueClass(1, 8));
    CHECK(pp.constant_C == 2);
    CHECK(pp.subgroup_order == 2);
    CHECK(pp.density_num == 1);
    CHECK(pp.density_den == 8);
    CHECK(pp.feasible);

    DensityResult mp = main_term_constant(i238, SignPattern::from_signs({-1, 1}), ResidueClass(1, 8));
    CHECK(mp.constant_C == 0);
    CHECK(mp.density_num == 0);
    CHECK_FALSE(mp.feasible);

    ProblemInstance i235({2, 3}, 5);
    for (std::int64_t f : {1, 2, 3, 4})
        for (std::uint32_t neg = 0; neg < 4; ++neg) {
            DensityResult dr = main_term_constant(i235, SignPattern(2, neg), ResidueClass(f, 5));
            CHECK(dr.constant_C == 1);
            CHECK(dr.density_num == 1);
            CHECK(dr.density_den == 16);
            CHECK(dr.feasible);
        }
}

TEST_CASE("character sum collapses to zero or the subgroup order") {
    std::vector<std::vector<std::int64_t>> pools{
        {2, 3}, {5}, {2, 8, 3}, {6, 10, 15}, {2, 3, 5, 6, 10, -7}};
    for (const auto& els : pools)
        for (std::int64_t d : {3, 4, 5, 8, 12, 24, 40}) {
            ProblemInstance inst(els, d);
            SubsetSubgroup active = subgroup(inst, active_class(d));
            std::int64_t order = static_cast<std::int64_t>(active.size());
            std::int64_t feasible_count = 0;
            std::int64_t num = 0, den = 0;
            for (std::int64_t f = 1; f <= d; ++f) {
                if (std::gcd(f, d) != 1) continue;
                for (std::uint32_t neg = 0; neg < (1u << inst.n()); ++neg) {
                    DensityResult dr =
                        main_term_constant(inst, SignPattern(inst.n(), neg), ResidueClass(f, d));
                    CHECK((dr.constant_C == 0 || dr.constant_C == order));
                    CHECK(dr.feasible == is_feasible(inst, SignPattern(inst.n(), neg),
                                                     ResidueClass(f, d)));
                    if (dr.feasible) {
                        ++feasible_count;
                        num = dr.density_num;
                        den = dr.density_den;
                    }
                }
            }
            // Feasible classes partition the admissible primes: densities sum to 1.
            CHECK(num == 1);
            CHECK(feasible_count == den);
            CHECK(feasible_count == count_pattern_group(inst));
        }
}

TEST_CASE("identity class is always feasible") {
    std::vector<std::vector<std::int64_t>> pools{{2, 3}, {5}, {2, 8, 3}, {6, 10, 15}};
    for (const auto& els : pools)
        for (std::int64_t d : {3, 4, 5, 8, 12, 24}) {
            ProblemInstance inst(els, d);
            CHECK(is_feasible(inst, SignPattern::all_plus(inst.n()), ResidueClass(1, d)));
        }
}

TEST_CASE("pattern group enumeration pinned examples") {
    {
        ProblemInstance inst({2, 3}, 8);
        std::vector<PatternGroupElement> g = enumerate_pattern_group(inst);
        REQUIRE(g.size() == 8);
        CHECK(g[0].f == 1);
        CHECK(g[0].theta == SignPattern::all_plus(2));
        // Each invertible residue carries exactly two patterns.
        std::map<std::int64_t, int> fibers;
        for (const auto& el : g) ++fibers[el.f];
        for (std::int64_t f : {1, 3, 5, 7}) CHECK(fibers[f] == 2);
        CHECK(std::is_sorted(g.begin(), g.end()));
    }
    {
        ProblemInstance inst({3}, 3);
        std::vector<PatternGroupElement> g = enumerate_pattern_group(inst);
        REQUIRE(g.size() == 4);
        // Both signs occur for both residues.
        for (std::int64_t f : {1, 2}) {
            bool plus = false, minus = false;
            for (const auto& el : g)
                if (el.f == f) (el.theta.negatives() ? minus : plus) = true;
            CHECK(plus);
            CHECK(minus);
        }
    }
}

TEST_CASE("enumerated group matches the closed-form count") {
    std::vector<std::vector<std::int64_t>> pools{
        {2, 3}, {5}, {7}, {2, 8}, {2, 8, 3}, {6, 10, 15}, {2, 3, 5, 6, 10, -7}};
    for (const auto& els : pools)
        for (std::int64_t d : {3, 4, 5, 8, 12, 15, 24, 40}) {
            ProblemInstance inst(els, d);
            CHECK(static_cast<std::int64_t>(enumerate_pattern_group(inst).size()) ==
                  count_pattern_group(inst));
        }
    CHECK(count_pattern_group(ProblemInstance({2, 3}, 24)) == 8);
    CHECK(count_pattern_group(ProblemInstance({2, 8}, 8)) == 4);
    CHECK(count_pattern_group(ProblemInstance({7}, 3)) == 4);
}

TEST_CASE("enumeration budget is enforced") {
    std::vector<std::int64_t> many;
    for (std::int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59})
        many.push_back(q);  // n = 17 > 16
    CHECK_THROWS_AS(enumerate_pattern_group(ProblemInstance(many, 8)), CapacityError);

    std::vector<std::int64_t> sixteen(many.begin(), many.begin() + 16);
    CHECK_THROWS_AS(enumerate_pattern_group(ProblemInstance(sixteen, 509)), CapacityError);
    CHECK_NOTHROW(count_pattern_group(ProblemInstance(sixteen, 509)));
}
