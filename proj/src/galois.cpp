#include "mqgal/galois.hpp"

#include <algorithm>
#include <bit>

namespace mqgal {

bool operator<(const GaloisElement& a, const GaloisElement& b) {
    if (a.f != b.f) return a.f < b.f;
    return a.signs.negatives() < b.signs.negatives();
}

std::string to_string(const GaloisElement& el) {
    return "(" + std::to_string(el.f) + "; " + to_string(el.signs) + ")";
}

GaloisGroup::GaloisGroup(ProblemInstance inst, std::vector<GaloisElement> elements)
    : inst_(std::move(inst)), elements_(std::move(elements)) {
    if (!std::is_sorted(elements_.begin(), elements_.end()))
        throw ConsistencyError("group elements not sorted");
}

std::ptrdiff_t GaloisGroup::index_of(const GaloisElement& el) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), el);
    if (it == elements_.end() || !(*it == el)) return -1;
    return it - elements_.begin();
}

std::int64_t degree(const ProblemInstance& inst) {
    if (inst.d() < 3)
        throw DomainError("field degree needs a cyclotomic modulus of at least 3, got " +
                          std::to_string(inst.d()));
    return count_pattern_group(inst);
}

GaloisGroup build_group(const ProblemInstance& inst) {
    const std::int64_t deg = degree(inst);
    std::vector<PatternGroupElement> pairs = enumerate_pattern_group(inst);
    std::vector<GaloisElement> els;
    els.reserve(pairs.size());
    for (const PatternGroupElement& pe : pairs) els.push_back({pe.f, pe.theta, inst.d()});
    if (static_cast<std::int64_t>(els.size()) != deg)
        throw ConsistencyError("group order " + std::to_string(els.size()) +
                               " does not equal the field degree " + std::to_string(deg));
    return GaloisGroup(inst, std::move(els));
}

GaloisElement compose(const GaloisElement& a, const GaloisElement& b) {
    if (a.d != b.d)
        throw DomainError("cannot compose automorphisms of different cyclotomic moduli");
    std::int64_t f = static_cast<std::int64_t>(static_cast<__int128>(a.f) * b.f % a.d);
    if (f == 0) f = a.d;
    return {f, a.signs * b.signs, a.d};
}

FrobeniusMap::FrobeniusMap(const ProblemInstance& inst) : inst_(inst) {
    SubsetSubgroup sub = subgroup(inst_, active_class(inst_.d()));
    for (SubsetMask b : xor_basis(sub.members)) {
        std::int64_t s = sqf_of_subset(inst_, b);
        symbol_on_class(s, ResidueClass(1, inst_.d()));
        rows_.push_back({b, fundamental_discriminant(s)});
    }
}

GaloisElement FrobeniusMap::operator()(std::int64_t p) const {
    if (p < 3 || p % 2 == 0)
        throw DomainError("Frobenius needs an odd prime, got p=" + std::to_string(p));
    if (inst_.d() % p == 0)
        throw DomainError("p=" + std::to_string(p) + " divides the cyclotomic modulus " +
                          std::to_string(inst_.d()));
    for (int i = 0; i < inst_.n(); ++i)
        if (inst_.elements()[static_cast<std::size_t>(i)] % p == 0)
            throw DomainError("p=" + std::to_string(p) + " divides a_" + std::to_string(i + 1) +
                              "=" + std::to_string(inst_.elements()[static_cast<std::size_t>(i)]));

    std::int64_t f = mod_floor(p, inst_.d());
    if (f == 0) f = inst_.d();
    ResidueClass rc(f, inst_.d());

    std::uint32_t neg = 0;
    for (int i = 0; i < inst_.n(); ++i) {
        int k = kronecker(inst_.element_sqf(i), p);
        if (k == 0) throw ConsistencyError("residue symbol vanished at an unramified prime");
        if (k < 0) neg |= std::uint32_t{1} << i;
    }
    GaloisElement el{f, SignPattern(inst_.n(), neg), inst_.d()};

    // The image is always an automorphism of the compositum; check it.
    for (const Row& r : rows_) {
        bool th = std::popcount(neg & r.mask) & 1;
        bool sym = kronecker(r.disc, rc.f) < 0;
        if (th != sym)
            throw ConsistencyError("Frobenius image at p=" + std::to_string(p) +
                                   " fell outside the group");
    }
    return el;
}

GaloisElement frobenius(const ProblemInstance& inst, std::int64_t p) {
    return FrobeniusMap(inst)(p);
}

GaloisGroup multi_cyclotomic(const std::vector<std::int64_t>& elements,
                             const std::vector<std::int64_t>& moduli) {
    if (moduli.empty()) throw DomainError("at least one cyclotomic modulus is required");
    std::int64_t d = 1;
    for (std::int64_t m : moduli) {
        if (m < 3)
            throw DomainError("cyclotomic moduli must be at least 3, got " + std::to_string(m));
        d = checked_lcm(d, m);
    }
    return build_group(ProblemInstance(elements, d));
}

CancellationReport cancellation(const ProblemInstance& inst) {
    CancellationReport rep;
    rep.degree = degree(inst);
    rep.quotient_order = quotient_order(inst, active_class(inst.d()));
    rep.h_order = static_cast<std::int64_t>(subgroup(inst, SubgroupClass::H).members.size());
    rep.full_order = checked_mul(std::int64_t{1} << inst.n(), euler_phi(inst.d()));
    rep.product = checked_mul(checked_mul(rep.degree, rep.quotient_order), rep.h_order);
    if (rep.product != rep.full_order)
        throw ConsistencyError("degree * quotient * |H| = " + std::to_string(rep.product) +
                               " but 2^n phi(d) = " + std::to_string(rep.full_order));
    return rep;
}

}  // namespace mqgal
