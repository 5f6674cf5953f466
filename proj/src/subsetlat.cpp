#include "mqgal/subsetlat.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace mqgal {

namespace {

// Incrementally maintained image of a subset under the linear maps that
// decide membership: prime support of sqf, sign parity, parity of primes
// congruent to 3 mod 4.
struct SubsetState {
    std::vector<std::uint64_t> words;
    bool negative = false;
    bool threes = false;
};

void flip_element(const ProblemInstance& inst, int j, SubsetState& st) {
    const std::uint64_t* row = inst.element_support(j);
    for (int w = 0; w < inst.support_words(); ++w) st.words[static_cast<std::size_t>(w)] ^= row[w];
    st.negative ^= inst.element_negative(j);
    st.threes ^= inst.element_threes_parity(j);
}

SubsetState state_of(const ProblemInstance& inst, SubsetMask m) {
    SubsetState st;
    st.words.assign(static_cast<std::size_t>(inst.support_words()), 0);
    while (m) {
        int j = std::countr_zero(m);
        m &= m - 1;
        flip_element(inst, j, st);
    }
    return st;
}

bool state_in_class(const ProblemInstance& inst, const SubsetState& st, SubgroupClass cls) {
    if (cls == SubgroupClass::H) {
        if (st.negative) return false;
        for (std::uint64_t w : st.words)
            if (w) return false;
        return true;
    }
    // |sqf| divides d: every supporting prime must divide d.
    const std::vector<std::uint64_t>& nondiv = inst.nondivisor_mask();
    for (std::size_t w = 0; w < st.words.size(); ++w)
        if (st.words[w] & nondiv[w]) return false;
    if (cls == SubgroupClass::D0) return true;
    int two = inst.prime_two_index();
    bool odd = two < 0 || !(st.words[static_cast<std::size_t>(two >> 6)] >> (two & 63) & 1);
    if (!odd) return false;
    if (cls == SubgroupClass::D1) return true;
    // Odd squarefree s is 1 mod 4 exactly when the 3-mod-4 prime parity
    // and the sign parity agree.
    return st.threes == st.negative;
}

void verify_closed(const SubsetSubgroup& g) {
    if (g.members.empty() || g.members.front() != 0)
        throw ConsistencyError("subgroup does not contain the empty set");
    std::vector<SubsetMask> basis = xor_basis(g.members);
    if (basis.size() >= 32 || (std::size_t{1} << basis.size()) != g.members.size())
        throw ConsistencyError("subgroup of size " + std::to_string(g.members.size()) +
                               " is not xor-closed (rank " + std::to_string(basis.size()) + ")");
}

}  // namespace

ProblemInstance::ProblemInstance(std::vector<std::int64_t> elements, std::int64_t modulus)
    : elements_(std::move(elements)), d_(modulus) {
    if (d_ < 1)
        throw DomainError("cyclotomic modulus must be positive, got " + std::to_string(d_));
    if (elements_.size() > kMaxSubsetElements)
        throw CapacityError("instance has " + std::to_string(elements_.size()) +
                            " elements, limit is " + std::to_string(kMaxSubsetElements));

    const std::size_t n = elements_.size();
    sqf_.resize(n);
    negative_.resize(n);
    threes_.resize(n);
    std::vector<std::vector<std::int64_t>> primes(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (elements_[i] == 0)
            throw DomainError("element a_" + std::to_string(i + 1) + " is zero");
        FactoredInt f = factor(elements_[i]);
        std::int64_t s = f.sign;
        int t = 0;
        for (const auto& [p, e] : f.factors) {
            if (e % 2 == 0) continue;
            s *= p;
            primes[i].push_back(p);
            if (p % 4 == 3) t ^= 1;
        }
        sqf_[i] = s;
        negative_[i] = f.sign < 0;
        threes_[i] = static_cast<std::uint8_t>(t);
        universe_.insert(universe_.end(), primes[i].begin(), primes[i].end());
    }
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());

    words_ = static_cast<int>((universe_.size() + 63) / 64);
    support_.assign(n * static_cast<std::size_t>(words_), 0);
    nondivisor_.assign(static_cast<std::size_t>(words_), 0);
    for (std::size_t i = 0; i < universe_.size(); ++i) {
        if (universe_[i] == 2) two_index_ = static_cast<int>(i);
        if (d_ % universe_[i] != 0) nondivisor_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::int64_t p : primes[i]) {
            std::size_t idx = static_cast<std::size_t>(
                std::lower_bound(universe_.begin(), universe_.end(), p) - universe_.begin());
            support_[i * static_cast<std::size_t>(words_) + (idx >> 6)] ^= std::uint64_t{1}
                                                                          << (idx & 63);
        }
    }
}

std::string ProblemInstance::describe() const {
    std::string out = "S=(";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(elements_[i]);
    }
    out += "), d=" + std::to_string(d_);
    return out;
}

std::string to_string(SubgroupClass cls) {
    switch (cls) {
        case SubgroupClass::D0: return "D0";
        case SubgroupClass::D1: return "D1";
        case SubgroupClass::D2: return "D2";
        case SubgroupClass::H: return "H";
    }
    return "?";
}

SubgroupClass active_class(std::int64_t d) {
    if (d < 1) throw DomainError("cyclotomic modulus must be positive, got " + std::to_string(d));
    if (d % 8 == 0) return SubgroupClass::D0;
    if (d % 4 == 0) return SubgroupClass::D1;
    return SubgroupClass::D2;
}

bool SubsetSubgroup::contains(SubsetMask m) const {
    return std::binary_search(members.begin(), members.end(), m);
}

std::int64_t sqf_of_subset(const ProblemInstance& inst, SubsetMask t) {
    if (t > inst.full_mask()) throw DomainError("subset mask exceeds instance size");
    SubsetState st = state_of(inst, t);
    std::int64_t v = st.negative ? -1 : 1;
    for (std::size_t w = 0; w < st.words.size(); ++w) {
        std::uint64_t bits = st.words[w];
        while (bits) {
            int b = std::countr_zero(bits);
            bits &= bits - 1;
            v = checked_mul(v, inst.prime_universe()[(w << 6) + static_cast<std::size_t>(b)]);
        }
    }
    return v;
}

SubsetSubgroup subgroup(const ProblemInstance& inst, SubgroupClass cls) {
    const std::uint64_t total = std::uint64_t{1} << inst.n();
    const std::uint64_t chunk = std::uint64_t{1} << 14;
    const std::int64_t nchunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
    std::vector<std::vector<SubsetMask>> parts(static_cast<std::size_t>(nchunks));

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::uint64_t k0 = static_cast<std::uint64_t>(c) * chunk;
        const std::uint64_t k1 = std::min(total, k0 + chunk);
        // Walk the masks in Gray order so consecutive states differ in one
        // element; g(k) and g(k+1) differ at bit ctz(k+1).
        SubsetMask mask = static_cast<SubsetMask>(k0 ^ (k0 >> 1));
        SubsetState st = state_of(inst, mask);
        std::vector<SubsetMask>& out = parts[static_cast<std::size_t>(c)];
        for (std::uint64_t k = k0; k < k1; ++k) {
            if (state_in_class(inst, st, cls)) out.push_back(mask);
            if (k + 1 < k1) {
                int j = std::countr_zero(k + 1);
                mask ^= SubsetMask{1} << j;
                flip_element(inst, j, st);
            }
        }
    }

    SubsetSubgroup g;
    g.cls = cls;
    if (cls != SubgroupClass::H) g.modulus = inst.d();
    for (const auto& part : parts) g.members.insert(g.members.end(), part.begin(), part.end());
    std::sort(g.members.begin(), g.members.end());
    verify_closed(g);
    return g;
}

SubsetSubgroup subgroup_serial(const ProblemInstance& inst, SubgroupClass cls) {
    const std::uint64_t total = std::uint64_t{1} << inst.n();
    SubsetSubgroup g;
    g.cls = cls;
    if (cls != SubgroupClass::H) g.modulus = inst.d();
    for (std::uint64_t m = 0; m < total; ++m) {
        SubsetMask mask = static_cast<SubsetMask>(m);
        if (state_in_class(inst, state_of(inst, mask), cls)) g.members.push_back(mask);
    }
    verify_closed(g);
    return g;
}

CosetDecomposition coset_decomposition(const ProblemInstance& inst, const SubsetSubgroup& sub) {
    if (sub.members.empty() || sub.members.back() > inst.full_mask())
        throw DomainError("subgroup does not fit this instance");
    const std::uint64_t total = std::uint64_t{1} << inst.n();
    std::vector<bool> seen(total, false);
    CosetDecomposition out;
    out.subgroup = sub;
    out.cosets.reserve(static_cast<std::size_t>(total / sub.members.size()));
    for (std::uint64_t m = 0; m < total; ++m) {
        if (seen[m]) continue;
        Coset c;
        c.representative = static_cast<SubsetMask>(m);
        c.members.reserve(sub.members.size());
        for (SubsetMask h : sub.members) {
            SubsetMask x = c.representative ^ h;
            seen[x] = true;
            c.members.push_back(x);
        }
        std::sort(c.members.begin(), c.members.end());
        c.common_sqf = sqf_of_subset(inst, c.representative);
        if (sub.cls == SubgroupClass::H) {
            for (SubsetMask x : c.members)
                if (sqf_of_subset(inst, x) != c.common_sqf)
                    throw ConsistencyError("coset of H mixes squarefree values");
        }
        out.cosets.push_back(std::move(c));
    }
    if (sub.cls == SubgroupClass::H) {
        std::vector<std::int64_t> values;
        values.reserve(out.cosets.size());
        for (const Coset& c : out.cosets) values.push_back(c.common_sqf);
        std::sort(values.begin(), values.end());
        if (std::adjacent_find(values.begin(), values.end()) != values.end())
            throw ConsistencyError("distinct cosets of H share a squarefree value");
    }
    return out;
}

std::int64_t quotient_order(const ProblemInstance& inst, SubgroupClass cls) {
    if (cls == SubgroupClass::H)
        throw DomainError("quotient order is defined for the divisor classes, not H");
    SubsetSubgroup di = subgroup(inst, cls);
    SubsetSubgroup h = subgroup(inst, SubgroupClass::H);
    std::size_t inter = 0;
    for (SubsetMask m : h.members)
        if (di.contains(m)) ++inter;
    if (inter != h.members.size())
        throw ConsistencyError("H is not contained in " + to_string(cls));
    if (di.members.size() % inter != 0)
        throw ConsistencyError("subgroup order not divisible by intersection order");
    return static_cast<std::int64_t>(di.members.size() / inter);
}

std::vector<SubsetMask> xor_basis(const std::vector<SubsetMask>& masks) {
    std::array<SubsetMask, 32> rows{};
    for (SubsetMask m : masks) {
        SubsetMask x = m;
        while (x) {
            int b = 31 - std::countl_zero(x);
            if (!rows[static_cast<std::size_t>(b)]) {
                rows[static_cast<std::size_t>(b)] = x;
                break;
            }
            x ^= rows[static_cast<std::size_t>(b)];
        }
    }
    std::vector<SubsetMask> basis;
    for (int b = 31; b >= 0; --b)
        if (rows[static_cast<std::size_t>(b)]) basis.push_back(rows[static_cast<std::size_t>(b)]);
    return basis;
}

}  // namespace mqgal
