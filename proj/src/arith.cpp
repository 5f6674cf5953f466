#include "mqgal/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mqgal {

namespace {

constexpr std::int64_t kSieveLimit = 1'000'000'000;
constexpr std::int64_t kSegmentSize = 1 << 18;

// Wheel increments after 7 for the 2-3-5 wheel.
constexpr int kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};

}  // namespace

std::int64_t FactoredInt::value() const {
    std::int64_t v = sign;
    for (const auto& [p, e] : factors)
        for (int i = 0; i < e; ++i) v = checked_mul(v, p);
    return v;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw CapacityError("integer product overflows 64 bits");
    return r;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    if (a <= 0 || b <= 0) throw DomainError("lcm requires positive arguments");
    return checked_mul(a / std::gcd(a, b), b);
}

FactoredInt factor(std::int64_t n) {
    if (n == 0) throw DomainError("factor: zero has no factorization");
    if (n == INT64_MIN) throw CapacityError("factor: |n| exceeds 2^63-1");

    FactoredInt out;
    out.sign = n < 0 ? -1 : 1;
    std::int64_t m = n < 0 ? -n : n;

    auto strip = [&](std::int64_t p) {
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e > 0) out.factors.emplace_back(p, e);
    };

    strip(2);
    strip(3);
    strip(5);
    std::int64_t p = 7;
    int w = 0;
    while (p <= m / p) {
        strip(p);
        p += kWheel[w];
        w = (w + 1) & 7;
    }
    if (m > 1) out.factors.emplace_back(m, 1);
    return out;
}

std::int64_t sqf(const FactoredInt& f) {
    std::int64_t v = f.sign;
    for (const auto& [p, e] : f.factors)
        if (e & 1) v = checked_mul(v, p);
    return v;
}

std::int64_t sqf(std::int64_t n) {
    if (n == 0) throw DomainError("sqf: undefined at zero");
    return sqf(factor(n));
}

bool is_squarefree(std::int64_t n) {
    if (n == 0) return false;
    const auto f = factor(n);
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const auto& pe) { return pe.second == 1; });
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0 || n % 5 == 0) return n == 5;
    std::int64_t p = 7;
    int w = 0;
    while (p <= n / p) {
        if (n % p == 0) return false;
        p += kWheel[w];
        w = (w + 1) & 7;
    }
    return true;
}

std::int64_t euler_phi(std::int64_t d) {
    if (d <= 0) throw DomainError("euler_phi: requires d >= 1");
    std::int64_t phi = 1;
    for (const auto& [p, e] : factor(d).factors) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

int kronecker(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a == INT64_MIN || n == INT64_MIN)
        throw CapacityError("kronecker: |argument| exceeds 2^63-1");
    if ((a & 1) == 0 && (n & 1) == 0) return 0;

    int k = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // (a/2) per factor of 2 in n: depends on a mod 8.
    int v2 = 0;
    while ((n & 1) == 0) { n >>= 1; ++v2; }
    if (v2 & 1) {
        const std::int64_t r = a & 7;
        if (r == 3 || r == 5) k = -k;
    }
    // Jacobi loop for odd positive n.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const std::int64_t r = n & 7;
            if (r == 3 || r == 5) k = -k;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) k = -k;
        a %= n;
    }
    return n == 1 ? k : 0;
}

std::int64_t fundamental_discriminant(std::int64_t s) {
    if (!is_squarefree(s))
        throw DomainError("fundamental_discriminant: input must be squarefree and non-zero");
    return mod_floor(s, 4) == 1 ? s : checked_mul(4, s);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    if (m <= 0) throw DomainError("mod_inverse: modulus must be positive");
    std::int64_t r0 = m, r1 = mod_floor(a, m);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    if (r0 != 1) throw DomainError("mod_inverse: arguments not coprime");
    return mod_floor(t0, m);
}

namespace detail {

std::vector<std::int64_t> simple_sieve(std::int64_t limit) {
    std::vector<std::int64_t> primes;
    if (limit < 2) return primes;
    std::vector<std::uint8_t> composite(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (std::int64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

void sieve_segment(std::int64_t lo, std::int64_t hi,
                   const std::vector<std::int64_t>& base_primes,
                   std::vector<std::int64_t>& out) {
    // Marks composites in (lo, hi]; base_primes must reach sqrt(hi).
    const std::int64_t first = std::max<std::int64_t>(lo + 1, 2);
    if (first > hi) return;
    const std::size_t len = static_cast<std::size_t>(hi - first + 1);
    std::vector<std::uint8_t> composite(len, 0);
    for (const std::int64_t p : base_primes) {
        if (p * p > hi) break;
        std::int64_t start = std::max(p * p, ((first + p - 1) / p) * p);
        for (std::int64_t j = start; j <= hi; j += p) composite[j - first] = 1;
    }
    for (std::size_t i = 0; i < len; ++i)
        if (!composite[i]) out.push_back(first + static_cast<std::int64_t>(i));
}

}  // namespace detail

static void check_sieve_range(std::int64_t lo, std::int64_t hi) {
    if (lo < 0 || lo >= hi)
        throw DomainError("sieve: need 0 <= lo < hi, got [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    if (hi > kSieveLimit) throw DomainError("sieve: hi exceeds 10^9");
}

PrimeRange sieve(std::int64_t lo, std::int64_t hi) {
    check_sieve_range(lo, hi);
    const auto base = detail::simple_sieve(
        static_cast<std::int64_t>(std::sqrt(static_cast<double>(hi))) + 1);

    const std::int64_t nseg = (hi - lo + kSegmentSize - 1) / kSegmentSize;
    std::vector<std::vector<std::int64_t>> parts(static_cast<std::size_t>(nseg));

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < nseg; ++s) {
        const std::int64_t a = lo + s * kSegmentSize;
        const std::int64_t b = std::min(hi, a + kSegmentSize);
        detail::sieve_segment(a, b, base, parts[static_cast<std::size_t>(s)]);
    }

    PrimeRange out;
    out.lo = lo;
    out.hi = hi;
    std::size_t total = 0;
    for (const auto& part : parts) total += part.size();
    out.primes.reserve(total);
    for (const auto& part : parts) out.primes.insert(out.primes.end(), part.begin(), part.end());
    return out;
}

PrimeRange sieve_serial(std::int64_t lo, std::int64_t hi) {
    check_sieve_range(lo, hi);
    std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
    for (std::int64_t i = 2; i * i <= hi; ++i)
        if (!composite[static_cast<std::size_t>(i)])
            for (std::int64_t j = i * i; j <= hi; j += i)
                composite[static_cast<std::size_t>(j)] = true;
    PrimeRange out;
    out.lo = lo;
    out.hi = hi;
    for (std::int64_t p = std::max<std::int64_t>(lo + 1, 2); p <= hi; ++p)
        if (!composite[static_cast<std::size_t>(p)]) out.primes.push_back(p);
    return out;
}

}  // namespace mqgal
