#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mqgal/errors.hpp"

namespace mqgal {

/// Sign and prime factorization of a non-zero 64-bit integer.
/// Primes are strictly increasing, exponents >= 1; value() reconstructs
/// the original integer exactly.
struct FactoredInt {
    int sign = 1;  // -1 or +1
    std::vector<std::pair<std::int64_t, int>> factors;

    std::int64_t value() const;
};

/// Primes in the half-open range (lo, hi].
struct PrimeRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::vector<std::int64_t> primes;
};

/// Deterministic trial division with a mod-30 wheel. n != 0, |n| <= 2^63-1.
FactoredInt factor(std::int64_t n);

/// Squarefree part: sign(n) * product of primes with odd exponent.
/// sqf(n*m^2) == sqf(n) for any m != 0.
std::int64_t sqf(std::int64_t n);
std::int64_t sqf(const FactoredInt& f);

bool is_squarefree(std::int64_t n);
bool is_prime(std::int64_t n);

/// Euler phi, multiplicative from the factorization. d >= 1.
std::int64_t euler_phi(std::int64_t d);

/// Kronecker symbol (a/n) on the full domain, with the standard extension
/// rules at n in {0, -1} and for even n. Completely multiplicative in each
/// argument; equals the Legendre symbol when n is an odd prime.
int kronecker(std::int64_t a, std::int64_t n);

/// Discriminant of Q(sqrt(s)) for squarefree s != 0: s if s = 1 mod 4, else 4s.
/// The Kronecker character of the result is the primitive quadratic character
/// attached to the field; its conductor is the absolute value of the result.
std::int64_t fundamental_discriminant(std::int64_t s);

/// Segmented sieve of Eratosthenes over (lo, hi], parallel over segments.
/// Requires 0 <= lo < hi <= 10^9; memory stays bounded by the segment size.
PrimeRange sieve(std::int64_t lo, std::int64_t hi);

/// Plain flat-array sieve, kept as the reference implementation for tests
/// and benchmarks. Same contract as sieve().
PrimeRange sieve_serial(std::int64_t lo, std::int64_t hi);

/// a mod m normalized into [0, m). m > 0.
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// a*b with overflow detection.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// lcm with overflow detection. a, b > 0.
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

/// Multiplicative inverse of a mod m, gcd(a, m) == 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

namespace detail {

/// Primes <= limit by a simple sieve.
std::vector<std::int64_t> simple_sieve(std::int64_t limit);

/// Appends the primes in (lo, hi] to out, crossing off with base_primes
/// (which must cover sqrt(hi)).
void sieve_segment(std::int64_t lo, std::int64_t hi,
                   const std::vector<std::int64_t>& base_primes,
                   std::vector<std::int64_t>& out);

}  // namespace detail

}  // namespace mqgal
