#pragma once

#include <stdexcept>
#include <string>

namespace mqgal {

// Invalid argument values (zero where non-zero required, reversed ranges,
// ramified primes, mismatched instances, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Input exceeds a documented size limit (64-bit capacity, enumeration budget).
struct CapacityError : std::length_error {
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// A computed structure violated an identity that provably holds for valid
// inputs; indicates a bug, not bad input.
// Seeing this means an arithmetic bug, not bad input.
struct ConsistencyError : std::logic_error {
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// The quadratic symbol is not constant on the requested residue class, so
// there is no well-defined value to return.
struct ClassSymbolError : DomainError {
    explicit ClassSymbolError(const std::string& what) : DomainError(what) {}
};

// A statistical estimator was starved of primes at the requested bound.
struct InsufficientPrimesError : std::runtime_error {
    explicit InsufficientPrimesError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mqgal
