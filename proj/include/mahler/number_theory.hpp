#pragma once

#include <cstdint>

namespace mahler {

/// (base^exp) mod m with 128-bit intermediates.
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin. Uses the prime bases 2..17 below 3.4e14 and a
/// seven-base set that is exact for the whole 64-bit range above that.
bool is_prime(std::uint64_t n);

/// Legendre symbol (k/p) by Euler's criterion. k may be any integer; it is
/// reduced mod p. Throws DomainError unless p is an odd prime.
int legendre_symbol(std::int64_t k, std::int64_t p);

}  // namespace mahler
