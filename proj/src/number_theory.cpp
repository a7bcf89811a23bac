#include "mahler/number_theory.hpp"

#include <array>
#include <string>

#include "mahler/errors.hpp"

namespace mahler {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  a %= n;
  if (a == 0) return false;
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

int euler_criterion(std::int64_t k, std::int64_t p) {
  std::int64_t r = k % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  const auto e = pow_mod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((p - 1) / 2),
                         static_cast<std::uint64_t>(p));
  return e == 1 ? 1 : -1;
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 7> small{2, 3, 5, 7, 11, 13, 17};
  for (auto q : small) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  if (n < 19 * 19) return true;

  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }

  if (n < 341550071728321ULL) {
    for (auto a : small) {
      if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
  }
  static constexpr std::array<std::uint64_t, 7> wide{2,      325,     9375,      28178,
                                                     450775, 9780504, 1795265022};
  for (auto a : wide) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

int legendre_symbol(std::int64_t k, std::int64_t p) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw DomainError("legendre_symbol: modulus " + std::to_string(p) + " is not an odd prime");
  }
  return euler_criterion(k, p);
}

}  // namespace mahler
