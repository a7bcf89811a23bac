#include "mahler/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "mahler/errors.hpp"
#include "mahler/number_theory.hpp"
#include "mahler/random.hpp"

namespace mahler {

namespace {

void require_odd_prime(std::int64_t p, const char* who) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw DomainError(std::string(who) + ": " + std::to_string(p) + " is not an odd prime");
  }
}

bool all_unimodular(const std::vector<std::int8_t>& c) {
  return std::all_of(c.begin(), c.end(), [](std::int8_t a) { return a == 1 || a == -1; });
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::rudin_shapiro_P:
      return "rudin_shapiro_P";
    case Family::rudin_shapiro_Q:
      return "rudin_shapiro_Q";
    case Family::fekete_f:
      return "fekete_f";
    case Family::fekete_g:
      return "fekete_g";
    case Family::custom:
      return "custom";
  }
  return "custom";
}

SignPolynomial::SignPolynomial(std::vector<std::int8_t> coeffs, Family family)
    : coeffs_(std::move(coeffs)), family_(family) {
  if (coeffs_.empty()) throw ParseError("sign polynomial: empty coefficient list");
  for (auto a : coeffs_) {
    if (a < -1 || a > 1) throw ParseError("sign polynomial: coefficient outside {-1,0,1}");
  }
  if (coeffs_.back() == 0) throw ParseError("sign polynomial: leading coefficient is zero");

  switch (family_) {
    case Family::rudin_shapiro_P:
    case Family::rudin_shapiro_Q:
      if (!all_unimodular(coeffs_) || !std::has_single_bit(coeffs_.size())) {
        throw ParseError("sign polynomial: Rudin-Shapiro member needs 2^n coefficients in {-1,1}");
      }
      break;
    case Family::fekete_f:
      if (coeffs_.front() != 0 || coeffs_.size() < 3 || !is_prime(coeffs_.size())) {
        throw ParseError("sign polynomial: Fekete f_p needs p coefficients with f_p(0) = 0");
      }
      break;
    case Family::fekete_g:
      if (!all_unimodular(coeffs_) || !is_prime(coeffs_.size() + 1)) {
        throw ParseError("sign polynomial: Fekete g_p needs p-1 coefficients in {-1,1}");
      }
      break;
    case Family::custom:
      break;
  }
}

bool SignPolynomial::is_littlewood() const { return all_unimodular(coeffs_); }

NormalizedPolynomial::NormalizedPolynomial(SignPolynomial base, double scale)
    : base_(std::move(base)), scale_(scale) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw DomainError("normalized polynomial: scale must be positive and finite");
  }
}

RudinShapiroPair rudin_shapiro(int n, int cap) {
  if (n < 0) throw DomainError("rudin_shapiro: n must be nonnegative");
  if (n > cap) {
    throw SizeError("rudin_shapiro: n = " + std::to_string(n) + " exceeds cap " +
                    std::to_string(cap));
  }
  const std::size_t N = std::size_t{1} << static_cast<unsigned>(n);
  std::vector<std::int8_t> p(N), q(N);
  p[0] = 1;
  q[0] = 1;
  for (std::size_t half = 1; half < N; half *= 2) {
    // p|q -> new p, p|-q -> new q; the old q lives in q[0..half).
    for (std::size_t k = 0; k < half; ++k) {
      p[half + k] = q[k];
      q[half + k] = static_cast<std::int8_t>(-q[k]);
    }
    std::copy_n(p.begin(), half, q.begin());
  }
  return RudinShapiroPair{static_cast<unsigned>(n), N, SignPolynomial(std::move(p), Family::rudin_shapiro_P),
                          SignPolynomial(std::move(q), Family::rudin_shapiro_Q)};
}

SignPolynomial fekete(std::int64_t p) {
  require_odd_prime(p, "fekete");
  std::vector<std::int8_t> c(static_cast<std::size_t>(p));
  const auto half = static_cast<std::uint64_t>((p - 1) / 2);
  const auto pu = static_cast<std::uint64_t>(p);
  for (std::uint64_t k = 1; k < pu; ++k) {
    c[k] = pow_mod(k, half, pu) == 1 ? 1 : -1;
  }
  return SignPolynomial(std::move(c), Family::fekete_f);
}

SignPolynomial fekete_shifted(std::int64_t p) {
  auto f = fekete(p);
  std::vector<std::int8_t> c(f.coeffs().begin() + 1, f.coeffs().end());
  return SignPolynomial(std::move(c), Family::fekete_g);
}

SignPolynomial negate_variable(const SignPolynomial& f) {
  std::vector<std::int8_t> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = static_cast<std::int8_t>(-c[k]);
  return SignPolynomial(std::move(c), Family::custom);
}

double rudin_shapiro_scale(int n) {
  // n + 1 even: 2^{-(n+1)/2} is a power of two; otherwise one factor 2^{-1/2}.
  if ((n + 1) % 2 == 0) return std::ldexp(1.0, -(n + 1) / 2);
  return std::ldexp(std::numbers::sqrt2 / 2.0, -n / 2);
}

std::pair<NormalizedPolynomial, NormalizedPolynomial> normalize(const RudinShapiroPair& pair) {
  const double s = rudin_shapiro_scale(static_cast<int>(pair.n));
  return {NormalizedPolynomial(pair.p, s), NormalizedPolynomial(pair.q, s)};
}

SignPolynomial random_littlewood(std::size_t degree, SplitMix64& rng) {
  std::vector<std::int8_t> c(degree + 1);
  for (auto& a : c) a = (rng.next() >> 63U) != 0 ? 1 : -1;
  return SignPolynomial(std::move(c), Family::custom);
}

std::string to_text(const SignPolynomial& f) {
  std::string out;
  out.reserve(f.size());
  for (auto a : f.coeffs()) out.push_back(a > 0 ? '+' : (a < 0 ? '-' : '0'));
  return out;
}

SignPolynomial parse_text(std::string_view text, Family family) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  std::vector<std::int8_t> c;
  c.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '+':
        c.push_back(1);
        break;
      case '-':
        c.push_back(-1);
        break;
      case '0':
        c.push_back(0);
        break;
      default:
        throw ParseError("polynomial text: unexpected character at position " + std::to_string(i));
    }
  }
  return SignPolynomial(std::move(c), family);
}

}  // namespace mahler
