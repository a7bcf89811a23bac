#include <doctest.h>

#include <numbers>

#include "mahler/errors.hpp"
#include "mahler/evaluator.hpp"
#include "mahler/fft.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/random.hpp"
#include "oracles.hpp"

using namespace mahler;

namespace {

double max_abs_error(const std::vector<std::complex<double>>& got, const std::vector<oracle::cld>& want) {
  double e = 0;
  for (std::size_t j = 0; j < got.size(); ++j) {
    const oracle::cld g{got[j].real(), got[j].imag()};
    e = std::max(e, static_cast<double>(std::abs(g - want[j])));
  }
  return e;
}

}  // namespace

TEST_CASE("evaluate_at_roots small examples") {
  const auto s = evaluate_at_roots(SignPolynomial({1, 1}), 4);
  REQUIRE(s.m == 4);
  CHECK(std::abs(s.values[0] - std::complex<double>(2, 0)) < 1e-15);
  CHECK(std::abs(s.values[1] - std::complex<double>(1, 1)) < 1e-15);
  CHECK(std::abs(s.values[2]) < 1e-15);
  CHECK(std::abs(s.values[3] - std::complex<double>(1, -1)) < 1e-15);

  const auto c = evaluate_at_roots(SignPolynomial({1}), 2);
  CHECK(c.values[0] == std::complex<double>(1, 0));
  CHECK(c.values[1] == std::complex<double>(1, 0));

  // P_2 at the 4th roots against per-point Horner.
  const SignPolynomial p2 = rudin_shapiro(2).p;
  const auto v = evaluate_at_roots(p2, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    const auto h = oracle::horner(p2.coeffs(), 2.0L * std::numbers::pi_v<long double> * j / 4.0L);
    CHECK(std::abs(oracle::cld(v.values[j].real(), v.values[j].imag()) - h) < 1e-12);
  }
  CHECK(std::abs(v.values[1] - std::complex<double>(0, 2)) < 1e-15);  // P_2(i) = 2i
}

TEST_CASE("evaluate_at_roots rejects undersampling") {
  CHECK_THROWS_AS(evaluate_at_roots(rudin_shapiro(3).p, 4), UndersamplingError);
  CHECK_NOTHROW(evaluate_at_roots(rudin_shapiro(3).p, 8));
}

TEST_CASE("FFT path matches the direct DFT oracle") {
  SplitMix64 rng(99);
  for (std::size_t deg : {0u, 1u, 5u, 63u, 200u, 1023u}) {
    const SignPolynomial f = random_littlewood(deg, rng);
    for (std::size_t m : {std::bit_ceil(deg + 1), 4 * std::bit_ceil(deg + 1)}) {
      const auto s = evaluate_at_roots(f, m);
      const double err = max_abs_error(s.values, oracle::dft(f.coeffs(), m));
      CHECK_MESSAGE(err <= 1e-10 * std::sqrt(static_cast<double>(deg + 1)), "deg=" << deg << " m=" << m);
      CHECK(err <= 1e-13 * static_cast<double>(deg + 1) + 1e-14);
    }
  }
}

TEST_CASE("non power-of-two grids use Horner") {
  const auto s = evaluate_at_roots(fekete(5), 5);
  CHECK(std::abs(s.values[0]) < 1e-14);
  for (std::size_t j = 1; j < 5; ++j) CHECK(std::abs(s.values[j]) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));

  const auto t = evaluate_at_roots_any(SignPolynomial({1, -1}), 2);
  CHECK(std::abs(t.values[0]) < 1e-15);
  CHECK(std::abs(t.values[1] - std::complex<double>(2, 0)) < 1e-15);

  const auto u = evaluate_at_roots_any(fekete(7), 7);
  for (std::size_t j = 1; j < 7; ++j) CHECK(std::abs(u.values[j]) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-14));

  SplitMix64 rng(5);
  const SignPolynomial f = random_littlewood(300, rng);
  for (std::size_t m : {301u, 777u, 1000u}) {
    const auto s2 = evaluate_at_roots(f, m);
    CHECK(max_abs_error(s2.values, oracle::dft(f.coeffs(), m)) < 1e-12);
  }
}

TEST_CASE("FFT and Horner agree on random indices for P_n, n <= 18") {
  SplitMix64 rng(18);
  for (int n : {4, 10, 14, 18}) {
    const SignPolynomial p = rudin_shapiro(n).p;
    const std::size_t m = 2 * p.size();
    const auto s = evaluate_at_roots(p, m);
    double worst = 0;
    for (int t = 0; t < 64; ++t) {
      const std::size_t j = rng.next() % m;
      const auto h = horner_compensated(p.coeffs(), unit_root(static_cast<std::int64_t>(j), static_cast<std::int64_t>(m)));
      const double scale = std::max(std::abs(h), std::sqrt(static_cast<double>(p.size())));
      worst = std::max(worst, std::abs(s.values[j] - h) / scale);
    }
    CHECK_MESSAGE(worst <= 1e-9, "n=" << n);
  }
}

TEST_CASE("conjugate symmetry") {
  SplitMix64 rng(3);
  const SignPolynomial f = random_littlewood(500, rng);
  const auto s = evaluate_at_roots(f, 2048);
  double e = 0;
  for (std::size_t j = 1; j < s.m; ++j) e = std::max(e, std::abs(s.values[s.m - j] - std::conj(s.values[j])));
  CHECK(e < 1e-11);
}

TEST_CASE("evaluate_point") {
  CHECK(std::abs(evaluate_point(rudin_shapiro(1).p, std::numbers::pi)) < 1e-15);
  CHECK(evaluate_point(rudin_shapiro(2).p, 0.0) == std::complex<double>(2, 0));
  CHECK(evaluate_point(rudin_shapiro(2).q, 0.0) == std::complex<double>(2, 0));
  SplitMix64 rng(8);
  const SignPolynomial f = random_littlewood(5000, rng);
  for (int t = 0; t < 10; ++t) {
    const double theta = 2 * std::numbers::pi * rng.uniform();
    const auto got = evaluate_point(f, theta);
    const auto want = oracle::horner(f.coeffs(), theta);
    CHECK(std::abs(oracle::cld(got.real(), got.imag()) - want) < 1e-10);
  }
}

TEST_CASE("interpolate off-grid values") {
  SplitMix64 rng(21);
  const SignPolynomial f = random_littlewood(127, rng);
  const auto s = evaluate_at_roots(f, 512);
  for (int t = 0; t < 20; ++t) {
    const double theta = -3.0 + 12.0 * rng.uniform();
    CHECK(std::abs(interpolate(s, theta) - evaluate_point(f, theta)) < 1e-11);
  }
  CHECK(interpolate(s, 2 * std::numbers::pi * 5 / 512) == s.values[5]);

  const auto odd = evaluate_at_roots(f, 300);
  CHECK(std::abs(interpolate(odd, 0.1234) - evaluate_point(f, 0.1234)) < 1e-11);
}

TEST_CASE("shifted grid evaluator") {
  SplitMix64 rng(31);
  const SignPolynomial f = random_littlewood(200, rng);
  const std::size_t m = 1024;
  const ShiftedGridEvaluator grid(f, m);
  for (double shift : {0.0, 1e-4, 0.003, -0.002}) {
    const auto v = grid.evaluate(shift);
    double e = 0;
    for (std::size_t j = 0; j < m; j += 7) {
      const auto want = oracle::horner(f.coeffs(), 2.0L * std::numbers::pi_v<long double> * j / m + shift);
      e = std::max(e, static_cast<double>(std::abs(oracle::cld(v[j].real(), v[j].imag()) - want)));
    }
    CHECK_MESSAGE(e < 1e-12, "shift=" << shift);
  }
  // Weighted form: derivative coefficients i k a_k give f'(e^{it}) * i e^{it}.
  std::vector<std::complex<double>> w(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) w[k] = {0.0, static_cast<double>(k)};
  std::vector<std::complex<double>> out(m);
  grid.evaluate_weighted(w, 0.0, out);
  const auto plain = grid.evaluate(1e-7);
  const auto base = grid.evaluate(0.0);
  for (std::size_t j = 0; j < m; j += 97) {
    const auto fd = (plain[j] - base[j]) / 1e-7;
    CHECK(std::abs(fd - out[j]) < 1e-3 * std::max(1.0, std::abs(out[j])));
  }
  CHECK_THROWS_AS(ShiftedGridEvaluator(f, 1000), DomainError);
  CHECK_THROWS_AS(ShiftedGridEvaluator(f, 128), UndersamplingError);
}

TEST_CASE("flatness transports to any grid m >= N") {
  for (int n : {3, 8, 12}) {
    const auto pair = rudin_shapiro(n);
    for (std::size_t m : {pair.N, 3 * pair.N, 8 * pair.N}) {
      const auto p = evaluate_at_roots(pair.p, m);
      const auto q = evaluate_at_roots(pair.q, m);
      double e = 0;
      for (std::size_t j = 0; j < m; ++j) {
        e = std::max(e, std::abs(std::norm(p.values[j]) + std::norm(q.values[j]) - 2.0 * pair.N));
      }
      CHECK(e <= 1e-8 * pair.N);
    }
  }
}
