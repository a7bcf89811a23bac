#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "mahler/errors.hpp"
#include "mahler/number_theory.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/random.hpp"
#include "oracles.hpp"

using namespace mahler;

namespace {

std::vector<int> as_ints(const SignPolynomial& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

}  // namespace

TEST_CASE("rudin_shapiro small pairs") {
  auto p0 = rudin_shapiro(0);
  CHECK(p0.N == 1);
  CHECK(as_ints(p0.p) == std::vector<int>{1});
  CHECK(as_ints(p0.q) == std::vector<int>{1});

  auto p1 = rudin_shapiro(1);
  CHECK(as_ints(p1.p) == std::vector<int>{1, 1});
  CHECK(as_ints(p1.q) == std::vector<int>{1, -1});

  auto p2 = rudin_shapiro(2);
  CHECK(as_ints(p2.p) == std::vector<int>{1, 1, 1, -1});
  CHECK(as_ints(p2.q) == std::vector<int>{1, 1, -1, 1});
  CHECK(p2.p.family() == Family::rudin_shapiro_P);
  CHECK(p2.q.family() == Family::rudin_shapiro_Q);
}

TEST_CASE("rudin_shapiro concatenation structure up to n = 20") {
  RudinShapiroPair prev = rudin_shapiro(0);
  for (int n = 1; n <= 20; ++n) {
    const RudinShapiroPair cur = rudin_shapiro(n);
    REQUIRE(cur.N == (std::size_t{1} << n));
    REQUIRE(cur.p.size() == cur.N);
    REQUIRE(cur.q.size() == cur.N);
    const std::size_t h = cur.N / 2;
    bool ok = true;
    for (std::size_t k = 0; k < h; ++k) {
      ok = ok && cur.p[k] == prev.p[k] && cur.p[h + k] == prev.q[k];
      ok = ok && cur.q[k] == cur.p[k] && cur.q[h + k] == -cur.p[h + k];
    }
    CHECK_MESSAGE(ok, "n = " << n);
    long long squares = 0;
    for (auto c : cur.p.coeffs()) squares += c * c;
    CHECK(squares == static_cast<long long>(cur.N));
    prev = cur;
  }
}

TEST_CASE("rudin_shapiro limits") {
  CHECK_THROWS_AS(rudin_shapiro(-1), DomainError);
  CHECK_THROWS_AS(rudin_shapiro(kMaxRudinShapiroDepth + 1), SizeError);
  CHECK_THROWS_AS(rudin_shapiro(5, 4), SizeError);
}

TEST_CASE("legendre symbol examples and errors") {
  CHECK(legendre_symbol(2, 7) == 1);
  CHECK(legendre_symbol(3, 7) == -1);
  CHECK(legendre_symbol(7, 7) == 0);
  CHECK(legendre_symbol(-1, 7) == -1);
  CHECK(legendre_symbol(-1, 5) == 1);
  CHECK(legendre_symbol(16, 7) == 1);
  CHECK_THROWS_AS(legendre_symbol(1, 9), DomainError);
  CHECK_THROWS_AS(legendre_symbol(1, 2), DomainError);
  CHECK_THROWS_AS(legendre_symbol(1, 1), DomainError);
  CHECK_THROWS_AS(legendre_symbol(1, -7), DomainError);
}

TEST_CASE("legendre symbol matches quadratic residues") {
  for (std::int64_t p : {3, 5, 7, 11, 13, 101, 1009}) {
    const auto qr = oracle::quadratic_residues(p);
    for (std::int64_t k = 0; k < p; ++k) {
      const int expected = k == 0 ? 0 : (qr.count(k) ? 1 : -1);
      REQUIRE(legendre_symbol(k, p) == expected);
    }
  }
}

TEST_CASE("legendre symbol is completely multiplicative") {
  SplitMix64 rng(2024);
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 3; p <= 10007; ++p) {
    if (oracle::is_prime_trial(p)) primes.push_back(p);
  }
  for (int t = 0; t < 2000; ++t) {
    const std::int64_t p = primes[rng.next() % primes.size()];
    const auto a = static_cast<std::int64_t>(rng.next() % 100000);
    const auto b = static_cast<std::int64_t>(rng.next() % 100000);
    REQUIRE(legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p));
  }
}

TEST_CASE("is_prime agrees with trial division") {
  for (std::int64_t n = 0; n < 100000; ++n) {
    REQUIRE(is_prime(static_cast<std::uint64_t>(n)) == oracle::is_prime_trial(n));
  }
  CHECK(is_prime(2305843009213693951ULL));       // 2^61 - 1
  CHECK_FALSE(is_prime(3215031751ULL));          // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(341550071728321ULL));     // strong pseudoprime to bases 2..17
  CHECK(is_prime(18446744073709551557ULL));      // largest 64-bit prime
}

TEST_CASE("fekete polynomials") {
  CHECK(as_ints(fekete(5)) == std::vector<int>{0, 1, -1, -1, 1});
  CHECK(as_ints(fekete(3)) == std::vector<int>{0, 1, -1});
  CHECK(as_ints(fekete(7)) == std::vector<int>{0, 1, 1, -1, 1, -1, -1});
  CHECK(as_ints(fekete_shifted(5)) == std::vector<int>{1, -1, -1, 1});
  CHECK(as_ints(fekete_shifted(3)) == std::vector<int>{1, -1});
  CHECK(as_ints(fekete_shifted(7)) == std::vector<int>{1, 1, -1, 1, -1, -1});
  CHECK(fekete_shifted(101).is_littlewood());
  CHECK(fekete_shifted(101).degree() == 99);
  CHECK_THROWS_AS(fekete(9), DomainError);
  CHECK_THROWS_AS(fekete_shifted(2), DomainError);

  for (std::int64_t p : {3, 5, 7, 101, 1009, 10007}) {
    const SignPolynomial f = fekete(p);
    CHECK(f.family() == Family::fekete_f);
    const int sum = std::accumulate(f.coeffs().begin(), f.coeffs().end(), 0);
    CHECK(sum == 0);
  }
}

TEST_CASE("family invariants are enforced") {
  CHECK_THROWS_AS(SignPolynomial({1, 2}), ParseError);
  CHECK_THROWS_AS(SignPolynomial({1, 0}), ParseError);
  CHECK_THROWS_AS(SignPolynomial({}), ParseError);
  CHECK_THROWS_AS(SignPolynomial({1, 1, 1}, Family::rudin_shapiro_P), ParseError);
  CHECK_THROWS_AS(SignPolynomial({1, 0, 1, 1}, Family::rudin_shapiro_Q), ParseError);
  CHECK_THROWS_AS(SignPolynomial({1, 1, -1}, Family::fekete_f), ParseError);
  CHECK_THROWS_AS(SignPolynomial({0, 1, -1, -1}, Family::fekete_f), ParseError);
  CHECK_THROWS_AS(SignPolynomial({1, -1, -1}, Family::fekete_g), ParseError);
  CHECK_NOTHROW(SignPolynomial({0, 1, -1}, Family::fekete_f));
  CHECK_NOTHROW(SignPolynomial({1, 0, -1}));
}

TEST_CASE("negate_variable") {
  CHECK(as_ints(negate_variable(SignPolynomial({1, 1}))) == std::vector<int>{1, -1});
  CHECK(as_ints(negate_variable(SignPolynomial({1, 1, 1, -1}))) == std::vector<int>{1, -1, 1, 1});
  CHECK(as_ints(negate_variable(SignPolynomial({1}))) == std::vector<int>{1});
  SplitMix64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const SignPolynomial f = random_littlewood(1 + rng.next() % 200, rng);
    CHECK(as_ints(negate_variable(negate_variable(f))) == as_ints(f));
  }
}

TEST_CASE("normalize scales") {
  CHECK(normalize(rudin_shapiro(0)).first.scale() == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(normalize(rudin_shapiro(1)).first.scale() == 0.5);
  CHECK(normalize(rudin_shapiro(3)).second.scale() == 0.25);
  CHECK(rudin_shapiro_scale(7) == 1.0 / 16.0);
  const auto [p, q] = normalize(rudin_shapiro(4));
  CHECK(as_ints(p.base()) == as_ints(rudin_shapiro(4).p));
  CHECK_THROWS_AS(NormalizedPolynomial(SignPolynomial({1}), 0.0), DomainError);
  CHECK_THROWS_AS(NormalizedPolynomial(SignPolynomial({1}), -1.0), DomainError);
}

TEST_CASE("text format") {
  CHECK(to_text(rudin_shapiro(2).p) == "+++-");
  CHECK(to_text(rudin_shapiro(2).q) == "++-+");
  CHECK(to_text(fekete(5)) == "0+--+");
  CHECK(as_ints(parse_text("+-0+")) == std::vector<int>{1, -1, 0, 1});
  CHECK(as_ints(parse_text("++-\r\n")) == std::vector<int>{1, 1, -1});
  CHECK_THROWS_AS(parse_text("+x-"), ParseError);
  CHECK_THROWS_AS(parse_text(""), ParseError);
  CHECK_THROWS_AS(parse_text("+-0"), ParseError);  // zero leading coefficient
  CHECK(parse_text("+++-", Family::rudin_shapiro_P) == rudin_shapiro(2).p);
}

TEST_CASE("random_littlewood is seeded and uniform-ish") {
  SplitMix64 a(11), b(11);
  CHECK(random_littlewood(500, a) == random_littlewood(500, b));
  SplitMix64 c(12);
  const SignPolynomial f = random_littlewood(9999, c);
  CHECK(f.is_littlewood());
  CHECK(f.degree() == 9999);
  const int sum = std::accumulate(f.coeffs().begin(), f.coeffs().end(), 0);
  CHECK(std::abs(sum) < 500);  // 5 standard deviations
}
