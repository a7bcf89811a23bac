#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mahler {

class SplitMix64;

enum class Family { rudin_shapiro_P, rudin_shapiro_Q, fekete_f, fekete_g, custom };

std::string_view to_string(Family family);

// Polynomial with coefficients in {-1, 0, 1}; index k holds the coefficient
// of z^k. Immutable once built. The constructor enforces the invariants of
// the declared family and throws ParseError on violation.
class SignPolynomial {
 public:
  explicit SignPolynomial(std::vector<std::int8_t> coeffs, Family family = Family::custom);

  std::span<const std::int8_t> coeffs() const { return coeffs_; }
  std::int8_t operator[](std::size_t k) const { return coeffs_[k]; }
  std::size_t size() const { return coeffs_.size(); }
  std::size_t degree() const { return coeffs_.size() - 1; }
  Family family() const { return family_; }

  int leading() const { return coeffs_.back(); }
  int constant() const { return coeffs_.front(); }
  // Every coefficient is +-1.
  bool is_littlewood() const;

  bool operator==(const SignPolynomial&) const = default;

 private:
  std::vector<std::int8_t> coeffs_;
  Family family_;
};

struct RudinShapiroPair {
  unsigned n = 0;
  std::size_t N = 1;  // 2^n, the common length of p and q
  SignPolynomial p;
  SignPolynomial q;
};

// scale * base, used for the unit-sup-norm normalisation of Rudin-Shapiro
// polynomials (scale = 2^{-(n+1)/2}).
class NormalizedPolynomial {
 public:
  NormalizedPolynomial(SignPolynomial base, double scale);

  const SignPolynomial& base() const { return base_; }
  double scale() const { return scale_; }

 private:
  SignPolynomial base_;
  double scale_;
};

inline constexpr int kMaxRudinShapiroDepth = 26;

/// P_n and Q_n built by iterated concatenation: P_{k+1} = P_k | Q_k and
/// Q_{k+1} = P_k | -Q_k. Throws SizeError when n exceeds `cap`.
RudinShapiroPair rudin_shapiro(int n, int cap = kMaxRudinShapiroDepth);

/// Coefficients (k/p) for k = 0..p-1.
SignPolynomial fekete(std::int64_t p);

/// fekete(p) divided by z: the Littlewood polynomial of degree p - 2.
SignPolynomial fekete_shifted(std::int64_t p);

/// f(-z). The result is labelled custom.
SignPolynomial negate_variable(const SignPolynomial& f);

/// Both members of the pair scaled by 2^{-(n+1)/2}.
std::pair<NormalizedPolynomial, NormalizedPolynomial> normalize(const RudinShapiroPair& pair);

/// Exact value 2^{-(n+1)/2}.
double rudin_shapiro_scale(int n);

/// Uniformly random Littlewood polynomial with degree + 1 coefficients.
SignPolynomial random_littlewood(std::size_t degree, SplitMix64& rng);

// Text form: one character per coefficient in increasing degree,
// '+' for 1, '-' for -1, '0' for 0. P_2 is "+++-".
std::string to_text(const SignPolynomial& f);
SignPolynomial parse_text(std::string_view text, Family family = Family::custom);

}  // namespace mahler
