#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mahler/polynomial.hpp"

namespace mahler {

class FftPlan;

// Values of a polynomial at the m-th roots of unity: values[j] = f(e^{2 pi i j / m}).
struct CircleSamples {
  std::size_t m = 0;
  std::vector<std::complex<double>> values;
  std::size_t source_degree = 0;

  double theta(std::size_t j) const;
};

inline constexpr std::size_t kDefaultOversample = 16;

/// Smallest power of two >= factor * (degree + 1).
std::size_t oversampled_size(std::size_t degree, std::size_t factor = kDefaultOversample);

/// Zero-padded radix-2 FFT evaluation. Throws UndersamplingError when
/// m < degree + 1; non power-of-two m is routed to evaluate_at_roots_any.
CircleSamples evaluate_at_roots(const SignPolynomial& f, std::size_t m);

/// Per-point compensated Horner at the m-th roots of unity, any m >= 1.
CircleSamples evaluate_at_roots_any(const SignPolynomial& f, std::size_t m);

/// f(e^{i theta}) by compensated Horner.
std::complex<double> evaluate_point(const SignPolynomial& f, double theta);

/// Compensated Horner at an arbitrary complex point.
std::complex<double> horner_compensated(std::span<const std::int8_t> coeffs, std::complex<double> z);

/// Trigonometric interpolation of the samples at angle theta (barycentric
/// formula on the roots of unity). Exact, up to rounding, for the source
/// polynomial because its degree is below m.
std::complex<double> interpolate(const CircleSamples& samples, double theta);

// Evaluates sum_k b_k e^{i k t} on shifted grids t_j = 2 pi j / m + shift,
// j = 0..m-1, for a fixed complex coefficient vector b. The grid is split
// into m / P cosets, each one a size-P FFT of twisted coefficients, where P
// is the smallest power of two holding b. m must be a power of two >= P.
class ShiftedGridEvaluator {
 public:
  ShiftedGridEvaluator(std::vector<std::complex<double>> coeffs, std::size_t m);
  ShiftedGridEvaluator(const SignPolynomial& f, std::size_t m);

  std::size_t m() const { return m_; }
  std::size_t length() const { return coeffs_.size(); }

  // out.size() == m.
  void evaluate(double shift, std::span<std::complex<double>> out) const;
  std::vector<std::complex<double>> evaluate(double shift) const;

  // Same grid for coefficients b_k * w_k, w supplied per call.
  void evaluate_weighted(std::span<const std::complex<double>> weights, double shift,
                         std::span<std::complex<double>> out) const;

 private:
  std::complex<double> root(std::size_t r) const;  // e^{2 pi i r / m}

  std::vector<std::complex<double>> coeffs_;
  std::size_t m_;
  std::size_t fft_size_;
  std::size_t cosets_;
  unsigned lo_bits_;
  std::vector<std::complex<double>> root_hi_;
  std::vector<std::complex<double>> root_lo_;
  std::shared_ptr<const FftPlan> plan_;
};

}  // namespace mahler
