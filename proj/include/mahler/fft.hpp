#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace mahler {

// Iterative radix-2 FFT with a precomputed twiddle table. Twiddles are
// evaluated directly with cos/sin (no recurrence) so the transform error
// stays O(eps log n).
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  // x[j] <- sum_k x[k] exp(+2 pi i j k / n), unscaled. This is evaluation of
  // the polynomial sum_k x[k] z^k at the n-th roots of unity.
  void evaluate(std::span<std::complex<double>> x) const;

  // x[j] <- sum_k x[k] exp(-2 pi i j k / n), unscaled.
  void forward(std::span<std::complex<double>> x) const;

  // exp(2 pi i k / n) for 0 <= k < n/2.
  std::span<const std::complex<double>> twiddles() const { return twiddle_; }

 private:
  void permute(std::span<std::complex<double>> x) const;

  std::size_t n_;
  unsigned log2n_;
  std::vector<std::complex<double>> twiddle_;
};

/// Shared, lazily built plan for size n (a power of two). Thread safe.
std::shared_ptr<const FftPlan> fft_plan(std::size_t n);

/// exp(2 pi i r / m) for integer r, with r reduced mod m exactly and the
/// angle folded into [0, pi/4] before calling sin/cos.
std::complex<double> unit_root(std::int64_t r, std::int64_t m);

}  // namespace mahler
