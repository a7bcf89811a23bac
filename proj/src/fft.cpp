#include "mahler/fft.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "mahler/errors.hpp"

namespace mahler {

std::complex<double> unit_root(std::int64_t r, std::int64_t m) {
  r %= m;
  if (r < 0) r += m;
  // Octant reduction: exact integer bookkeeping, one small-angle sin/cos.
  const std::int64_t m8 = 8 * r;
  const std::int64_t oct = m8 / m;  // 0..7
  std::int64_t num = m8 - oct * m;  // angle within octant = num * (pi/4) / m
  bool mirror = (oct & 1) != 0;
  if (mirror) num = m - num;
  const double a = (std::numbers::pi / 4.0) * static_cast<double>(num) / static_cast<double>(m);
  double c = std::cos(a);
  double s = std::sin(a);
  if (mirror) std::swap(c, s);
  // Now (c, s) is the point at angle (oct*pi/4 + residual) reflected into
  // the first octant; rotate by quadrant.
  switch (oct) {
    case 0:
    case 1:
      return {c, s};
    case 2:
    case 3:
      return {-s, c};
    case 4:
    case 5:
      return {-c, -s};
    default:
      return {s, -c};
  }
}

FftPlan::FftPlan(std::size_t n) : n_(n), log2n_(0) {
  if (n == 0 || !std::has_single_bit(n)) throw DomainError("FftPlan: size must be a power of two");
  log2n_ = static_cast<unsigned>(std::countr_zero(n));
  twiddle_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddle_[k] = unit_root(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
  }
}

void FftPlan::permute(std::span<std::complex<double>> x) const {
  for (std::size_t i = 1, j = 0; i < n_; ++i) {
    std::size_t bit = n_ >> 1U;
    for (; (j & bit) != 0; bit >>= 1U) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
}

void FftPlan::evaluate(std::span<std::complex<double>> x) const {
  if (x.size() != n_) throw DomainError("FftPlan: buffer size mismatch");
  if (n_ == 1) return;
  permute(x);
  auto* d = reinterpret_cast<double*>(x.data());
  const auto* tw = reinterpret_cast<const double*>(twiddle_.data());
  for (std::size_t len = 2; len <= n_; len <<= 1U) {
    const std::size_t half = len >> 1U;
    const std::size_t stride = n_ / len;
    for (std::size_t i = 0; i < n_; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const double wr = tw[2 * k * stride];
        const double wi = tw[2 * k * stride + 1];
        double* u = d + 2 * (i + k);
        double* v = d + 2 * (i + k + half);
        const double vr = v[0] * wr - v[1] * wi;
        const double vi = v[0] * wi + v[1] * wr;
        v[0] = u[0] - vr;
        v[1] = u[1] - vi;
        u[0] += vr;
        u[1] += vi;
      }
    }
  }
}

void FftPlan::forward(std::span<std::complex<double>> x) const {
  for (auto& v : x) v = std::conj(v);
  evaluate(x);
  for (auto& v : x) v = std::conj(v);
}

std::shared_ptr<const FftPlan> fft_plan(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const FftPlan>(n);
  cache.emplace(n, plan);
  return plan;
}

}  // namespace mahler
