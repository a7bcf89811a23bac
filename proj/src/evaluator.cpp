#include "mahler/evaluator.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "mahler/errors.hpp"
#include "mahler/fft.hpp"
#include "mahler/parallel.hpp"
#include "mahler/summation.hpp"

namespace mahler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double CircleSamples::theta(std::size_t j) const {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(m);
}

std::size_t oversampled_size(std::size_t degree, std::size_t factor) {
  return std::bit_ceil(factor * (degree + 1));
}

std::complex<double> horner_compensated(std::span<const std::int8_t> coeffs, std::complex<double> z) {
  const double zr = z.real();
  const double zi = z.imag();
  const std::size_t d = coeffs.size() - 1;
  double sr = coeffs[d];
  double si = 0.0;
  double cr = 0.0;
  double ci = 0.0;
  for (std::size_t i = d; i-- > 0;) {
    const auto p1 = two_prod(sr, zr);
    const auto p2 = two_prod(si, zi);
    const auto p3 = two_prod(sr, zi);
    const auto p4 = two_prod(si, zr);
    const auto re = two_sum(p1.s, -p2.s);
    const auto im = two_sum(p3.s, p4.s);
    const auto add = two_sum(re.s, static_cast<double>(coeffs[i]));
    const double er = p1.e - p2.e + re.e + add.e;
    const double ei = p3.e + p4.e + im.e;
    const double ncr = cr * zr - ci * zi + er;
    const double nci = cr * zi + ci * zr + ei;
    cr = ncr;
    ci = nci;
    sr = add.s;
    si = im.s;
  }
  return {sr + cr, si + ci};
}

std::complex<double> evaluate_point(const SignPolynomial& f, double theta) {
  return horner_compensated(f.coeffs(), {std::cos(theta), std::sin(theta)});
}

CircleSamples evaluate_at_roots_any(const SignPolynomial& f, std::size_t m) {
  if (m == 0) throw DomainError("evaluate_at_roots_any: m must be positive");
  CircleSamples out{m, std::vector<std::complex<double>>(m), f.degree()};
  const auto mm = static_cast<std::int64_t>(m);
  parallel_for(m, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      out.values[j] = horner_compensated(f.coeffs(), unit_root(static_cast<std::int64_t>(j), mm));
    }
  });
  return out;
}

CircleSamples evaluate_at_roots(const SignPolynomial& f, std::size_t m) {
  if (m < f.size()) {
    throw UndersamplingError("evaluate_at_roots: m = " + std::to_string(m) + " < degree + 1 = " +
                             std::to_string(f.size()));
  }
  if (!std::has_single_bit(m)) return evaluate_at_roots_any(f, m);
  ShiftedGridEvaluator grid(f, m);
  return CircleSamples{m, grid.evaluate(0.0), f.degree()};
}

std::complex<double> interpolate(const CircleSamples& samples, double theta) {
  const std::size_t m = samples.m;
  const double h = kTwoPi / static_cast<double>(m);
  const double pos = theta / h;
  const double nearest = std::nearbyint(pos);
  auto j = static_cast<std::int64_t>(nearest) % static_cast<std::int64_t>(m);
  if (j < 0) j += static_cast<std::int64_t>(m);
  const double delta = theta - nearest * h;
  if (delta == 0.0) return samples.values[static_cast<std::size_t>(j)];

  const auto mm = static_cast<std::int64_t>(m);
  const std::complex<double> e_delta{-2.0 * std::pow(std::sin(delta / 2.0), 2), std::sin(delta)};  // e^{i delta} - 1
  const double md = static_cast<double>(m) * delta;
  const std::complex<double> factor =
      std::complex<double>{-2.0 * std::pow(std::sin(md / 2.0), 2), std::sin(md)} / static_cast<double>(m);
  const std::complex<double> wj = unit_root(j, mm);
  const std::complex<double> z = wj * (1.0 + e_delta);

  // Pairwise accumulation over terms, split real and imaginary parts.
  std::vector<double> re(m), im(m);
  const bool pow2 = std::has_single_bit(m);
  std::shared_ptr<const FftPlan> plan = pow2 && m >= 2 ? fft_plan(m) : nullptr;
  for (std::size_t k = 0; k < m; ++k) {
    std::complex<double> term;
    if (static_cast<std::int64_t>(k) == j) {
      term = samples.values[k] / e_delta;
    } else {
      std::complex<double> wk;
      if (plan) {
        const auto tw = plan->twiddles();
        wk = k < m / 2 ? tw[k] : -tw[k - m / 2];
      } else {
        wk = unit_root(static_cast<std::int64_t>(k), mm);
      }
      term = samples.values[k] * wk / (z - wk);
    }
    re[k] = term.real();
    im[k] = term.imag();
  }
  return factor * std::complex<double>{pairwise_sum(re), pairwise_sum(im)};
}

ShiftedGridEvaluator::ShiftedGridEvaluator(const SignPolynomial& f, std::size_t m)
    : ShiftedGridEvaluator(
          [&f] {
            std::vector<std::complex<double>> c(f.size());
            for (std::size_t k = 0; k < f.size(); ++k) c[k] = static_cast<double>(f[k]);
            return c;
          }(),
          m) {}

ShiftedGridEvaluator::ShiftedGridEvaluator(std::vector<std::complex<double>> coeffs, std::size_t m)
    : coeffs_(std::move(coeffs)), m_(m), fft_size_(0), cosets_(0), lo_bits_(0) {
  if (coeffs_.empty()) throw DomainError("ShiftedGridEvaluator: empty coefficient vector");
  if (!std::has_single_bit(m_)) throw DomainError("ShiftedGridEvaluator: m must be a power of two");
  fft_size_ = std::bit_ceil(coeffs_.size());
  if (m_ < fft_size_) {
    throw UndersamplingError("ShiftedGridEvaluator: m = " + std::to_string(m_) + " < " +
                             std::to_string(coeffs_.size()) + " coefficients");
  }
  cosets_ = m_ / fft_size_;
  const auto log2m = static_cast<unsigned>(std::countr_zero(m_));
  lo_bits_ = (log2m + 1) / 2;
  const std::size_t lo_size = std::size_t{1} << lo_bits_;
  const std::size_t hi_size = m_ >> lo_bits_;
  const auto mm = static_cast<std::int64_t>(m_);
  root_lo_.resize(lo_size);
  root_hi_.resize(hi_size);
  for (std::size_t r = 0; r < lo_size; ++r) root_lo_[r] = unit_root(static_cast<std::int64_t>(r), mm);
  for (std::size_t r = 0; r < hi_size; ++r) {
    root_hi_[r] = unit_root(static_cast<std::int64_t>(r << lo_bits_), mm);
  }
  plan_ = fft_plan(fft_size_);
}

std::complex<double> ShiftedGridEvaluator::root(std::size_t r) const {
  r &= m_ - 1;
  return root_hi_[r >> lo_bits_] * root_lo_[r & ((std::size_t{1} << lo_bits_) - 1)];
}

void ShiftedGridEvaluator::evaluate(double shift, std::span<std::complex<double>> out) const {
  evaluate_weighted({}, shift, out);
}

std::vector<std::complex<double>> ShiftedGridEvaluator::evaluate(double shift) const {
  std::vector<std::complex<double>> out(m_);
  evaluate(shift, out);
  return out;
}

void ShiftedGridEvaluator::evaluate_weighted(std::span<const std::complex<double>> weights, double shift,
                                             std::span<std::complex<double>> out) const {
  if (out.size() != m_) throw DomainError("ShiftedGridEvaluator: output size mismatch");
  if (!weights.empty() && weights.size() != coeffs_.size()) {
    throw DomainError("ShiftedGridEvaluator: weight vector size mismatch");
  }
  const std::size_t L = coeffs_.size();
  std::vector<std::complex<double>> base(coeffs_);
  if (!weights.empty()) {
    for (std::size_t k = 0; k < L; ++k) base[k] *= weights[k];
  }
  if (shift != 0.0) {
    for (std::size_t k = 0; k < L; ++k) {
      const double a = static_cast<double>(k) * shift;
      base[k] *= std::complex<double>{std::cos(a), std::sin(a)};
    }
  }

  parallel_for(cosets_, [&](std::size_t vb, std::size_t ve) {
    std::vector<std::complex<double>> buf(fft_size_);
    for (std::size_t v = vb; v < ve; ++v) {
      for (std::size_t k = 0; k < L; ++k) buf[k] = v == 0 ? base[k] : base[k] * root(k * v);
      std::fill(buf.begin() + static_cast<std::ptrdiff_t>(L), buf.end(), std::complex<double>{});
      plan_->evaluate(buf);
      for (std::size_t u = 0; u < fft_size_; ++u) out[u * cosets_ + v] = buf[u];
    }
  });
}

}  // namespace mahler
