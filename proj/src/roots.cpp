#include "mahler/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mahler/evaluator.hpp"
#include "mahler/parallel.hpp"
#include "mahler/summation.hpp"

namespace mahler {

namespace {

using cd = std::complex<double>;

struct HornerResult {
  cd value;
  cd derivative;
  double bound;  // sum |a_j| |z|^j, for the backward-error test
};

HornerResult horner(const std::vector<double>& a, cd z) {
  const std::size_t d = a.size() - 1;
  cd p = a[d];
  cd dp = 0.0;
  double b = std::abs(a[d]);
  const double az = std::abs(z);
  for (std::size_t i = d; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[i];
    b = b * az + std::abs(a[i]);
  }
  return {p, dp, b};
}

struct Step {
  cd newton;  // g / g'
  bool small_residual;
};

// Newton correction with the reversed polynomial outside the unit disc:
// g'/g = d w - w^2 r'(w) / r(w), w = 1/z, r(w) = w^d g(1/w).
Step newton_step(const std::vector<double>& a, const std::vector<double>& rev, cd z) {
  const double tiny = 2.0 * static_cast<double>(a.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(z) <= 1.0) {
    const HornerResult h = horner(a, z);
    const bool small = std::abs(h.value) <= tiny * h.bound;
    if (h.derivative == cd{}) return {cd{}, small};
    return {h.value / h.derivative, small};
  }
  const cd w = 1.0 / z;
  const HornerResult h = horner(rev, w);
  const bool small = std::abs(h.value) <= tiny * h.bound;
  const double d = static_cast<double>(a.size() - 1);
  if (h.value == cd{}) return {cd{}, true};
  const cd ratio = d * w - w * w * h.derivative / h.value;  // g'/g
  if (ratio == cd{}) return {cd{}, small};
  return {1.0 / ratio, small};
}

}  // namespace

RootSet roots_aberth(const SignPolynomial& f, const RootConfig& cfg) {
  if (f.degree() < 1) throw DomainError("roots_aberth: degree must be at least 1");
  if (f.degree() > cfg.max_degree) {
    throw SizeError("roots_aberth: degree " + std::to_string(f.degree()) + " exceeds cap " +
                    std::to_string(cfg.max_degree));
  }
  if (!(cfg.eps > 0.0)) throw DomainError("roots_aberth: eps must be positive");

  RootSet out;
  out.leading = f.leading();
  std::size_t zeros = 0;
  while (f[zeros] == 0) ++zeros;
  out.roots.assign(zeros, cd{});

  std::vector<double> a(f.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), f.coeffs().end());
  const std::size_t d = a.size() - 1;
  if (d == 0) {
    out.converged = true;
    return out;
  }
  std::vector<double> rev(a.rbegin(), a.rend());

  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<cd> z(d);
  for (std::size_t k = 0; k < d; ++k) z[k] = std::polar(1.0, 0.5 + golden * static_cast<double>(k));
  std::vector<std::uint8_t> done(d, 0);
  std::vector<cd> next(d);

  std::size_t it = 0;
  bool all_done = false;
  while (!all_done && it < cfg.max_iters) {
    ++it;
    parallel_for(
        d,
        [&](std::size_t b, std::size_t e) {
          for (std::size_t k = b; k < e; ++k) {
            next[k] = z[k];
            if (done[k]) continue;
            const Step s = newton_step(a, rev, z[k]);
            if (s.newton == cd{}) {
              next[k] = z[k];
              continue;
            }
            cd sum = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
              if (j != k) sum += 1.0 / (z[k] - z[j]);
            }
            const cd w = s.newton / (1.0 - s.newton * sum);
            next[k] = z[k] - w;
          }
        },
        16);
    all_done = true;
    for (std::size_t k = 0; k < d; ++k) {
      if (done[k]) continue;
      const double move = std::abs(next[k] - z[k]);
      const bool tiny_step = move < cfg.eps * std::max(1.0, std::abs(z[k]));
      z[k] = next[k];
      if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag())) {
        throw RootConvergenceError("roots_aberth: iteration diverged", it, std::numeric_limits<double>::infinity());
      }
      const bool small = newton_step(a, rev, z[k]).small_residual;
      if (tiny_step || small) {
        done[k] = 1;
      } else {
        all_done = false;
      }
    }
  }

  out.roots.insert(out.roots.end(), z.begin(), z.end());
  out.iterations = it;
  double residual = 0.0;
  const auto coeffs = f.coeffs();
  std::vector<std::int8_t> reversed(coeffs.rbegin(), coeffs.rend());
  for (const cd& r : out.roots) {
    const double v = std::abs(r) <= 1.0 ? std::abs(horner_compensated(coeffs, r))
                                        : std::abs(horner_compensated(reversed, 1.0 / r));
    residual = std::max(residual, v);
  }
  out.max_residual = residual;
  out.converged = all_done;
  if (!all_done) {
    throw RootConvergenceError("roots_aberth: no convergence after " + std::to_string(it) +
                                   " iterations (max residual " + std::to_string(residual) + ")",
                               it, residual);
  }
  return out;
}

MeasureResult mahler_jensen(const RootSet& rs) {
  if (!rs.converged) throw DomainError("mahler_jensen: root set did not converge");
  std::vector<double> logs(rs.roots.size());
  for (std::size_t k = 0; k < rs.roots.size(); ++k) logs[k] = std::log(std::max(1.0, std::abs(rs.roots[k])));
  MeasureResult out;
  out.value = std::abs(rs.leading) * std::exp(pairwise_sum(logs));
  out.q = 0.0;
  out.arc = Arc::full_circle();
  out.method = Method::jensen;
  out.samples_used = rs.roots.size();
  out.error_estimate = out.value * rs.max_residual;
  return out;
}

}  // namespace mahler
