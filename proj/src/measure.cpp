#include "mahler/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mahler/fft.hpp"
#include "mahler/parallel.hpp"
#include "mahler/quadrature_rules.hpp"
#include "mahler/summation.hpp"

namespace mahler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSnap = 1e-9;  // in units of the grid spacing

// Position of an angle on the grid, snapped to an integer when within kSnap.
double grid_position(double theta, double h) {
  const double p = theta / h;
  const double r = std::nearbyint(p);
  return std::abs(p - r) < kSnap ? r : p;
}

std::size_t wrap(long long j, std::size_t m) {
  const auto mm = static_cast<long long>(m);
  long long r = j % mm;
  if (r < 0) r += mm;
  return static_cast<std::size_t>(r);
}

// Smallest R >= 4 with sqrt(L) e^x x^{R+1} / (R+1)! < 1e-17, capped at 60.
std::size_t taylor_order_for(std::size_t length, double x) {
  const double lead = std::sqrt(static_cast<double>(length)) * std::exp(x);
  double term = x;  // x^{R+1}/(R+1)! for R = 0
  for (std::size_t r = 0; r < 60; ++r) {
    if (r >= 4 && lead * term < 1e-17) return r;
    term *= x / static_cast<double>(r + 2);
  }
  return 60;
}

}  // namespace

void validate(const Arc& arc) {
  const double len = arc.beta - arc.alpha;
  if (!std::isfinite(arc.alpha) || !std::isfinite(arc.beta) || !(len > 0.0) ||
      len > kTwoPi * (1.0 + 1e-12)) {
    throw DomainError("arc [" + std::to_string(arc.alpha) + ", " + std::to_string(arc.beta) +
                      "] must satisfy 0 < beta - alpha <= 2 pi");
  }
}

std::string_view to_string(Method method) {
  return method == Method::quadrature ? "quadrature" : "jensen";
}

void validate(const QuadratureConfig& cfg) {
  if (cfg.oversample < 2) throw DomainError("quadrature: oversample must be at least 2");
  if (!(cfg.refine_threshold >= 0.0) || cfg.refine_threshold >= 1.0) {
    throw DomainError("quadrature: refine_threshold must lie in [0, 1)");
  }
  if (cfg.panel_order < 1) throw DomainError("quadrature: panel_order must be positive");
  if (!(cfg.tol > 0.0)) throw DomainError("quadrature: tol must be positive");
  if (cfg.max_depth < 0) throw DomainError("quadrature: max_depth must be nonnegative");
}

// ---------------------------------------------------------------------------
// M_q by the trapezoid rule

namespace {

struct TrapezoidSum {
  double integral = 0.0;
  std::size_t nodes = 0;
};

// Composite trapezoid for g over [alpha, beta], using grid nodes
// first, first + step, ..., last (unwrapped indices) and endpoint values.
TrapezoidSum trapezoid(const std::vector<double>& g, std::size_t m, double h, long long first, long long last,
                       long long step, double alpha, double beta, double g_alpha, double g_beta) {
  std::vector<double> interior;
  interior.reserve(static_cast<std::size_t>((last - first) / step + 1));
  for (long long j = first; j <= last; j += step) interior.push_back(g[wrap(j, m)]);
  const double t_first = static_cast<double>(first) * h;
  const double t_last = static_cast<double>(last) * h;
  const double g_first = interior.front();
  const double g_last = interior.back();
  const double inner = static_cast<double>(step) * h * (pairwise_sum(interior) - 0.5 * (g_first + g_last));
  const double left = 0.5 * (t_first - alpha) * (g_alpha + g_first);
  const double right = 0.5 * (beta - t_last) * (g_last + g_beta);
  return {left + inner + right, interior.size()};
}

}  // namespace

MeasureResult mq_norm(const CircleSamples& samples, double q, const Arc& arc) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("mq_norm: q must be positive and finite");
  validate(arc);
  const std::size_t m = samples.m;
  if (m == 0 || samples.values.size() != m) throw DomainError("mq_norm: malformed sample grid");
  const double h = kTwoPi / static_cast<double>(m);

  double a = grid_position(arc.alpha, h);
  double b = grid_position(arc.beta, h);
  if (!(b > a)) {
    a = arc.alpha / h;
    b = arc.beta / h;
  }
  const auto first = static_cast<long long>(std::ceil(a));
  const auto last = static_cast<long long>(std::floor(b));
  const long long count = last - first + 1;
  if (count < static_cast<long long>(kMinArcNodes)) {
    throw DomainError("mq_norm: only " + std::to_string(std::max<long long>(count, 0)) +
                      " grid nodes fall in the arc, need at least " + std::to_string(kMinArcNodes));
  }
  // A full period counts each node once: drop the duplicated last node.
  const bool full_period = count > static_cast<long long>(m);

  double scale = 0.0;
  for (const auto& v : samples.values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw DomainError("mq_norm: polynomial vanishes on the grid");

  std::vector<double> g(m);
  for (std::size_t j = 0; j < m; ++j) g[j] = std::pow(std::abs(samples.values[j]) / scale, q);
  auto endpoint = [&](double theta, double pos) {
    const double r = std::nearbyint(pos);
    if (pos == r) return g[wrap(static_cast<long long>(r), m)];
    return std::pow(std::abs(interpolate(samples, theta)) / scale, q);
  };
  const double alpha = a == std::nearbyint(a) ? a * h : arc.alpha;
  const double beta = b == std::nearbyint(b) ? b * h : arc.beta;
  const double g_alpha = endpoint(arc.alpha, a);
  const double g_beta = endpoint(arc.beta, b);

  TrapezoidSum full;
  if (full_period) {
    // Periodic rule over exactly one period starting at first.
    std::vector<double> all(g);
    full = {h * pairwise_sum(all), m};
  } else {
    full = trapezoid(g, m, h, first, last, 1, alpha, beta, g_alpha, g_beta);
  }

  // Half resolution on even global indices.
  double coarse = full.integral;
  {
    long long ef = first + (first % 2 != 0 ? 1 : 0);
    long long el = last - (last % 2 != 0 ? 1 : 0);
    if (full_period) {
      double s = 0.0;
      std::vector<double> even;
      even.reserve(m / 2);
      for (std::size_t j = 0; j < m; j += 2) even.push_back(g[j]);
      s = 2.0 * h * pairwise_sum(even);
      coarse = s;
    } else if (el > ef) {
      coarse = trapezoid(g, m, h, ef, el, 2, alpha, beta, g_alpha, g_beta).integral;
    }
  }

  const double len = beta - alpha;
  const double mean = full.integral / len;
  MeasureResult out;
  out.q = q;
  out.arc = arc;
  out.method = Method::quadrature;
  out.samples_used = full.nodes;
  if (!(mean > 0.0)) {
    out.value = 0.0;
    out.error_estimate = 0.0;
    return out;
  }
  out.value = scale * std::pow(mean, 1.0 / q);
  // d(mean^{1/q}) = (1/q) mean^{1/q - 1} d(mean)
  const double dmean = std::abs(full.integral - coarse) / len;
  out.error_estimate = out.value * dmean / (q * mean);
  return out;
}

// ---------------------------------------------------------------------------
// log|f| integration

std::complex<double> LogModulusIntegrator::TaylorPatch::operator()(double t, double h) const {
  const double s = (t - center) / h;
  std::complex<double> acc = c.back();
  for (std::size_t r = c.size() - 1; r-- > 0;) acc = acc * s + c[r];
  return acc;
}

LogModulusIntegrator::TaylorPatch LogModulusIntegrator::patch_at(long long j) const {
  TaylorPatch patch;
  patch.center = static_cast<double>(j) * h_;
  patch.c.assign(taylor_order_ + 1, {});
  const std::size_t node = wrap(j, m_);
  const auto mm = static_cast<std::int64_t>(m_);
  const auto coeffs = f_.coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    const auto r = static_cast<std::int64_t>((static_cast<std::uint64_t>(k) * node) % m_);
    std::complex<double> term = static_cast<double>(coeffs[k]) * unit_root(r, mm);
    const std::complex<double> step{0.0, static_cast<double>(k) * h_};
    for (std::size_t o = 0; o <= taylor_order_; ++o) {
      patch.c[o] += term;
      term *= step / static_cast<double>(o + 1);
    }
  }
  return patch;
}

LogModulusIntegrator::CellResult LogModulusIntegrator::integrate_cell(double a, double b, const TaylorPatch& left,
                                                                      const TaylorPatch& right,
                                                                      double left_t) const {
  const QuadratureRule& rule = gauss_legendre(cfg_.panel_order);
  const double mid_t = left_t + 0.5 * h_;
  // log of the smallest subnormal stands in for log 0 so sums stay finite.
  constexpr double kLogFloor = -745.0;
  auto g = [&](double t) {
    const auto v = t <= mid_t ? left(t, h_) : right(t, h_);
    const double mag = std::abs(v);
    return mag > 0.0 ? std::log(mag) : kLogFloor;
  };
  auto panel = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double r = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * g(c + r * rule.nodes[i]);
    return r * s;
  };

  CellResult out;
  struct Frame {
    double lo, hi, whole;
    int depth;
  };
  // Depth-first, left to right, so the summation order is fixed.
  std::vector<Frame> stack{{a, b, panel(a, b), 0}};
  while (!stack.empty()) {
    const Frame fr = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (fr.lo + fr.hi);
    const double l = panel(fr.lo, mid);
    const double r = panel(mid, fr.hi);
    const double diff = std::abs(l + r - fr.whole);
    if (diff < cfg_.tol || fr.depth >= cfg_.max_depth || !(mid > fr.lo && mid < fr.hi)) {
      if (!(diff < cfg_.tol)) out.converged = false;
      out.integral += l + r;
      out.error += diff;
      continue;
    }
    stack.push_back({mid, fr.hi, r, fr.depth + 1});
    stack.push_back({fr.lo, mid, l, fr.depth + 1});
  }
  return out;
}

LogModulusIntegrator::LogModulusIntegrator(const SignPolynomial& f, const QuadratureConfig& cfg)
    : f_(f), cfg_(cfg) {
  validate(cfg_);
  if (std::all_of(f.coeffs().begin(), f.coeffs().end(), [](auto c) { return c == 0; })) {
    throw DomainError("mahler_quadrature: polynomial is identically zero");
  }
  m_ = oversampled_size(f.degree(), cfg_.oversample);
  h_ = kTwoPi / static_cast<double>(m_);
  taylor_order_ = taylor_order_for(f.size(), std::numbers::pi * static_cast<double>(f.degree()) /
                                                 static_cast<double>(m_));

  const ShiftedGridEvaluator grid(f, m_);
  std::vector<std::complex<double>> buf(m_);
  grid.evaluate(0.0, buf);
  std::vector<double> node_abs(m_);
  for (std::size_t j = 0; j < m_; ++j) node_abs[j] = std::abs(buf[j]);
  max_abs_ = *std::max_element(node_abs.begin(), node_abs.end());
  const double threshold = cfg_.refine_threshold * max_abs_;

  std::vector<std::uint8_t> flagged(m_, 0);
  for (std::size_t j = 0; j < m_; ++j) {
    if (node_abs[j] == 0.0 || node_abs[j] < threshold) {
      flagged[j] = 1;
      flagged[(j + m_ - 1) % m_] = 1;
    }
  }
  node_abs = {};

  // Gauss-Kronrod 15 / Gauss 7 on every cell.
  const GaussKronrod15& gk = gauss_kronrod15();
  std::vector<double> kron(m_, 0.0), gauss(m_, 0.0), lo(m_, std::numeric_limits<double>::infinity()),
      hi(m_, -std::numeric_limits<double>::infinity());
  for (std::size_t l = 0; l < 15; ++l) {
    const double shift = 0.5 * h_ * (1.0 + gk.nodes[l]);
    grid.evaluate(shift, buf);
    const double wk = gk.kronrod_weights[l];
    const double wg = gk.gauss_weights[l];
    parallel_for(
        m_,
        [&](std::size_t jb, std::size_t je) {
          for (std::size_t j = jb; j < je; ++j) {
            const double mag = std::abs(buf[j]);
            if (mag == 0.0 || mag < threshold) {
              flagged[j] = 1;
              continue;
            }
            const double lg = std::log(mag);
            kron[j] += wk * lg;
            gauss[j] += wg * lg;
            lo[j] = std::min(lo[j], lg);
            hi[j] = std::max(hi[j], lg);
          }
        },
        4096);
  }
  buf = {};

  cell_integral_.assign(m_, 0.0);
  cell_error_.assign(m_, 0.0);
  cell_converged_.assign(m_, 1);
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double half = 0.5 * h_;
  std::vector<std::size_t> refine;
  for (std::size_t j = 0; j < m_; ++j) {
    if (!flagged[j]) {
      const double k = half * kron[j];
      const double diff = half * std::abs(kron[j] - gauss[j]);
      if (!(diff <= cfg_.tol)) {
        flagged[j] = 1;
      } else {
        // QUADPACK-style estimate; the spread of log|f| over the cell stands
        // in for the mean absolute deviation.
        const double spread = half * (hi[j] - lo[j]);
        double err = diff;
        if (spread > 0.0) err = spread * std::min(1.0, std::pow(200.0 * diff / spread, 1.5));
        err = std::max(err, 50.0 * kEps * std::abs(k));
        cell_integral_[j] = k;
        cell_error_[j] = err;
      }
    }
    if (flagged[j]) refine.push_back(j);
  }
  kron = {};
  gauss = {};
  lo = {};
  hi = {};
  refined_ = refine.size();
  if (refine.empty()) return;

  // Taylor patches at both ends of every refined cell.
  std::vector<std::size_t> nodes;
  nodes.reserve(2 * refine.size());
  for (std::size_t j : refine) {
    nodes.push_back(j);
    nodes.push_back((j + 1) % m_);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<TaylorPatch> patches(nodes.size());
  const double direct_cost = static_cast<double>(nodes.size()) * static_cast<double>(f.size()) *
                             static_cast<double>(taylor_order_ + 10);
  const double fft_cost = static_cast<double>(taylor_order_ + 1) * static_cast<double>(m_) * 20.0;
  if (direct_cost < fft_cost) {
    parallel_for(nodes.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) patches[i] = patch_at(static_cast<long long>(nodes[i]));
    });
  } else {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      patches[i].center = static_cast<double>(nodes[i]) * h_;
      patches[i].c.resize(taylor_order_ + 1);
    }
    // c_r at every node is the grid evaluation of a_k (i k h)^r / r!.
    std::vector<std::complex<double>> weights(f.size());
    std::vector<std::complex<double>> vals(m_);
    for (std::size_t k = 0; k < f.size(); ++k) weights[k] = 1.0;
    for (std::size_t r = 0; r <= taylor_order_; ++r) {
      grid.evaluate_weighted(weights, 0.0, vals);
      for (std::size_t i = 0; i < nodes.size(); ++i) patches[i].c[r] = vals[nodes[i]];
      for (std::size_t k = 0; k < f.size(); ++k) {
        weights[k] *= std::complex<double>{0.0, static_cast<double>(k) * h_} / static_cast<double>(r + 1);
      }
    }
  }
  auto patch_index = [&](std::size_t node) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), node) - nodes.begin());
  };

  parallel_for(refine.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const std::size_t j = refine[i];
      const TaylorPatch& left = patches[patch_index(j)];
      TaylorPatch right = patches[patch_index((j + 1) % m_)];
      right.center = static_cast<double>(j + 1) * h_;  // unwrapped at the seam
      const double a = static_cast<double>(j) * h_;
      const CellResult cell = integrate_cell(a, a + h_, left, right, a);
      cell_integral_[j] = cell.integral;
      cell_error_[j] = cell.error;
      cell_converged_[j] = cell.converged ? 1 : 0;
    }
  });
}

LogModulusIntegrator::ArcIntegral LogModulusIntegrator::integrate(const Arc& arc) const {
  validate(arc);
  double a = grid_position(arc.alpha, h_);
  double b = grid_position(arc.beta, h_);
  if (!(b > a)) {
    a = arc.alpha / h_;
    b = arc.beta / h_;
  }
  const auto ja = static_cast<long long>(std::floor(a));
  auto jb = static_cast<long long>(std::ceil(b));
  if (jb <= ja) jb = ja + 1;
  const double alpha = a == std::nearbyint(a) ? a * h_ : arc.alpha;
  const double beta = b == std::nearbyint(b) ? b * h_ : arc.beta;

  ArcIntegral out;
  std::vector<double> full;
  std::vector<double> errors;
  std::vector<double> partial;
  full.reserve(static_cast<std::size_t>(jb - ja));
  errors.reserve(static_cast<std::size_t>(jb - ja) + 2);

  // An unaligned full period touches m + 1 cells; the first and last are
  // complementary pieces of the same wrapped cell.
  for (long long c = ja; c < jb; ++c) {
    const double cell_lo = static_cast<double>(c) * h_;
    const double cell_hi = static_cast<double>(c + 1) * h_;
    const bool left_cut = c == ja && a > static_cast<double>(ja);
    const bool right_cut = c == jb - 1 && b < static_cast<double>(jb);
    ++out.cells;
    if (!left_cut && !right_cut) {
      const std::size_t w = wrap(c, m_);
      full.push_back(cell_integral_[w]);
      errors.push_back(cell_error_[w]);
      if (!cell_converged_[w]) out.converged = false;
      continue;
    }
    const double lo = left_cut ? alpha : cell_lo;
    const double hi = right_cut ? beta : cell_hi;
    const TaylorPatch left = patch_at(c);
    const TaylorPatch right = patch_at(c + 1);
    const CellResult cell = integrate_cell(lo, hi, left, right, cell_lo);
    partial.push_back(cell.integral);
    errors.push_back(cell.error);
    if (!cell.converged) out.converged = false;
  }
  out.integral = pairwise_sum(full);
  for (double p : partial) out.integral += p;
  out.error = pairwise_sum(errors);
  return out;
}

MeasureResult LogModulusIntegrator::mahler(const Arc& arc) const {
  const ArcIntegral r = integrate(arc);
  MeasureResult out;
  const double len = arc.length();
  out.value = std::exp(r.integral / len);
  out.q = 0.0;
  out.arc = arc;
  out.method = Method::quadrature;
  out.samples_used = r.cells;
  out.error_estimate = out.value * r.error / len;
  if (!r.converged) {
    throw QuadratureConvergenceError("mahler_quadrature: refinement did not reach tol " + std::to_string(cfg_.tol) +
                                         " within max_depth " + std::to_string(cfg_.max_depth),
                                     out);
  }
  return out;
}

MeasureResult mahler_quadrature(const SignPolynomial& f, const Arc& arc, const QuadratureConfig& cfg) {
  validate(arc);
  return LogModulusIntegrator(f, cfg).mahler(arc);
}

// ---------------------------------------------------------------------------
// Moments

std::size_t moment_grid_size(std::size_t degree, std::size_t k_max) {
  std::size_t m = oversampled_size(degree, kDefaultOversample);
  const std::size_t need = ((k_max + 1) / 2) * degree;  // strict lower bound
  while (m <= need) m *= 2;
  return m;
}

namespace {

// I_k for k = 1..k_max from moduli on an equispaced grid. Chunks of 1024
// samples are accumulated directly, then chunk sums are combined pairwise.
std::vector<double> moments_from_moduli(const std::vector<double>& mod, std::size_t k_max) {
  constexpr std::size_t kChunk = 1024;
  const std::size_t m = mod.size();
  const std::size_t chunks = (m + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks * k_max, 0.0);
  parallel_for(chunks, [&](std::size_t cb, std::size_t ce) {
    for (std::size_t c = cb; c < ce; ++c) {
      double* acc = &partial[c * k_max];
      const std::size_t end = std::min(m, (c + 1) * kChunk);
      for (std::size_t j = c * kChunk; j < end; ++j) {
        double p = 1.0;
        const double a = mod[j];
        for (std::size_t k = 0; k < k_max; ++k) {
          p *= a;
          acc[k] += p;
        }
      }
    }
  });
  std::vector<double> out(k_max);
  std::vector<double> column(chunks);
  for (std::size_t k = 0; k < k_max; ++k) {
    for (std::size_t c = 0; c < chunks; ++c) column[c] = partial[c * k_max + k];
    out[k] = pairwise_sum(column) / static_cast<double>(m);
  }
  return out;
}

std::vector<double> scaled_moduli(const NormalizedPolynomial& f, std::size_t m) {
  const CircleSamples s = evaluate_at_roots(f.base(), m);
  std::vector<double> mod(m);
  for (std::size_t j = 0; j < m; ++j) mod[j] = f.scale() * std::abs(s.values[j]);
  return mod;
}

}  // namespace

MomentSeries moment_series(const NormalizedPolynomial& f, std::size_t k_max, std::size_t m) {
  if (k_max < 1) throw DomainError("moment_series: k_max must be at least 1");
  const std::size_t need = 16 * f.base().size();
  if (m < need) {
    throw UndersamplingError("moment_series: m = " + std::to_string(m) + " < 16 (degree + 1) = " +
                             std::to_string(need));
  }
  return {k_max, moments_from_moduli(scaled_moduli(f, m), k_max), m};
}

LogMomentIdentity moment_log_identity(const NormalizedPolynomial& f, std::size_t k_max, const QuadratureConfig& cfg) {
  if (k_max < 1) throw DomainError("moment_log_identity: k_max must be at least 1");
  if (f.base().degree() < 1) {
    throw DomainError("moment_log_identity: needs degree >= 1 (the series diverges for |f| = 1)");
  }
  const std::size_t m = moment_grid_size(f.base().degree(), 2 * k_max);
  const std::vector<double> mod = scaled_moduli(f, m);
  const double top = *std::max_element(mod.begin(), mod.end());
  if (top > 1.0 + 1e-9) {
    throw DomainError("moment_log_identity: |f| = " + std::to_string(top) + " > 1 on the circle");
  }
  const std::vector<double> moments = moments_from_moduli(mod, 2 * k_max);

  const LogModulusIntegrator integrator(f.base(), cfg);
  const MeasureResult m0 = integrator.mahler(Arc::full_circle());
  LogMomentIdentity out;
  out.lhs = 2.0 * kTwoPi * (std::log(m0.value) + std::log(f.scale()));
  // Smallest terms first.
  double sum = 0.0;
  for (std::size_t k = k_max; k >= 1; --k) sum += moments[2 * k - 1] / static_cast<double>(k);
  out.rhs_partial = -kTwoPi * sum;
  out.residual = std::abs(out.lhs - out.rhs_partial);
  return out;
}

SmallQDiagnostic small_q_diagnostic(const SignPolynomial& f, const Arc& arc, const QuadratureConfig& cfg) {
  SmallQDiagnostic out;
  out.m0 = mahler_quadrature(f, arc, cfg).value;
  // Dense grid: |f|^q has cusps at zeros for small q.
  const CircleSamples s = evaluate_at_roots(f, oversampled_size(f.degree(), std::max<std::size_t>(64, cfg.oversample)));
  double prev = std::numeric_limits<double>::infinity();
  out.approaches_from_above = true;
  for (double q : {0.25, 0.125}) {
    const double v = mq_norm(s, q, arc).value;
    out.mq.emplace_back(q, v);
    if (!(v >= out.m0 * (1.0 - 1e-9) && v <= prev)) out.approaches_from_above = false;
    prev = v;
  }
  return out;
}

}  // namespace mahler
