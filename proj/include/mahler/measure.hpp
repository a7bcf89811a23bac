#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <string_view>
#include <vector>

#include "mahler/errors.hpp"
#include "mahler/evaluator.hpp"
#include "mahler/polynomial.hpp"

namespace mahler {

// Closed arc [alpha, beta] of the unit circle, in radians; 0 < beta - alpha <= 2 pi.
struct Arc {
  double alpha = 0.0;
  double beta = 2.0 * std::numbers::pi;

  double length() const { return beta - alpha; }
  static Arc full_circle() { return {}; }
};

/// Throws DomainError unless 0 < beta - alpha <= 2 pi (with a relative slack of 1e-12).
void validate(const Arc& arc);

enum class Method { quadrature, jensen };
std::string_view to_string(Method method);

struct MeasureResult {
  double value = 0.0;
  double q = 0.0;  // 0 encodes the Mahler measure
  Arc arc;
  Method method = Method::quadrature;
  std::size_t samples_used = 0;
  double error_estimate = 0.0;
};

struct QuadratureConfig {
  std::size_t oversample = kDefaultOversample;  // base grid m = bit_ceil(oversample * (deg + 1))
  double refine_threshold = 1e-3;               // relative to the largest grid modulus
  std::size_t panel_order = 16;                 // Gauss-Legendre points per refinement panel
  double tol = 1e-10;                           // absolute, per cell integral of log|f|
  int max_depth = 30;
};

void validate(const QuadratureConfig& cfg);

// Raised when some refined cell still disagrees with its bisection at
// max_depth. Carries the estimate computed anyway.
class QuadratureConvergenceError : public ConvergenceError {
 public:
  QuadratureConvergenceError(const std::string& what, MeasureResult best)
      : ConvergenceError(what), best_(best) {}
  const MeasureResult& best() const { return best_; }

 private:
  MeasureResult best_;
};

/// ((1/(beta-alpha)) int_arc |f|^q)^{1/q} by the composite trapezoid rule on
/// the sample grid. Partial end cells use values interpolated at the arc
/// endpoints; the error estimate compares against the rule on every other
/// node. Throws DomainError for q <= 0 or fewer than 64 nodes in the arc.
MeasureResult mq_norm(const CircleSamples& samples, double q, const Arc& arc);

inline constexpr std::size_t kMinArcNodes = 64;

// Integrates log|f(e^{it})| over base cells of width 2 pi / m.
//
// Every cell gets a 15-point Gauss-Kronrod panel whose nodes come from
// shifted-grid FFTs. A cell is refined when the embedded 7-point Gauss
// estimate disagrees by more than cfg.tol, when a node modulus falls below
// cfg.refine_threshold * max, or when a node hits an exact zero. Refined
// cells are bisected with cfg.panel_order-point Gauss-Legendre panels until
// the change is below cfg.tol; the integrand there comes from local Taylor
// expansions about the grid nodes, so no refinement step costs O(degree).
//
// Construction does all full-circle work once; integral() on an arc sums
// the stored cells and integrates the two partial end cells.
class LogModulusIntegrator {
 public:
  explicit LogModulusIntegrator(const SignPolynomial& f, const QuadratureConfig& cfg = {});

  struct ArcIntegral {
    double integral = 0.0;  // int_arc log|f|
    double error = 0.0;
    std::size_t cells = 0;
    bool converged = true;
  };

  ArcIntegral integrate(const Arc& arc) const;

  /// exp of the mean of log|f| over the arc.
  MeasureResult mahler(const Arc& arc) const;

  std::size_t grid_size() const { return m_; }
  std::size_t refined_cells() const { return refined_; }
  std::size_t taylor_order() const { return taylor_order_; }
  double max_grid_modulus() const { return max_abs_; }

  // Local expansion f(e^{i(t_c + s h)}) = sum_r c_r s^r about node t_c.
  struct TaylorPatch {
    double center = 0.0;
    std::vector<std::complex<double>> c;
    std::complex<double> operator()(double t, double h) const;
  };

  /// Patch at unwrapped node index j by direct summation (O(degree * order)).
  TaylorPatch patch_at(long long j) const;

 private:
  struct CellResult {
    double integral = 0.0;
    double error = 0.0;
    bool converged = true;
  };

  CellResult integrate_cell(double a, double b, const TaylorPatch& left, const TaylorPatch& right,
                            double left_t) const;

  SignPolynomial f_;
  QuadratureConfig cfg_;
  std::size_t m_ = 0;
  double h_ = 0.0;
  std::size_t taylor_order_ = 0;
  double max_abs_ = 0.0;
  std::size_t refined_ = 0;
  std::vector<double> cell_integral_;
  std::vector<double> cell_error_;
  std::vector<std::uint8_t> cell_converged_;
};

/// M_0 on the arc by LogModulusIntegrator. Throws QuadratureConvergenceError.
MeasureResult mahler_quadrature(const SignPolynomial& f, const Arc& arc = Arc::full_circle(),
                                const QuadratureConfig& cfg = {});

struct MomentSeries {
  std::size_t k_max = 0;
  std::vector<double> values;  // values[k-1] = I_k
  std::size_t m = 0;

  double at(std::size_t k) const { return values.at(k - 1); }
};

/// Smallest power of two >= 16 (degree + 1) that also exceeds
/// ceil(k_max / 2) * degree, so every even moment up to k_max is integrated
/// exactly by the trapezoid rule.
std::size_t moment_grid_size(std::size_t degree, std::size_t k_max);

/// I_k = (1/2pi) int |scale * f|^k for k = 1..k_max on the m-point grid.
/// Requires m >= 16 (degree + 1).
MomentSeries moment_series(const NormalizedPolynomial& f, std::size_t k_max, std::size_t m);

struct LogMomentIdentity {
  double lhs = 0.0;          // int_0^{2pi} log|f~|^2
  double rhs_partial = 0.0;  // -2pi sum_{k <= k_max} I_{2k} / k
  double residual = 0.0;     // |lhs - rhs_partial|
};

/// Both sides of log|f~|^2 = log(1 - |g~|^2) expanded as a power series.
/// Needs degree >= 1 and |f~| <= 1 on the circle; throws DomainError otherwise.
LogMomentIdentity moment_log_identity(const NormalizedPolynomial& f, std::size_t k_max,
                                      const QuadratureConfig& cfg = {});

// M_q for q in {0.25, 0.125} next to M_0; power-mean monotonicity says they
// decrease towards M_0 as q -> 0+.
struct SmallQDiagnostic {
  double m0 = 0.0;
  std::vector<std::pair<double, double>> mq;  // (q, M_q), decreasing q
  bool approaches_from_above = false;
};

SmallQDiagnostic small_q_diagnostic(const SignPolynomial& f, const Arc& arc = Arc::full_circle(),
                                    const QuadratureConfig& cfg = {});

}  // namespace mahler
