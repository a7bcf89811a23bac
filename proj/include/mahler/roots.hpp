#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mahler/errors.hpp"
#include "mahler/measure.hpp"
#include "mahler/polynomial.hpp"

namespace mahler {

struct RootConfig {
  double eps = 1e-12;
  std::size_t max_iters = 500;
  std::size_t max_degree = std::size_t{1} << 14;
};

struct RootSet {
  std::vector<std::complex<double>> roots;  // with multiplicity, zero roots included
  double leading = 1.0;
  std::size_t iterations = 0;
  double max_residual = 0.0;  // max |f(z)| / max(1, |z|)^deg over the roots
  bool converged = false;
};

class RootConvergenceError : public ConvergenceError {
 public:
  RootConvergenceError(const std::string& what, std::size_t iterations, double residual)
      : ConvergenceError(what), iterations_(iterations), residual_(residual) {}
  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

/// All roots by Aberth-Ehrlich iteration (Jacobi-style updates, so the
/// result does not depend on the thread count). Exact zero roots from
/// vanishing low coefficients are split off first. Throws DomainError for
/// degree 0, SizeError above cfg.max_degree, RootConvergenceError when
/// cfg.max_iters passes without convergence.
RootSet roots_aberth(const SignPolynomial& f, const RootConfig& cfg = {});

/// |c| prod max(1, |z_k|); method jensen, full circle. Throws DomainError for
/// an unconverged root set.
MeasureResult mahler_jensen(const RootSet& rs);

}  // namespace mahler
