#include "mahler/quadrature_rules.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "mahler/errors.hpp"

namespace mahler {

namespace {

QuadratureRule build_gauss_legendre(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kd = static_cast<double>(k);
      const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : nd * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

const GaussKronrod15& gauss_kronrod15() {
  static const GaussKronrod15 rule = [] {
    // QUADPACK qk15: xgk, wgk, wg (positive half, descending from the edge).
    constexpr std::array<double, 8> xgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    constexpr std::array<double, 8> wgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    constexpr std::array<double, 4> wg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    GaussKronrod15 r{};
    for (std::size_t i = 0; i < 8; ++i) {
      r.nodes[i] = -xgk[i];
      r.nodes[14 - i] = xgk[i];
      r.kronrod_weights[i] = wgk[i];
      r.kronrod_weights[14 - i] = wgk[i];
    }
    // Gauss nodes are xgk[1], xgk[3], xgk[5], xgk[7].
    for (std::size_t g = 0; g < 4; ++g) {
      const std::size_t i = 2 * g + 1;
      r.gauss_weights[i] = wg[g];
      r.gauss_weights[14 - i] = wg[g];
    }
    return r;
  }();
  return rule;
}

}  // namespace mahler
