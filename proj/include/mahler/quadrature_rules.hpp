#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace mahler {

// Nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on P_n from Chebyshev-like guesses).
/// Cached per order.
const QuadratureRule& gauss_legendre(std::size_t n);

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15
// constants). Kronrod nodes in ascending order; the Gauss nodes are the odd
// positions 1, 3, ..., 13.
struct GaussKronrod15 {
  std::array<double, 15> nodes;
  std::array<double, 15> kronrod_weights;
  std::array<double, 15> gauss_weights;  // zero at non-Gauss positions
};

const GaussKronrod15& gauss_kronrod15();

}  // namespace mahler
