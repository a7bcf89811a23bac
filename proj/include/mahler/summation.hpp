#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace mahler {

// Error-free transformations: a + b = s + e and a * b = p + e exactly.
struct SumErr {
  double s;
  double e;
};

inline SumErr two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

inline SumErr two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

/// Pairwise (cascade) summation with a fixed split, so the result depends
/// only on the input order. Error grows as O(eps log n).
inline double pairwise_sum(std::span<const double> x) {
  constexpr std::size_t kLeaf = 64;
  if (x.size() <= kLeaf) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace mahler
