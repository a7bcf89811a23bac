// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "mahler/harness.hpp"
#include "mahler/measure.hpp"
#include "mahler/number_theory.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/roots.hpp"
#include "oracles.hpp"

using namespace mahler;

namespace {

struct Outcome {
  bool passed = true;
  std::string summary;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

Outcome exact_identities() {
  double worst = 0.0;  // max deviation / sqrt N over all three checks
  bool ok = true;
  for (int n = 0; n <= 18; ++n) {
    const double sqrtN = std::sqrt(std::ldexp(1.0, n));
    const std::size_t N = std::size_t{1} << n;
    std::vector<VerificationReport> rs{check_flatness(n, 2 * N), check_conjugate_pairing(n, 2 * N)};
    if (n >= 2) rs.push_back(check_lemma31(n));
    for (const auto& r : rs) {
      const double dev = r.detail("max_deviation");
      ok = ok && r.passed && dev <= 1e-8 * sqrtN;
      worst = std::max(worst, dev / sqrtN);
    }
  }
  return {ok, "max deviation / sqrt N = " + fmt("%.3g", worst)};
}

Outcome neighbour_maxima() {
  double worst = INFINITY;
  bool ok = true;
  for (int n = 2; n <= 18; ++n) {
    const auto r = check_lemma35(n);
    ok = ok && r.passed;
    worst = std::min(worst, r.worst_margin);
  }
  return {ok, "min (max - 2 gamma N) / 2N = " + fmt("%.6g", worst)};
}

Outcome parseval() {
  double worst = 0.0;
  bool ok = true;
  for (int n = 0; n <= 16; ++n) {
    const auto r = check_parseval(n);
    const double rel = r.detail("rel_error");
    ok = ok && rel <= 1e-8;
    worst = std::max(worst, rel);
  }
  return {ok, "max relative error = " + fmt("%.3g", worst)};
}

Outcome littlewood_l4() {
  const auto r = check_littlewood_l4(14);
  const double ratio = r.detail("ratio");
  return {ratio >= 0.98 && ratio <= 1.02, "M_4^4 / (4^15/3) = " + fmt("%.8f", ratio)};
}

Outcome saffari() {
  bool ok = true;
  std::string s;
  for (int q : {4, 6, 8}) {
    const auto r = saffari_check(16, q);
    const double rel = r.detail("rel_error");
    ok = ok && rel <= 0.05;
    s += "q=" + std::to_string(q) + " rel " + fmt("%.3g", rel) + "; ";
  }
  return {ok, s};
}

Outcome cross_method() {
  double worst = 0.0;
  std::string where;
  auto compare = [&](const SignPolynomial& f, const std::string& name) {
    const double q = mahler_quadrature(f).value;
    const double j = mahler_jensen(roots_aberth(f)).value;
    const double d = rel_diff(q, j);
    if (d > worst) {
      worst = d;
      where = name;
    }
  };
  for (int n = 1; n <= 12; ++n) {
    const auto pair = rudin_shapiro(n);
    compare(pair.p, "P_" + std::to_string(n));
    compare(pair.q, "Q_" + std::to_string(n));
  }
  for (std::int64_t p = 3; p <= 101; p += 2) {
    if (is_prime(static_cast<std::uint64_t>(p))) compare(fekete(p), "f_" + std::to_string(p));
  }
  const double m1q = mahler_quadrature(rudin_shapiro(1).p).value;
  const double m1j = mahler_jensen(roots_aberth(rudin_shapiro(1).p)).value;
  const double m2q = mahler_quadrature(rudin_shapiro(2).p).value;
  const double cubic = oracle::cubic_p2_root();
  // M_0(1 + z) = 1: the root -1 sits on the circle, so quadrature integrates a
  // log singularity and is held to 1e-9; the root product is exact.
  const bool anchors = std::abs(m1q - 1.0) <= 1e-9 && m1j == 1.0 && std::abs(m2q - cubic) <= 1e-6;
  return {worst <= 1e-6 && anchors, "max rel diff " + fmt("%.3g", worst) + " (" + where + "); M_0(P_1) = " +
                                        fmt("%.17g", m1q) + ", M_0(P_2) - cubic root = " + fmt("%.3g", m2q - cubic)};
}

Outcome ratio_positive() {
  bool ok = true;
  double lo = INFINITY, hi = 0.0, pq = 0.0;
  for (int n = 2; n <= 18; ++n) {
    const auto pair = rudin_shapiro(n);
    const double sqrtN = std::sqrt(static_cast<double>(pair.N));
    const double mp = mahler_quadrature(pair.p).value;
    const double mq = mahler_quadrature(pair.q).value;
    const double r = mp / sqrtN;
    ok = ok && r > 0.5 && r < 1.0 && rel_diff(mp, mq) <= 1e-6;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    pq = std::max(pq, rel_diff(mp, mq));
  }
  return {ok, "M_0(P_n)/sqrt N in [" + fmt("%.6f", lo) + ", " + fmt("%.6f", hi) + "], max |P vs Q| rel " +
                  fmt("%.3g", pq)};
}

Outcome moment_sums() {
  const std::size_t k_max = 400;
  double lo = INFINITY, hi = 0.0;
  for (int n = 4; n <= 14; ++n) {
    const auto [p, q] = normalize(rudin_shapiro(n));
    const auto ms = moment_series(p, k_max, moment_grid_size(p.base().degree(), k_max));
    std::vector<double> terms;
    for (std::size_t k = 1; k <= k_max; ++k) terms.push_back(ms.at(k) / static_cast<double>(k));
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const double variation = (hi - lo) / hi;
  // The identity residual is held to 1 percent from n = 4 on. For n = 1 and
  // n = 3 max|P~_n| = 1 and the series tail decays too slowly for k_max = 400.
  double worst = 0.0;
  for (int n = 4; n <= 10; ++n) {
    const auto [p, q] = normalize(rudin_shapiro(n));
    const auto id = moment_log_identity(p, k_max);
    worst = std::max(worst, id.residual / std::abs(id.lhs));
  }
  return {variation < 0.10 && worst < 0.01, "sums in [" + fmt("%.5f", lo) + ", " + fmt("%.5f", hi) +
                                                 "], variation " + fmt("%.4f", variation) +
                                                 "; max identity residual / |lhs| " + fmt("%.3g", worst)};
}

Outcome subarcs() {
  bool ok = true;
  std::string s;
  for (int n : {12, 14, 16}) {
    SweepOptions opt;
    opt.count = 32;
    opt.widths = {1.0};
    const auto rows = thm23_subarc_sweep(n, opt);
    double lo = INFINITY;
    for (const auto& r : rows) lo = std::min(lo, r.ratio_to_sqrtN);
    ok = ok && rows.size() == 32 && lo > 0.1;
    s += "n=" + std::to_string(n) + " min " + fmt("%.4f", lo) + "; ";
  }
  return {ok, s};
}

Outcome node_sum() {
  bool ok = true;
  std::string s;
  const double A = 4.0 * std::numbers::pi;
  for (int n : {8, 10, 12}) {
    const auto r = check_lemma32_inequality(rudin_shapiro(n).p, A, n);
    ok = ok && r.passed && r.detail("lhs") <= r.detail("rhs");
    s += "n=" + std::to_string(n) + " slack " + fmt("%.4g", r.detail("rhs") - r.detail("lhs")) + "; ";
  }
  return {ok, s};
}

Outcome fekete_gauss() {
  bool ok = true;
  double worst = 0.0;
  for (std::int64_t p : {5, 101, 1009, 10007}) {
    const auto r = fekete_gauss_check(p);
    const double sqrtp = std::sqrt(static_cast<double>(p));
    ok = ok && r.detail("max_deviation") <= 1e-8 * sqrtp && r.detail("abs_f_at_1") == 0.0;
    worst = std::max(worst, r.detail("max_deviation") / sqrtp);
  }
  return {ok, "max | |f_p| - sqrt p | / sqrt p = " + fmt("%.3g", worst)};
}

Outcome borwein_lockhart() {
  const auto r4 = borwein_lockhart_mc(1000, 4, 2000, 0x5eed);
  const auto r2 = borwein_lockhart_mc(1000, 2, 2000, 0x5eed);
  const double rel4 = std::abs(r4.detail("mean") - 2.0) / 2.0;
  // The q = 2 mean is (d + 1)/d = 1.001 exactly; 1e-12 absorbs the rounding of that sum.
  const double dev2 = std::abs(r2.detail("mean") - 1.0);
  return {rel4 <= 0.05 && dev2 <= 1e-3 + 1e-12,
          "q=4 mean " + fmt("%.5f", r4.detail("mean")) + " (SE " + fmt("%.2g", r4.detail("standard_error")) +
              "), q=2 mean " + fmt("%.12f", r2.detail("mean"))};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0: no time limit attached
  };
  const std::vector<Criterion> criteria{
      {"exact identities n <= 18", exact_identities, 60},
      {"neighbour maxima 2 <= n <= 18", neighbour_maxima, 120},
      {"M_2(P_n) = 2^{n/2}, n <= 16", parseval, 0},
      {"L4 ratio at n = 14", littlewood_l4, 0},
      {"even moments at n = 16", saffari, 0},
      {"quadrature vs Jensen", cross_method, 0},
      {"M_0(P_n)/sqrt N, 2 <= n <= 18", ratio_positive, 0},
      {"moment sums and log identity", moment_sums, 0},
      {"critical subarcs n in {12,14,16}", subarcs, 600},
      {"node-sum inequality A = 4 pi", node_sum, 0},
      {"Fekete Gauss property", fekete_gauss, 0},
      {"random Littlewood moments", borwein_lockhart, 0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.passed = false;
      o.summary += " over time budget";
    }
    if (!o.passed) ++failures;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", i + 1, c.name, o.summary.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
