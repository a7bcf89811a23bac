#include "mahler/harness.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mahler/errors.hpp"
#include "mahler/evaluator.hpp"
#include "mahler/parallel.hpp"
#include "mahler/random.hpp"
#include "mahler/summation.hpp"

namespace mahler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string at_index(const char* name, std::size_t j, double theta) {
  return std::string(name) + "=" + std::to_string(j) + " theta=" + num(theta);
}

void require_n(int n, int lo, const char* op) {
  if (n < lo) throw DomainError(std::string(op) + ": n must be at least " + std::to_string(lo));
  if (n > kMaxRudinShapiroDepth) {
    throw SizeError(std::string(op) + ": n exceeds cap " + std::to_string(kMaxRudinShapiroDepth));
  }
}

std::size_t pow2(int n) { return std::size_t{1} << n; }

std::vector<double> squared_moduli(const SignPolynomial& f, std::size_t m) {
  const CircleSamples s = evaluate_at_roots(f, m);
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = std::norm(s.values[j]);
  return out;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Smallest power of two above both 16 (deg + 1) - 1 and (q/2) deg, so |f|^q
// for even q is integrated exactly on the grid.
std::size_t exact_moment_grid(std::size_t degree, int q) {
  std::size_t m = std::max(oversampled_size(degree, kDefaultOversample), kMinArcNodes);
  const std::size_t need = static_cast<std::size_t>(q / 2) * degree;
  while (m <= need) m *= 2;
  return m;
}

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

std::string_view to_string(Statement s) {
  switch (s) {
    case Statement::eq11: return "eq11";
    case Statement::eq12: return "eq12";
    case Statement::lemma31: return "lemma31";
    case Statement::lemma32: return "lemma32";
    case Statement::lemma34: return "lemma34";
    case Statement::lemma35: return "lemma35";
    case Statement::thm21_ratio: return "thm21_ratio";
    case Statement::thm22_sum: return "thm22_sum";
    case Statement::thm23_subarc: return "thm23_subarc";
    case Statement::saffari: return "saffari";
    case Statement::littlewood_l4: return "littlewood_l4";
    case Statement::parseval: return "parseval";
    case Statement::borwein_lockhart: return "borwein_lockhart";
    case Statement::fekete_gauss: return "fekete_gauss";
  }
  return "unknown";
}

std::optional<Statement> parse_statement(std::string_view name) {
  for (Statement s : kAllStatements) {
    if (name == to_string(s)) return s;
  }
  static const std::pair<std::string_view, Statement> aliases[] = {
      {"flatness", Statement::eq11},
      {"conjugate_pairing", Statement::eq12},
      {"root_doubling", Statement::lemma31},
      {"node_sum", Statement::lemma32},
      {"trig_lower_bound", Statement::lemma34},
      {"adjacent_roots", Statement::lemma35},
      {"ratio", Statement::thm21_ratio},
      {"moment_sum", Statement::thm22_sum},
      {"subarc", Statement::thm23_subarc},
      {"l4", Statement::littlewood_l4},
      {"gauss", Statement::fekete_gauss},
  };
  for (const auto& [alias, s] : aliases) {
    if (name == alias) return s;
  }
  return std::nullopt;
}

std::string_view to_string(LengthClass c) {
  switch (c) {
    case LengthClass::critical: return "critical";
    case LengthClass::wide: return "wide";
    case LengthClass::narrow: return "narrow";
  }
  return "unknown";
}

double VerificationReport::detail(std::string_view key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  throw std::out_of_range("VerificationReport: no detail '" + std::string(key) + "'");
}

VerificationReport make_report(Statement s, double worst_margin, double tolerance, std::string witness,
                               std::vector<std::pair<std::string, double>> details) {
  VerificationReport r;
  r.statement = s;
  r.worst_margin = worst_margin;
  r.tolerance = tolerance;
  r.passed = worst_margin >= -tolerance;
  r.witness = std::move(witness);
  r.details = std::move(details);
  return r;
}

VerificationReport combine(const std::vector<VerificationReport>& reports) {
  if (reports.empty()) throw DomainError("combine: no reports");
  const VerificationReport* worst = &reports.front();
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.passed;
    if (r.worst_margin + r.tolerance < worst->worst_margin + worst->tolerance) worst = &r;
  }
  VerificationReport out = *worst;
  out.passed = all;
  out.details.emplace_back("cases", static_cast<double>(reports.size()));
  return out;
}

// ---------------------------------------------------------------------------
// Exact identities

VerificationReport check_flatness(int n, std::size_t m) {
  require_n(n, 0, "check_flatness");
  const std::size_t N = pow2(n);
  if (m < 2 * N) throw DomainError("check_flatness: m must be at least 2N");
  const RudinShapiroPair pair = rudin_shapiro(n);
  const std::vector<double> p = squared_moduli(pair.p, m);
  const std::vector<double> q = squared_moduli(pair.q, m);
  const double target = 2.0 * static_cast<double>(N);
  double dev = 0.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double d = std::abs(p[j] + q[j] - target);
    if (d > dev) {
      dev = d;
      arg = j;
    }
  }
  const double h = kTwoPi / static_cast<double>(m);
  return make_report(Statement::eq11, -dev, 1e-8 * static_cast<double>(N), at_index("j", arg, h * arg),
                     {{"n", n},
                      {"N", static_cast<double>(N)},
                      {"m", static_cast<double>(m)},
                      {"max_deviation", dev},
                      {"max_deviation_over_sqrtN", dev / std::sqrt(static_cast<double>(N))}});
}

VerificationReport check_conjugate_pairing(int n, std::size_t m) {
  require_n(n, 0, "check_conjugate_pairing");
  const std::size_t N = pow2(n);
  if (m < 2 * N || m % 2 != 0) throw DomainError("check_conjugate_pairing: m must be even and at least 2N");
  const RudinShapiroPair pair = rudin_shapiro(n);
  const CircleSamples p = evaluate_at_roots(pair.p, m);
  const CircleSamples q = evaluate_at_roots(pair.q, m);
  double dev = 0.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < m; ++j) {
    // -z_j = z_{j + m/2}
    const double d = std::abs(std::abs(q.values[j]) - std::abs(p.values[(j + m / 2) % m]));
    if (d > dev) {
      dev = d;
      arg = j;
    }
  }
  const double h = kTwoPi / static_cast<double>(m);
  const double sqrtN = std::sqrt(static_cast<double>(N));
  return make_report(Statement::eq12, -dev, 1e-8 * sqrtN, at_index("j", arg, h * arg),
                     {{"n", n},
                      {"N", static_cast<double>(N)},
                      {"m", static_cast<double>(m)},
                      {"max_deviation", dev},
                      {"max_deviation_over_sqrtN", dev / sqrtN}});
}

VerificationReport check_lemma31(int n) {
  require_n(n, 2, "check_lemma31");
  const std::size_t N = pow2(n);
  const RudinShapiroPair big = rudin_shapiro(n);
  const RudinShapiroPair small = rudin_shapiro(n - 2);
  const CircleSamples pn = evaluate_at_roots(big.p, N);
  const CircleSamples p2 = evaluate_at_roots(small.p, N);
  const CircleSamples q2 = evaluate_at_roots(small.q, N);
  const std::complex<double> two_i{0.0, 2.0};
  double dev = 0.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < N; ++j) {
    std::complex<double> expected;
    if (j % 2 == 0) {
      expected = 2.0 * p2.values[j];
    } else {
      const double sign = ((j - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
      expected = sign * two_i * q2.values[j];
    }
    const double d = std::abs(pn.values[j] - expected);
    if (d > dev) {
      dev = d;
      arg = j;
    }
  }
  const double sqrtN = std::sqrt(static_cast<double>(N));
  return make_report(Statement::lemma31, -dev, 1e-8 * sqrtN,
                     at_index("j", arg, kTwoPi * static_cast<double>(arg) / static_cast<double>(N)),
                     {{"n", n},
                      {"N", static_cast<double>(N)},
                      {"max_deviation", dev},
                      {"max_deviation_over_sqrtN", dev / sqrtN}});
}

VerificationReport check_lemma35(int n) {
  require_n(n, 2, "check_lemma35");
  const std::size_t N = pow2(n);
  const RudinShapiroPair pair = rudin_shapiro(n);
  const std::vector<double> v = squared_moduli(pair.p, N);
  const double bound = 2.0 * flatness_gamma() * static_cast<double>(N);
  double worst = kInf;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < N; j += 2) {
    const double next = std::max(v[j], v[(j + 1) % N]);
    const double prev = std::max(v[j], v[(j + N - 1) % N]);
    const double margin = (std::min(next, prev) - bound) / (2.0 * static_cast<double>(N));
    if (margin < worst) {
      worst = margin;
      arg = j;
    }
  }
  return make_report(Statement::lemma35, worst, 1e-12,
                     at_index("j", arg, kTwoPi * static_cast<double>(arg) / static_cast<double>(N)),
                     {{"n", n},
                      {"N", static_cast<double>(N)},
                      {"even_indices", static_cast<double>(N / 2)},
                      {"bound", bound},
                      {"min_margin", worst}});
}

VerificationReport check_lemma34(int n) {
  require_n(n, 2, "check_lemma34");
  const std::size_t N = pow2(n);
  const std::size_t k = pow2(n - 2);
  const double M = static_cast<double>(pow2(n - 1));
  const double gamma = flatness_gamma();
  const double delta = std::numbers::pi / (2.0 * static_cast<double>(k));
  const RudinShapiroPair small = rudin_shapiro(n - 2);
  const ShiftedGridEvaluator grid(small.q, N);

  const std::vector<std::complex<double>> centre = grid.evaluate(0.0);
  std::vector<std::uint8_t> active(N, 0);
  std::size_t count = 0;
  for (std::size_t j = 0; j < N; ++j) {
    if (std::norm(centre[j]) >= (1.0 - gamma) * M) {
      active[j] = 1;
      ++count;
    }
  }
  if (count == 0) {
    return make_report(Statement::lemma34, 0.0, 1e-9, "none",
                       {{"n", n}, {"k", static_cast<double>(k)}, {"M", M}, {"centres", 0.0}});
  }

  constexpr int kPoints = 32;
  double worst = kInf;
  std::string witness;
  std::vector<std::complex<double>> vals(N);
  for (int l = 0; l < kPoints; ++l) {
    const double s = -delta + 2.0 * delta * l / (kPoints - 1);
    grid.evaluate(s, vals);
    for (std::size_t j = 0; j < N; ++j) {
      if (!active[j]) continue;
      const double margin = (std::norm(vals[j]) - gamma * M) / M;
      if (margin < worst) {
        worst = margin;
        witness = "a_index=" + std::to_string(j) + " offset=" + num(s);
      }
    }
  }
  return make_report(Statement::lemma34, worst, 1e-9, witness,
                     {{"n", n},
                      {"k", static_cast<double>(k)},
                      {"M", M},
                      {"delta", delta},
                      {"centres", static_cast<double>(count)},
                      {"min_margin", worst}});
}

VerificationReport check_lemma32_inequality(const SignPolynomial& f, double A, std::optional<int> n_opt,
                                            const QuadratureConfig& cfg) {
  if (!(A > 0.0)) throw DomainError("check_lemma32_inequality: A must be positive");
  int n = 2;
  if (n_opt) {
    n = *n_opt;
  } else {
    while (pow2(n) < f.size()) ++n;
  }
  require_n(n, 2, "check_lemma32_inequality");
  const std::size_t N = pow2(n);

  // Nodes tau_j = 2 pi j / N, j = 1..N, where |P_n|^2 >= 2 gamma N.
  const RudinShapiroPair pair = rudin_shapiro(n);
  const std::vector<double> pv = squared_moduli(pair.p, N);
  const double bound = 2.0 * flatness_gamma() * static_cast<double>(N);
  std::vector<std::size_t> idx;
  for (std::size_t j = 1; j <= N; ++j) {
    if (pv[j % N] >= bound) idx.push_back(j);
  }
  if (idx.empty()) throw ConstructionError("check_lemma32_inequality: no node satisfies the modulus bound");
  const double h = kTwoPi / static_cast<double>(N);
  const std::size_t mu = idx.size();
  auto tau = [&](long long i) {
    // tau_0 = tau_mu - 2 pi, tau_{mu+1} = tau_1 + 2 pi
    if (i == 0) return h * static_cast<double>(idx[mu - 1]) - kTwoPi;
    if (i == static_cast<long long>(mu) + 1) return h * static_cast<double>(idx[0]) + kTwoPi;
    return h * static_cast<double>(idx[static_cast<std::size_t>(i - 1)]);
  };
  double gap = 0.0;
  for (std::size_t i = 1; i <= mu; ++i) gap = std::max(gap, tau(static_cast<long long>(i)) - tau(static_cast<long long>(i) - 1));
  const double allowed = A / static_cast<double>(N);
  if (gap > allowed * (1.0 + 1e-12)) {
    throw ConstructionError("check_lemma32_inequality: node gap " + num(gap) + " exceeds A/N = " + num(allowed));
  }

  const std::size_t M = std::bit_ceil(std::max(N, f.size()));
  const CircleSamples fv = evaluate_at_roots(f, M);
  const std::size_t stride = M / N;
  std::vector<double> terms(mu);
  bool hits_zero = false;
  for (std::size_t i = 1; i <= mu; ++i) {
    const double w = 0.5 * (tau(static_cast<long long>(i) + 1) - tau(static_cast<long long>(i) - 1));
    const double mod = std::abs(fv.values[(idx[i - 1] % N) * stride]);
    if (mod == 0.0) {
      hits_zero = true;
      terms[i - 1] = 0.0;
    } else {
      terms[i - 1] = w * std::log(mod);
    }
  }
  const double lhs = hits_zero ? -kInf : pairwise_sum(terms);
  const LogModulusIntegrator integrator(f, cfg);
  const auto integral = integrator.integrate(Arc::full_circle());
  const double B = 9.0 * A * A;
  const double rhs = integral.integral + B;
  return make_report(Statement::lemma32, rhs - lhs, 1e-6, "n=" + std::to_string(n),
                     {{"n", n},
                      {"nodes", static_cast<double>(mu)},
                      {"max_gap", gap},
                      {"A_over_N", allowed},
                      {"lhs", lhs},
                      {"integral", integral.integral},
                      {"B", B},
                      {"rhs", rhs}});
}

// ---------------------------------------------------------------------------
// Mahler measure growth, moment sums, subarcs

VerificationReport ratio_theorem21(int n, std::size_t jensen_limit, const QuadratureConfig& cfg,
                                   const RootConfig& rcfg) {
  require_n(n, 0, "ratio_theorem21");
  const RudinShapiroPair pair = rudin_shapiro(n);
  const double sqrtN = std::sqrt(static_cast<double>(pair.N));
  const double mp = mahler_quadrature(pair.p, Arc::full_circle(), cfg).value;
  const double mq = mahler_quadrature(pair.q, Arc::full_circle(), cfg).value;
  const double rp = mp / sqrtN;
  const double rq = mq / sqrtN;
  const double rel = rel_diff(mp, mq);

  std::vector<std::pair<std::string, double>> details{
      {"n", n}, {"m0_p", mp}, {"m0_q", mq}, {"ratio_p", rp}, {"ratio_q", rq}, {"rel_diff_pq", rel}};
  double margin = std::min({rp, rq, 1e-6 - rel});
  std::string witness = margin == 1e-6 - rel ? "P vs Q" : "ratio";
  if (pair.p.degree() >= 1 && pair.p.degree() <= jensen_limit) {
    const double jp = mahler_jensen(roots_aberth(pair.p, rcfg)).value;
    const double jq = mahler_jensen(roots_aberth(pair.q, rcfg)).value;
    const double dp = rel_diff(mp, jp);
    const double dq = rel_diff(mq, jq);
    details.insert(details.end(), {{"jensen_p", jp}, {"jensen_q", jq}, {"rel_diff_jensen_p", dp},
                                   {"rel_diff_jensen_q", dq}});
    if (1e-6 - dp < margin) {
      margin = 1e-6 - dp;
      witness = "quadrature vs jensen (P)";
    }
    if (1e-6 - dq < margin) {
      margin = 1e-6 - dq;
      witness = "quadrature vs jensen (Q)";
    }
  }
  return make_report(Statement::thm21_ratio, margin, 0.0, "n=" + std::to_string(n) + " " + witness,
                     std::move(details));
}

namespace {

double moment_partial_sum(int n, std::size_t k_max) {
  const RudinShapiroPair pair = rudin_shapiro(n);
  const auto [p, q] = normalize(pair);
  const MomentSeries s = moment_series(p, k_max, moment_grid_size(p.base().degree(), k_max));
  double sum = 0.0;
  for (std::size_t k = k_max; k >= 1; --k) sum += s.at(k) / static_cast<double>(k);
  return sum;
}

}  // namespace

VerificationReport thm22_moment_sum(int n, std::size_t k_max, int identity_n_max, const QuadratureConfig& cfg) {
  require_n(n, 1, "thm22_moment_sum");
  if (k_max < 10) throw DomainError("thm22_moment_sum: k_max must be at least 10");
  const double sum = moment_partial_sum(n, k_max);
  std::vector<std::pair<std::string, double>> details{{"n", n}, {"k_max", static_cast<double>(k_max)},
                                                      {"partial_sum", sum}};
  double margin = kInf;
  std::string witness = "n=" + std::to_string(n);
  if (n >= 2) {
    const double prev = moment_partial_sum(n - 1, k_max);
    details.emplace_back("partial_sum_prev", prev);
    margin = (1.1 * prev - sum) / prev;
    witness += " growth";
  }
  if (n <= identity_n_max) {
    const RudinShapiroPair pair = rudin_shapiro(n);
    const auto [p, q] = normalize(pair);
    const LogMomentIdentity half = moment_log_identity(p, k_max / 2, cfg);
    const LogMomentIdentity full = moment_log_identity(p, k_max, cfg);
    const double shrink = (half.residual - full.residual) / std::abs(full.lhs);
    details.insert(details.end(), {{"identity_lhs", full.lhs},
                                   {"identity_rhs", full.rhs_partial},
                                   {"residual", full.residual},
                                   {"residual_half_k", half.residual},
                                   {"relative_residual", full.residual / std::abs(full.lhs)}});
    if (shrink < margin) {
      margin = shrink;
      witness = "n=" + std::to_string(n) + " identity residual";
    }
  }
  if (margin == kInf) margin = 0.0;
  return make_report(Statement::thm22_sum, margin, 1e-8, witness, std::move(details));
}

double critical_arc_length(std::size_t N) {
  const double l = std::log(static_cast<double>(N));
  return std::pow(l, 1.5) / std::sqrt(static_cast<double>(N));
}

double lemma36_bound(double N, double delta, double w1, double w2, double R) {
  const double len = w2 - w1;
  const double ld = std::log(1.0 / delta);
  return len * N * delta + N * delta * delta * ld + std::sqrt(N * std::log(R)) * (delta * ld + delta * delta / len);
}

std::vector<SweepRow> thm23_subarc_sweep(int n, const SweepOptions& opt, const QuadratureConfig& cfg) {
  require_n(n, 1, "thm23_subarc_sweep");
  const std::size_t N = pow2(n);
  const double crit = critical_arc_length(N);
  if (32.0 * std::numbers::pi / static_cast<double>(N) > crit) {
    throw DomainError("thm23_subarc_sweep: needs 32 pi / N <= (log N)^{3/2} / sqrt N (n >= 7)");
  }
  for (double w : opt.widths) {
    if (!(w > 0.0)) throw DomainError("thm23_subarc_sweep: width multipliers must be positive");
    if (w < 1.0 && !opt.explore_narrow) {
      throw DomainError("thm23_subarc_sweep: arcs below the critical length need explore_narrow");
    }
  }
  const RudinShapiroPair pair = rudin_shapiro(n);
  const LogModulusIntegrator integrator(pair.p, cfg);
  const double sqrtN = std::sqrt(static_cast<double>(N));
  const double dN = static_cast<double>(N);
  SplitMix64 rng(opt.seed);
  std::vector<SweepRow> rows;
  rows.reserve(opt.widths.size() * opt.count);
  for (double w : opt.widths) {
    const double len = std::min(w * crit, kTwoPi);
    const LengthClass cls = w < 1.0 ? LengthClass::narrow : (w == 1.0 ? LengthClass::critical : LengthClass::wide);
    for (std::size_t i = 0; i < opt.count; ++i) {
      const double alpha = kTwoPi * rng.uniform();
      const Arc arc{alpha, alpha + len};
      SweepRow row;
      row.n = n;
      row.arc = arc;
      row.measure_value = integrator.mahler(arc).value;
      row.ratio_to_sqrtN = row.measure_value / sqrtN;
      row.arc_length_class = cls;
      row.e_bound = lemma36_bound(dN, 4.0 * std::numbers::pi / dN, arc.alpha, arc.beta, dN);
      rows.push_back(row);
    }
  }
  return rows;
}

VerificationReport thm23_report(int n, const SweepOptions& opt, const QuadratureConfig& cfg) {
  const std::vector<SweepRow> rows = thm23_subarc_sweep(n, opt, cfg);
  double min_crit = kInf, min_wide = kInf, min_narrow = kInf;
  double margin = kInf;
  std::string witness = "none";
  for (const SweepRow& r : rows) {
    double* slot = r.arc_length_class == LengthClass::critical ? &min_crit
                   : r.arc_length_class == LengthClass::wide   ? &min_wide
                                                                : &min_narrow;
    *slot = std::min(*slot, r.ratio_to_sqrtN);
    if (r.arc_length_class != LengthClass::narrow && r.ratio_to_sqrtN < margin) {
      margin = r.ratio_to_sqrtN;
      witness = "n=" + std::to_string(n) + " alpha=" + num(r.arc.alpha) + " beta=" + num(r.arc.beta);
    }
  }
  std::vector<std::pair<std::string, double>> details{{"n", n},
                                                      {"arcs", static_cast<double>(rows.size())},
                                                      {"critical_length", critical_arc_length(pow2(n))}};
  if (min_crit < kInf) details.emplace_back("min_ratio_critical", min_crit);
  if (min_wide < kInf) details.emplace_back("min_ratio_wide", min_wide);
  if (min_narrow < kInf) details.emplace_back("min_ratio_narrow", min_narrow);
  if (margin == kInf) margin = 0.0;
  return make_report(Statement::thm23_subarc, margin, 0.0, witness, std::move(details));
}

// ---------------------------------------------------------------------------
// Norm asymptotics

VerificationReport saffari_check(int n, int q) {
  if (q < 2 || q > 52 || q % 2 != 0) throw DomainError("saffari_check: q must be even with 2 <= q <= 52");
  require_n(n, 10, "saffari_check");
  const RudinShapiroPair pair = rudin_shapiro(n);
  const CircleSamples s = evaluate_at_roots(pair.p, exact_moment_grid(pair.p.degree(), q));
  const double value = mq_norm(s, q, Arc::full_circle()).value;
  const double ratio = value / std::pow(2.0, 0.5 * (n + 1));
  const double target = std::pow(q / 2.0 + 1.0, -1.0 / q);
  const double rel = std::abs(ratio / target - 1.0);
  return make_report(Statement::saffari, 0.05 - rel, 0.0, "n=" + std::to_string(n) + " q=" + std::to_string(q),
                     {{"n", n}, {"q", q}, {"ratio", ratio}, {"target", target}, {"rel_error", rel}});
}

VerificationReport check_littlewood_l4(int n) {
  require_n(n, 0, "check_littlewood_l4");
  const RudinShapiroPair pair = rudin_shapiro(n);
  const CircleSamples s = evaluate_at_roots(pair.p, exact_moment_grid(pair.p.degree(), 4));
  const double value = mq_norm(s, 4.0, Arc::full_circle()).value;
  const double asym = std::pow(4.0, n + 1) / 3.0;
  const double ratio = std::pow(value, 4) / asym;
  return make_report(Statement::littlewood_l4, 0.02 - std::abs(ratio - 1.0), 0.0, "n=" + std::to_string(n),
                     {{"n", n}, {"m4", value}, {"ratio", ratio}});
}

VerificationReport check_parseval(int n) {
  require_n(n, 0, "check_parseval");
  const RudinShapiroPair pair = rudin_shapiro(n);
  const CircleSamples s = evaluate_at_roots(pair.p, exact_moment_grid(pair.p.degree(), 2));
  const double value = mq_norm(s, 2.0, Arc::full_circle()).value;
  const double target = std::pow(2.0, 0.5 * n);
  const double rel = std::abs(value - target) / target;
  return make_report(Statement::parseval, -rel, 1e-8, "n=" + std::to_string(n),
                     {{"n", n}, {"m2", value}, {"target", target}, {"rel_error", rel}});
}

VerificationReport borwein_lockhart_mc(std::size_t degree, int q, std::size_t trials, std::uint64_t seed) {
  if (q < 2 || q % 2 != 0 || q > 52) throw DomainError("borwein_lockhart_mc: q must be even with 2 <= q <= 52");
  if (trials < 100) throw DomainError("borwein_lockhart_mc: need at least 100 trials");
  if (degree < 1) throw DomainError("borwein_lockhart_mc: degree must be positive");
  SplitMix64 master(seed);
  std::vector<std::uint64_t> seeds(trials);
  for (auto& s : seeds) s = master.next();
  const std::size_t m = exact_moment_grid(degree, q);
  const double norm = std::pow(static_cast<double>(degree), q / 2.0);
  std::vector<double> stat(trials);
  parallel_for(trials, [&](std::size_t b, std::size_t e) {
    std::vector<double> powq(m);
    for (std::size_t t = b; t < e; ++t) {
      SplitMix64 rng(seeds[t]);
      const SignPolynomial f = random_littlewood(degree, rng);
      const CircleSamples s = evaluate_at_roots(f, m);
      for (std::size_t j = 0; j < m; ++j) powq[j] = std::pow(std::norm(s.values[j]), q / 2);
      stat[t] = pairwise_sum(powq) / static_cast<double>(m) / norm;
    }
  });
  const double mean = pairwise_sum(stat) / static_cast<double>(trials);
  std::vector<double> sq(trials);
  for (std::size_t t = 0; t < trials; ++t) sq[t] = (stat[t] - mean) * (stat[t] - mean);
  const double var = pairwise_sum(sq) / static_cast<double>(trials - 1);
  const double se = std::sqrt(var / static_cast<double>(trials));
  const double target = factorial(q / 2);
  // The finite-degree mean is (q/2)! (1 + c/d + ...): c = 1 at q = 2 and 3/2 at
  // q = 4. k^2 (k = q/2) bounds c for both and keeps the floor exact at q = 2.
  const double k = q / 2;
  const double floor = target * k * k / static_cast<double>(degree);
  const double allowed = std::max(3.0 * se, floor);
  const double dev = std::abs(mean - target);
  return make_report(Statement::borwein_lockhart, allowed - dev, 1e-12 * target,
                     "degree=" + std::to_string(degree) + " q=" + std::to_string(q),
                     {{"degree", static_cast<double>(degree)},
                      {"q", q},
                      {"trials", static_cast<double>(trials)},
                      {"mean", mean},
                      {"standard_error", se},
                      {"target", target},
                      {"bias_floor", floor},
                      {"rel_error", dev / target}});
}

VerificationReport fekete_gauss_check(std::int64_t p) {
  const SignPolynomial f = fekete(p);
  const auto P = static_cast<std::size_t>(p);
  const CircleSamples s = evaluate_at_roots_any(f, P);
  const double root_p = std::sqrt(static_cast<double>(p));
  double dev = 0.0;
  std::size_t arg = 1;
  for (std::size_t j = 1; j < P; ++j) {
    const double d = std::abs(std::abs(s.values[j]) - root_p);
    if (d > dev) {
      dev = d;
      arg = j;
    }
  }
  const double at_one = std::abs(s.values[0]);
  const double m1 = 1e-8 * root_p - dev;
  const double m2 = 1e-10 * static_cast<double>(p) - at_one;
  return make_report(Statement::fekete_gauss, std::min(m1, m2), 0.0,
                     m1 <= m2 ? "p=" + std::to_string(p) + " j=" + std::to_string(arg)
                              : "p=" + std::to_string(p) + " z=1",
                     {{"p", static_cast<double>(p)}, {"max_deviation", dev}, {"abs_f_at_1", at_one}});
}

// ---------------------------------------------------------------------------
// Aggregation

VerificationReport verify_statement(Statement s, const VerifyAllOptions& opt) {
  const int nm = opt.n_max;
  if (nm < 0) throw DomainError("verify: n_max must be nonnegative");
  std::vector<VerificationReport> out;
  auto range = [&](int lo, auto fn) {
    const int hi = std::max(lo, nm);
    for (int n = lo; n <= hi; ++n) out.push_back(fn(n));
  };
  switch (s) {
    case Statement::eq11:
      range(0, [](int n) { return check_flatness(n, 4 * pow2(n)); });
      break;
    case Statement::eq12:
      range(0, [](int n) { return check_conjugate_pairing(n, 4 * pow2(n)); });
      break;
    case Statement::lemma31:
      range(2, check_lemma31);
      break;
    case Statement::lemma32:
      range(2, [&](int n) {
        return check_lemma32_inequality(rudin_shapiro(n).p, 4.0 * std::numbers::pi, n, opt.quadrature);
      });
      break;
    case Statement::lemma34:
      range(2, check_lemma34);
      break;
    case Statement::lemma35:
      range(2, check_lemma35);
      break;
    case Statement::thm21_ratio:
      range(0, [&](int n) { return ratio_theorem21(n, kDefaultJensenLimit, opt.quadrature, opt.roots); });
      break;
    case Statement::thm22_sum:
      range(1, [&](int n) { return thm22_moment_sum(n, 400, 12, opt.quadrature); });
      break;
    case Statement::thm23_subarc:
      range(7, [&](int n) {
        SweepOptions so;
        so.seed = opt.seed;
        return thm23_report(n, so, opt.quadrature);
      });
      break;
    case Statement::saffari:
      range(10, [&](int n) {
        std::vector<VerificationReport> qs;
        for (int q : {2, 4, 6, 8}) qs.push_back(saffari_check(n, q));
        VerificationReport r = combine(qs);
        r.details.pop_back();
        return r;
      });
      break;
    case Statement::littlewood_l4:
      range(5, check_littlewood_l4);
      break;
    case Statement::parseval:
      range(0, check_parseval);
      break;
    case Statement::borwein_lockhart:
      out.push_back(borwein_lockhart_mc(1000, 2, 2000, opt.seed));
      out.push_back(borwein_lockhart_mc(1000, 4, 2000, opt.seed));
      break;
    case Statement::fekete_gauss:
      for (std::int64_t p : {3, 5, 7, 101, 1009}) out.push_back(fekete_gauss_check(p));
      break;
  }
  return combine(out);
}

std::vector<VerificationReport> verify_all(const VerifyAllOptions& opt) {
  std::vector<VerificationReport> out;
  for (Statement s : kAllStatements) out.push_back(verify_statement(s, opt));
  return out;
}

}  // namespace mahler
