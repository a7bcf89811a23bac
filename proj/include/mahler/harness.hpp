#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mahler/measure.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/roots.hpp"

namespace mahler {

enum class Statement {
  eq11,  // flatness |P|^2 + |Q|^2 = 2N
  eq12,  // |Q_n(z)| = |P_n(-z)|
  lemma31,
  lemma32,
  lemma34,
  lemma35,
  thm21_ratio,
  thm22_sum,
  thm23_subarc,
  saffari,
  littlewood_l4,
  parseval,
  borwein_lockhart,
  fekete_gauss,
};

inline constexpr Statement kAllStatements[] = {
    Statement::eq11,         Statement::eq12,          Statement::lemma31,       Statement::lemma32,
    Statement::lemma34,      Statement::lemma35,       Statement::thm21_ratio,   Statement::thm22_sum,
    Statement::thm23_subarc, Statement::saffari,       Statement::littlewood_l4, Statement::parseval,
    Statement::borwein_lockhart, Statement::fekete_gauss,
};

std::string_view to_string(Statement s);
/// Canonical names plus descriptive aliases ("flatness", "conjugate_pairing", ...).
std::optional<Statement> parse_statement(std::string_view name);

/// gamma = sin^2(pi/8).
inline double flatness_gamma() { return std::pow(std::sin(std::numbers::pi / 8.0), 2); }
/// (2 - sqrt 2) / 4, the same constant in closed form.
inline double flatness_gamma_closed_form() { return (2.0 - std::numbers::sqrt2) / 4.0; }

// worst_margin is the signed slack of the checked relation (negative means
// violated) and tolerance the violation allowed for rounding, so
// passed == (worst_margin >= -tolerance).
struct VerificationReport {
  Statement statement = Statement::eq11;
  bool passed = false;
  double worst_margin = 0.0;
  double tolerance = 0.0;
  std::string witness;
  std::vector<std::pair<std::string, double>> details;

  double detail(std::string_view key) const;  // throws std::out_of_range
};

/// Fills passed from worst_margin and tolerance.
VerificationReport make_report(Statement s, double worst_margin, double tolerance, std::string witness,
                               std::vector<std::pair<std::string, double>> details);

/// Worst member of a non-empty list (smallest margin + tolerance); passed only if all passed.
VerificationReport combine(const std::vector<VerificationReport>& reports);

// Exact identities on sample grids. Details carry max_deviation.
VerificationReport check_flatness(int n, std::size_t m);          // m >= 2N, tol 1e-8 N
VerificationReport check_conjugate_pairing(int n, std::size_t m);  // m even, m >= 2N, tol 1e-8 sqrt N
VerificationReport check_lemma31(int n);                           // n >= 2, tol 1e-8 sqrt N

/// For every even j: max(|P_n(z_j)|^2, |P_n(z_{j+-1})|^2) >= 2 gamma N at the
/// N-th roots of unity. Margin is min (max - 2 gamma N) / (2N).
VerificationReport check_lemma35(int n);

/// S(t) = |Q_{n-2}(e^{it})|^2 >= gamma M on [a - delta, a + delta], delta = pi/(2k),
/// sampled at 32 points around every N-th root a with S(a) >= (1 - gamma) M.
VerificationReport check_lemma34(int n);

/// Node-sum inequality: sum ((tau_{j+1} - tau_{j-1})/2) log|f(e^{i tau_j})| <=
/// int log|f| + 9 A^2, nodes tau_j being the N-th roots (N = 2^n) where
/// |P_n|^2 >= 2 gamma N. n defaults to the smallest n >= 2 with 2^n >= deg + 1.
/// Throws ConstructionError when some node gap exceeds A / N.
VerificationReport check_lemma32_inequality(const SignPolynomial& f, double A, std::optional<int> n = std::nullopt,
                                            const QuadratureConfig& cfg = {});

inline constexpr std::size_t kDefaultJensenLimit = std::size_t{1} << 12;

/// M_0(P_n)/sqrt N and M_0(Q_n)/sqrt N by quadrature; passes when both are
/// positive and agree within 1e-6 relative, and the Jensen values (degree
/// <= jensen_limit) agree with quadrature within 1e-6 relative.
VerificationReport ratio_theorem21(int n, std::size_t jensen_limit = kDefaultJensenLimit,
                                   const QuadratureConfig& cfg = {}, const RootConfig& rcfg = {});

/// sum_{k <= k_max} I_k(P~_n)/k next to the same sum for n - 1 (must not
/// exceed it by more than 10 percent), plus the log-moment identity residual
/// at k_max / 2 and k_max (must shrink). The identity is skipped above
/// identity_n_max; it needs a grid of k_max * N points.
VerificationReport thm22_moment_sum(int n, std::size_t k_max, int identity_n_max = 12,
                                    const QuadratureConfig& cfg = {});

enum class LengthClass { critical, wide, narrow };
std::string_view to_string(LengthClass c);

struct SweepRow {
  int n = 0;
  Arc arc;
  double measure_value = 0.0;
  double ratio_to_sqrtN = 0.0;
  LengthClass arc_length_class = LengthClass::critical;
  double e_bound = 0.0;  // E(N, 4 pi / N, alpha, beta) with R = N
};

/// (log N)^{3/2} / sqrt N.
double critical_arc_length(std::size_t N);

/// E(N, delta, w1, w2) = (w2 - w1) N delta + N delta^2 log(1/delta)
///   + sqrt(N log R) (delta log(1/delta) + delta^2 / (w2 - w1)).
double lemma36_bound(double N, double delta, double w1, double w2, double R);

struct SweepOptions {
  std::size_t count = 32;
  std::uint64_t seed = 0x5eed;
  std::vector<double> widths{1.0, 2.0, 8.0};  // multiples of the critical length, capped at 2 pi
  bool explore_narrow = false;                // allow multiples below 1 (labelled narrow)
};

/// M_0(P_n, arc)/sqrt N for `count` seeded random arc positions per width.
/// Requires 32 pi / N <= critical length (n >= 7). Multiples below 1 throw
/// DomainError unless explore_narrow is set.
std::vector<SweepRow> thm23_subarc_sweep(int n, const SweepOptions& opt = {}, const QuadratureConfig& cfg = {});

/// Sweep summary: passes when every non-narrow ratio is positive. Details
/// hold the minimum ratio per length class.
VerificationReport thm23_report(int n, const SweepOptions& opt = {}, const QuadratureConfig& cfg = {});

/// M_q(P_n)/2^{(n+1)/2} against (q/2 + 1)^{-1/q}; passes within 5 percent.
/// q even in [2, 52], n >= 10.
VerificationReport saffari_check(int n, int q);

/// M_4(P_n)^4 / (4^{n+1}/3) in [0.98, 1.02].
VerificationReport check_littlewood_l4(int n);

/// M_2(P_n) = 2^{n/2} within 1e-8 relative.
VerificationReport check_parseval(int n);

/// Mean of M_q(f)^q / d^{q/2} over seeded random Littlewood polynomials of
/// degree d against (q/2)!. Passes within max(3 SE, (q/2)! (q/2)^2 / d); the
/// second term covers the O(1/d) finite-degree bias, which dominates at q = 2.
VerificationReport borwein_lockhart_mc(std::size_t degree, int q, std::size_t trials, std::uint64_t seed);

/// |f_p| = sqrt p at the nontrivial p-th roots within 1e-8 sqrt p, and |f_p(1)| <= 1e-10 p.
VerificationReport fekete_gauss_check(std::int64_t p);

struct VerifyAllOptions {
  int n_max = 12;
  std::uint64_t seed = 0x5eed;
  QuadratureConfig quadrature{};
  RootConfig roots{};
};

/// One combined report per statement over a default parameter range up to n_max.
std::vector<VerificationReport> verify_all(const VerifyAllOptions& opt);

/// Single statement over the same ranges verify_all uses.
VerificationReport verify_statement(Statement s, const VerifyAllOptions& opt);

}  // namespace mahler
