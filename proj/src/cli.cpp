#include "mahler/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mahler/errors.hpp"
#include "mahler/evaluator.hpp"
#include "mahler/harness.hpp"
#include "mahler/measure.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/random.hpp"
#include "mahler/roots.hpp"
#include "mahler/serialize.hpp"

namespace mahler::cli {

namespace {

struct Options {
  // family selector
  std::optional<int> rs;
  std::optional<std::int64_t> fekete_p;
  std::optional<std::string> file;
  bool shifted = false;
  std::optional<std::string> member;

  double q = 0.0;
  std::vector<double> arc;
  std::size_t oversample = kDefaultOversample;
  std::optional<std::size_t> m;
  std::uint64_t seed = 0x5eed;
  std::string format = "json";
  std::optional<std::string> out_path;
  std::string method = "quadrature";

  // verify / sweep
  std::optional<std::string> statement;
  bool all = false;
  int n_max = 12;
  std::optional<int> n;
  std::optional<std::int64_t> p;
  std::optional<int> q_even;
  std::size_t k_max = 400;
  std::size_t count = 32;
  std::size_t degree = 1000;
  std::size_t trials = 2000;
  double lemma_a = 4.0 * std::numbers::pi;
  std::vector<double> widths{1.0, 2.0, 8.0};
  bool explore_narrow = false;
  std::optional<double> scale;
  bool identity = false;

  QuadratureConfig quad;
  RootConfig roots;
  std::size_t jensen_limit = kDefaultJensenLimit;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

void add_selector(CLI::App* app, Options& o) {
  app->add_option("--rs", o.rs, "Rudin-Shapiro depth n (length 2^n)");
  app->add_option("--fekete", o.fekete_p, "Fekete polynomial for the odd prime P");
  app->add_option("--file", o.file, "Polynomial in text form (+, -, 0 per coefficient)");
  app->add_flag("--shifted", o.shifted, "With --fekete: use f_p(z)/z");
  app->add_option("--member", o.member, "With --rs: p or q")->check(CLI::IsMember({"p", "q", "both"}));
}

void add_output(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--out", o.out_path, "Write output to this file");
}

void add_quadrature(CLI::App* app, Options& o) {
  app->add_option("--oversample", o.oversample, "Base grid oversampling factor (>= 2)");
  app->add_option("--refine-threshold", o.quad.refine_threshold, "Refine cells below this fraction of max|f|");
  app->add_option("--panel-order", o.quad.panel_order, "Gauss-Legendre points per refinement panel");
  app->add_option("--tol", o.quad.tol, "Absolute tolerance per cell");
  app->add_option("--max-depth", o.quad.max_depth, "Maximum bisection depth");
}

void add_roots(CLI::App* app, Options& o) {
  app->add_option("--eps", o.roots.eps, "Aberth step tolerance");
  app->add_option("--max-iters", o.roots.max_iters, "Aberth iteration cap");
  app->add_option("--max-degree", o.roots.max_degree, "Largest degree handed to the root finder");
}

SignPolynomial read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::string line;
  std::getline(in, line);
  return parse_text(line);
}

// Polynomials named by the selector; --rs with --member both gives P and Q.
std::vector<SignPolynomial> select(const Options& o, bool allow_both) {
  const std::string member = o.member.value_or(allow_both ? "both" : "p");
  const int given = (o.rs ? 1 : 0) + (o.fekete_p ? 1 : 0) + (o.file ? 1 : 0);
  if (given != 1) throw UsageError("exactly one of --rs, --fekete, --file is required");
  if (o.rs) {
    const RudinShapiroPair pair = rudin_shapiro(*o.rs);
    if (member == "both") {
      if (!allow_both) throw UsageError("--member both is only accepted by construct");
      return {pair.p, pair.q};
    }
    return {member == "q" ? pair.q : pair.p};
  }
  if (o.fekete_p) return {o.shifted ? fekete_shifted(*o.fekete_p) : fekete(*o.fekete_p)};
  return {read_file(*o.file)};
}

void check_common(const Options& o) {
  if (o.oversample < 2) throw UsageError("--oversample must be at least 2");
}

std::string text_value(double v) { return format_double(v); }

// ---------------------------------------------------------------------------

int cmd_construct(const Options& o, std::ostream& out) {
  const std::vector<SignPolynomial> polys = select(o, true);
  if (o.format == "text" || o.format == "csv") {
    for (const auto& f : polys) out << to_text(f) << "\n";
    return kExitOk;
  }
  Json j;
  if (o.rs) {
    j["n"] = *o.rs;
    j["N"] = polys.front().size();
  }
  Json arr = Json::array();
  for (const auto& f : polys) arr.push_back(to_json(f));
  j["polynomials"] = std::move(arr);
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  check_common(o);
  const SignPolynomial f = select(o, false).front();
  const std::size_t m = o.m ? *o.m : oversampled_size(f.degree(), o.oversample);
  const CircleSamples s = evaluate_at_roots(f, m);
  if (o.format == "csv") {
    out << samples_csv(s);
  } else if (o.format == "text") {
    for (std::size_t j = 0; j < s.m; ++j) {
      out << format_double(s.theta(j)) << " " << format_double(s.values[j].real()) << " "
          << format_double(s.values[j].imag()) << "\n";
    }
  } else {
    Json j;
    j["m"] = s.m;
    j["degree"] = s.source_degree;
    Json vals = Json::array();
    for (const auto& v : s.values) vals.push_back(Json::array({v.real(), v.imag()}));
    j["values"] = std::move(vals);
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

Arc arc_of(const Options& o) {
  if (o.arc.empty()) return Arc::full_circle();
  return Arc{o.arc[0], o.arc[1]};
}

int cmd_measure(const Options& o, std::ostream& out) {
  check_common(o);
  const SignPolynomial f = select(o, false).front();
  const Arc arc = arc_of(o);
  validate(arc);
  if (o.q < 0.0) throw DomainError("--q must be nonnegative");
  MeasureResult r;
  if (o.q == 0.0) {
    if (o.method == "jensen") {
      if (!o.arc.empty()) throw UsageError("--method jensen gives the full-circle measure only");
      r = mahler_jensen(roots_aberth(f, o.roots));
    } else {
      QuadratureConfig cfg = o.quad;
      cfg.oversample = o.oversample;
      r = mahler_quadrature(f, arc, cfg);
    }
  } else {
    std::size_t m = o.m ? *o.m : oversampled_size(f.degree(), o.oversample);
    // Keep |f|^q resolved: its bandwidth grows like (q/2) * degree.
    const auto need = static_cast<std::size_t>(std::ceil(o.q / 2.0)) * f.degree();
    if (!o.m) {
      while (m <= need) m *= 2;
      // mq_norm wants at least kMinArcNodes grid nodes inside the arc.
      while (static_cast<double>(m) * arc.length() < static_cast<double>(2 * kMinArcNodes) * std::numbers::pi) m *= 2;
    }
    r = mq_norm(evaluate_at_roots(f, m), o.q, arc);
  }
  if (o.format == "text") {
    out << text_value(r.value) << "\n";
  } else if (o.format == "csv") {
    out << "value,q,alpha,beta,method,samples,err\n"
        << format_double(r.value) << "," << format_double(r.q) << "," << format_double(r.arc.alpha) << ","
        << format_double(r.arc.beta) << "," << to_string(r.method) << "," << r.samples_used << ","
        << format_double(r.error_estimate) << "\n";
  } else {
    out << to_json(r).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_moments(const Options& o, std::ostream& out) {
  const SignPolynomial f = select(o, false).front();
  double scale = 1.0;
  if (o.scale) {
    scale = *o.scale;
  } else if (o.rs) {
    scale = rudin_shapiro_scale(*o.rs);
  }
  const NormalizedPolynomial g(f, scale);
  const std::size_t m = o.m ? *o.m : moment_grid_size(f.degree(), o.k_max);
  const MomentSeries s = moment_series(g, o.k_max, m);
  std::optional<LogMomentIdentity> id;
  if (o.identity) {
    QuadratureConfig cfg = o.quad;
    cfg.oversample = o.oversample;
    id = moment_log_identity(g, o.k_max / 2 == 0 ? 1 : o.k_max / 2, cfg);
  }
  if (o.format == "csv" || o.format == "text") {
    out << "k,I_k\n";
    for (std::size_t k = 1; k <= s.k_max; ++k) out << k << "," << format_double(s.at(k)) << "\n";
    return kExitOk;
  }
  Json j = to_json(s);
  j["scale"] = scale;
  if (id) {
    j["identity"] = Json{{"k_max", o.k_max / 2 == 0 ? 1 : o.k_max / 2},
                         {"lhs", id->lhs},
                         {"rhs_partial", id->rhs_partial},
                         {"residual", id->residual}};
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

VerificationReport single_check(Statement s, const Options& o) {
  QuadratureConfig cfg = o.quad;
  cfg.oversample = o.oversample;
  auto need_n = [&]() {
    if (!o.n) throw UsageError("--n is required for a single " + std::string(to_string(s)) + " check");
    return *o.n;
  };
  switch (s) {
    case Statement::eq11: {
      const int n = need_n();
      return check_flatness(n, o.m ? *o.m : 4 * (std::size_t{1} << n));
    }
    case Statement::eq12: {
      const int n = need_n();
      return check_conjugate_pairing(n, o.m ? *o.m : 4 * (std::size_t{1} << n));
    }
    case Statement::lemma31: return check_lemma31(need_n());
    case Statement::lemma32: {
      const int n = need_n();
      return check_lemma32_inequality(rudin_shapiro(n).p, o.lemma_a, n, cfg);
    }
    case Statement::lemma34: return check_lemma34(need_n());
    case Statement::lemma35: return check_lemma35(need_n());
    case Statement::thm21_ratio: return ratio_theorem21(need_n(), o.jensen_limit, cfg, o.roots);
    case Statement::thm22_sum: return thm22_moment_sum(need_n(), o.k_max, 12, cfg);
    case Statement::thm23_subarc: {
      SweepOptions so;
      so.count = o.count;
      so.seed = o.seed;
      so.widths = o.widths;
      so.explore_narrow = o.explore_narrow;
      return thm23_report(need_n(), so, cfg);
    }
    case Statement::saffari: return saffari_check(need_n(), o.q_even.value_or(4));
    case Statement::littlewood_l4: return check_littlewood_l4(need_n());
    case Statement::parseval: return check_parseval(need_n());
    case Statement::borwein_lockhart:
      return borwein_lockhart_mc(o.degree, o.q_even.value_or(4), o.trials, o.seed);
    case Statement::fekete_gauss:
      if (!o.p) throw UsageError("--p is required for fekete_gauss");
      return fekete_gauss_check(*o.p);
  }
  throw UsageError("unknown statement");
}

void write_report_text(const VerificationReport& r, std::ostream& out) {
  out << to_string(r.statement) << " " << (r.passed ? "PASS" : "FAIL") << " margin=" << format_double(r.worst_margin)
      << " tolerance=" << format_double(r.tolerance) << " witness=\"" << r.witness << "\"\n";
}

int cmd_verify(const Options& o, std::ostream& out) {
  check_common(o);
  if (o.all == o.statement.has_value()) throw UsageError("verify needs exactly one of --statement or --all");
  std::vector<VerificationReport> reports;
  if (o.all) {
    VerifyAllOptions vo;
    vo.n_max = o.n_max;
    vo.seed = o.seed;
    vo.quadrature = o.quad;
    vo.quadrature.oversample = o.oversample;
    vo.roots = o.roots;
    reports = verify_all(vo);
  } else {
    const auto s = parse_statement(*o.statement);
    if (!s) throw UsageError("unknown statement '" + *o.statement + "'");
    const bool single = o.n.has_value() || *s == Statement::fekete_gauss || *s == Statement::borwein_lockhart;
    if (single) {
      reports.push_back(single_check(*s, o));
    } else {
      VerifyAllOptions vo;
      vo.n_max = o.n_max;
      vo.seed = o.seed;
      vo.quadrature = o.quad;
      vo.quadrature.oversample = o.oversample;
      vo.roots = o.roots;
      reports.push_back(verify_statement(*s, vo));
    }
  }
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  if (o.format == "text" || o.format == "csv") {
    for (const auto& r : reports) write_report_text(r, out);
  } else if (!o.all) {
    out << to_json(reports.front()).dump(2) << "\n";
  } else {
    Json j;
    j["passed"] = ok;
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    j["reports"] = std::move(arr);
    out << j.dump(2) << "\n";
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  check_common(o);
  if (!o.n) throw UsageError("sweep needs --n");
  SweepOptions so;
  so.count = o.count;
  so.seed = o.seed;
  so.widths = o.widths;
  so.explore_narrow = o.explore_narrow;
  QuadratureConfig cfg = o.quad;
  cfg.oversample = o.oversample;
  const std::vector<SweepRow> rows = thm23_subarc_sweep(*o.n, so, cfg);
  if (o.format == "csv" || o.format == "text") {
    out << sweep_csv(rows);
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    out << Json{{"rows", std::move(arr)}}.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_random(const Options& o, std::ostream& out) {
  SplitMix64 rng(o.seed);
  std::vector<SignPolynomial> polys;
  for (std::size_t i = 0; i < o.count; ++i) polys.push_back(random_littlewood(o.degree, rng));
  if (o.format == "text" || o.format == "csv") {
    for (const auto& f : polys) out << to_text(f) << "\n";
  } else {
    Json arr = Json::array();
    for (const auto& f : polys) arr.push_back(to_json(f));
    out << Json{{"seed", o.seed}, {"polynomials", std::move(arr)}}.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rudin-Shapiro, Fekete and Littlewood polynomials: evaluation, Mahler measure, checks", "mahler"};
  app.require_subcommand(1);

  auto* construct = app.add_subcommand("construct", "Print polynomial coefficients");
  add_selector(construct, o);
  add_output(construct, o);

  auto* eval = app.add_subcommand("eval", "Evaluate at the m-th roots of unity");
  add_selector(eval, o);
  add_output(eval, o);
  eval->add_option("--m", o.m, "Number of sample points");
  eval->add_option("--oversample", o.oversample, "Grid oversampling factor (>= 2)");

  auto* measure = app.add_subcommand("measure", "M_q norm or Mahler measure (q = 0)");
  add_selector(measure, o);
  add_output(measure, o);
  add_quadrature(measure, o);
  add_roots(measure, o);
  measure->add_option("--q", o.q, "Exponent; 0 means Mahler measure");
  measure->add_option("--arc", o.arc, "Arc endpoints ALPHA BETA in radians")->expected(2);
  measure->add_option("--m", o.m, "Sample grid size for q > 0");
  measure->add_option("--method", o.method, "quadrature or jensen (q = 0 only)")
      ->check(CLI::IsMember({"quadrature", "jensen"}));

  auto* moments = app.add_subcommand("moments", "Moments I_k of scale * f");
  add_selector(moments, o);
  add_output(moments, o);
  add_quadrature(moments, o);
  moments->add_option("--k-max", o.k_max, "Largest moment index");
  moments->add_option("--m", o.m, "Sample grid size");
  moments->add_option("--scale", o.scale, "Scale factor (default 2^{-(n+1)/2} for --rs, else 1)");
  moments->add_flag("--identity", o.identity, "Also evaluate the log-moment identity at k_max / 2");

  auto* verify = app.add_subcommand("verify", "Run numerical checks");
  add_output(verify, o);
  add_quadrature(verify, o);
  add_roots(verify, o);
  verify->add_option("--statement", o.statement, "Statement name (eq11/flatness, eq12/conjugate_pairing, ...)");
  verify->add_flag("--all", o.all, "Run every statement up to --n-max");
  verify->add_option("--n-max", o.n_max, "Largest n for ranged checks");
  verify->add_option("--n", o.n, "Single n");
  verify->add_option("--p", o.p, "Prime for fekete_gauss");
  verify->add_option("--q", o.q_even, "Even exponent for saffari / borwein_lockhart");
  verify->add_option("--k-max", o.k_max, "Moment cutoff for thm22_sum");
  verify->add_option("--count", o.count, "Arcs per width for thm23_subarc");
  verify->add_option("--degree", o.degree, "Degree for borwein_lockhart");
  verify->add_option("--trials", o.trials, "Trials for borwein_lockhart");
  verify->add_option("--seed", o.seed, "Random seed");
  verify->add_option("--m", o.m, "Grid size for eq11 / eq12");
  verify->add_option("--A", o.lemma_a, "Gap constant A for lemma32");
  verify->add_option("--jensen-limit", o.jensen_limit, "Largest degree cross-checked by root finding");
  verify->add_option("--widths", o.widths, "Arc width multiples of the critical length");
  verify->add_flag("--explore-narrow", o.explore_narrow, "Allow widths below the critical length");

  auto* sweep = app.add_subcommand("sweep", "Mahler measure on random subarcs of P_n");
  add_output(sweep, o);
  add_quadrature(sweep, o);
  sweep->add_option("--n", o.n, "Rudin-Shapiro depth")->required();
  sweep->add_option("--count", o.count, "Arcs per width");
  sweep->add_option("--seed", o.seed, "Random seed");
  sweep->add_option("--widths", o.widths, "Arc width multiples of the critical length");
  sweep->add_flag("--explore-narrow", o.explore_narrow, "Allow widths below the critical length");

  auto* random = app.add_subcommand("random", "Seeded random Littlewood polynomials");
  add_output(random, o);
  random->add_option("--degree", o.degree, "Degree")->required();
  random->add_option("--count", o.count, "How many")->default_val(1);
  random->add_option("--seed", o.seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  std::ostringstream buf;
  int code = kExitOk;
  try {
    if (*construct) code = cmd_construct(o, buf);
    else if (*eval) code = cmd_eval(o, buf);
    else if (*measure) code = cmd_measure(o, buf);
    else if (*moments) code = cmd_moments(o, buf);
    else if (*verify) code = cmd_verify(o, buf);
    else if (*sweep) code = cmd_sweep(o, buf);
    else if (*random) code = cmd_random(o, buf);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (o.out_path) {
    std::ofstream file(*o.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << *o.out_path << "\n";
      return kExitUsage;
    }
    file << buf.str();
  } else {
    out << buf.str();
  }
  return code;
}

}  // namespace mahler::cli
