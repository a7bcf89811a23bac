#include "mahler/serialize.hpp"

#include <cstdio>

namespace mahler {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const MeasureResult& r) {
  Json j;
  j["value"] = r.value;
  j["q"] = r.q;
  j["alpha"] = r.arc.alpha;
  j["beta"] = r.arc.beta;
  j["method"] = std::string(to_string(r.method));
  j["samples"] = r.samples_used;
  j["err"] = r.error_estimate;
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["statement"] = std::string(to_string(r.statement));
  j["passed"] = r.passed;
  j["worst_margin"] = r.worst_margin;
  j["tolerance"] = r.tolerance;
  j["witness"] = r.witness;
  Json d = Json::object();
  for (const auto& [k, v] : r.details) d[k] = v;
  j["details"] = std::move(d);
  return j;
}

Json to_json(const SweepRow& r) {
  Json j;
  j["n"] = r.n;
  j["alpha"] = r.arc.alpha;
  j["beta"] = r.arc.beta;
  j["m0"] = r.measure_value;
  j["ratio"] = r.ratio_to_sqrtN;
  j["length_class"] = std::string(to_string(r.arc_length_class));
  j["e_bound"] = r.e_bound;
  return j;
}

Json to_json(const RootSet& r) {
  Json j;
  j["degree"] = r.roots.size();
  j["leading"] = r.leading;
  j["iterations"] = r.iterations;
  j["max_residual"] = r.max_residual;
  j["converged"] = r.converged;
  Json roots = Json::array();
  for (const auto& z : r.roots) roots.push_back(Json::array({z.real(), z.imag()}));
  j["roots"] = std::move(roots);
  return j;
}

Json to_json(const MomentSeries& s) {
  Json j;
  j["k_max"] = s.k_max;
  j["m"] = s.m;
  j["values"] = s.values;
  return j;
}

Json to_json(const SignPolynomial& f) {
  Json j;
  j["family"] = std::string(to_string(f.family()));
  j["degree"] = f.degree();
  j["coeffs"] = to_text(f);
  return j;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "n,alpha,beta,m0,ratio,length_class\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.n) + "," + format_double(r.arc.alpha) + "," + format_double(r.arc.beta) + "," +
           format_double(r.measure_value) + "," + format_double(r.ratio_to_sqrtN) + "," +
           std::string(to_string(r.arc_length_class)) + "\n";
  }
  return out;
}

std::string samples_csv(const CircleSamples& s) {
  std::string out = "index,theta,re,im,abs\n";
  for (std::size_t j = 0; j < s.m; ++j) {
    const auto v = s.values[j];
    out += std::to_string(j) + "," + format_double(s.theta(j)) + "," + format_double(v.real()) + "," +
           format_double(v.imag()) + "," + format_double(std::abs(v)) + "\n";
  }
  return out;
}

}  // namespace mahler
