#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mahler/evaluator.hpp"
#include "mahler/harness.hpp"
#include "mahler/measure.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/roots.hpp"

namespace mahler {

using Json = nlohmann::ordered_json;

// Key order is fixed and doubles print with round-trip precision, so equal
// inputs give byte-identical text.
Json to_json(const MeasureResult& r);  // {value, q, alpha, beta, method, samples, err}
Json to_json(const VerificationReport& r);
Json to_json(const SweepRow& r);
Json to_json(const RootSet& r);
Json to_json(const MomentSeries& s);
Json to_json(const SignPolynomial& f);

/// "n,alpha,beta,m0,ratio,length_class" followed by one line per row.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// "index,theta,re,im,abs" followed by one line per sample.
std::string samples_csv(const CircleSamples& s);

/// %.17g formatting used by the CSV writers.
std::string format_double(double v);

}  // namespace mahler
