#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "convpow/expansion.hpp"
#include "convpow/polynomials.hpp"
#include "convpow/sequence.hpp"
#include "convpow/symbol_analysis.hpp"

namespace convpow::io {

using nlohmann::json;

// Sequence file format: {"offset": <int>, "coeffs": [[re, im], ...]}.
json to_json(const Sequence& a);
Sequence sequence_from_json(const json& j);
Sequence parse_sequence(const std::string& text);

json to_json(cplx z);
json to_json(const ExpansionPolynomial& p);
json to_json(const TangencyPoint& p, const std::vector<ExpansionPolynomial>* polys = nullptr);
json to_json(const SymbolReport& r,
             const std::vector<std::vector<ExpansionPolynomial>>* polys = nullptr);
json to_json(const SlopeFit& f);
json to_json(const EnvelopeCheck& e);

// Shortest round-trip decimal.
std::string format_double(double v);

// Profile CSV: ell, exact_re, exact_im, approx_re, approx_im, remainder_abs, envelope.
void write_profile_csv(std::ostream& os, const ExpansionResult& r,
                       const std::vector<double>& log_envelope);

// Slopes CSV: n, linf, l1.
void write_slopes_csv(std::ostream& os, const std::vector<std::int64_t>& ns,
                      const std::vector<double>& linf, const std::vector<double>& l1);

}  // namespace convpow::io
