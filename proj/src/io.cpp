#include "convpow/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "convpow/error.hpp"

namespace convpow::io {

json to_json(const Sequence& a) {
  json coeffs = json::array();
  for (const cplx& c : a.coeffs()) {
    coeffs.push_back({c.real(), c.imag()});
  }
  return json{{"offset", a.offset()}, {"coeffs", coeffs}};
}

Sequence sequence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("offset") || !j.contains("coeffs")) {
    throw ParseError("sequence JSON needs \"offset\" and \"coeffs\"");
  }
  const json& off = j.at("offset");
  if (!off.is_number_integer()) {
    throw ParseError("\"offset\" must be an integer");
  }
  const json& cs = j.at("coeffs");
  if (!cs.is_array() || cs.empty()) {
    throw ParseError("\"coeffs\" must be a nonempty array of [re, im] pairs");
  }
  std::vector<cplx> coeffs;
  coeffs.reserve(cs.size());
  for (const json& c : cs) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw ParseError("each coefficient must be a [re, im] pair of numbers");
    }
    const double re = c[0].get<double>();
    const double im = c[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw ParseError("non-finite coefficient in sequence JSON");
    }
    coeffs.emplace_back(re, im);
  }
  try {
    return Sequence(off.get<std::int64_t>(), std::move(coeffs));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Sequence parse_sequence(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed sequence JSON: ") + e.what());
  }
  return sequence_from_json(j);
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const ExpansionPolynomial& p) {
  json terms = json::array();
  for (const auto& [deg, c] : p.coeffs) {
    terms.push_back({{"deg", deg}, {"re", c.real()}, {"im", c.imag()}});
  }
  return json{{"m", p.m}, {"terms", terms}};
}

json to_json(const TangencyPoint& p, const std::vector<ExpansionPolynomial>* polys) {
  json j{{"theta", p.theta.value()},
         {"kappa", to_json(p.kappa)},
         {"value", to_json(p.value)}};
  if (p.classified) {
    j["alpha"] = p.alpha;
    j["mu"] = p.mu;
    j["beta"] = to_json(p.beta);
    json cum = json::object();
    for (const auto& [nu, g] : p.cumulants) {
      cum[std::to_string(nu)] = to_json(g);
    }
    j["cumulants"] = cum;
    j["borderline"] = p.borderline;
  }
  if (polys != nullptr) {
    json arr = json::array();
    for (const auto& poly : *polys) {
      arr.push_back(to_json(poly));
    }
    j["polynomials"] = arr;
  }
  return j;
}

json to_json(const SymbolReport& r, const std::vector<std::vector<ExpansionPolynomial>>* polys) {
  json pts = json::array();
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    const auto* pk = (polys != nullptr && k < polys->size()) ? &(*polys)[k] : nullptr;
    pts.push_back(to_json(r.points[k], pk));
  }
  return json{{"alternative", to_string(r.alternative)},
              {"normalized", r.normalized},
              {"sup_modulus", r.sup_modulus},
              {"points", pts}};
}

json to_json(const SlopeFit& f) {
  return json{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2},
              {"ns", f.ns},       {"values", f.values}};
}

json to_json(const EnvelopeCheck& e) {
  return json{{"C", e.C},   {"c", e.c}, {"slack", envelope_slack}, {"ns", e.ns},
              {"max_ratio", e.max_ratio}, {"pass", e.pass}};
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_profile_csv(std::ostream& os, const ExpansionResult& r,
                       const std::vector<double>& log_envelope) {
  os << "ell,exact_re,exact_im,approx_re,approx_im,remainder_abs,envelope\n";
  for (std::size_t i = 0; i < r.remainder.size(); ++i) {
    const std::int64_t ell = r.lo + static_cast<std::int64_t>(i);
    const double env = i < log_envelope.size() ? std::exp(log_envelope[i]) : 0.0;
    os << ell << ',' << format_double(r.exact[i].real()) << ','
       << format_double(r.exact[i].imag()) << ',' << format_double(r.approx[i].real()) << ','
       << format_double(r.approx[i].imag()) << ',' << format_double(std::abs(r.remainder[i]))
       << ',' << format_double(env) << '\n';
  }
}

void write_slopes_csv(std::ostream& os, const std::vector<std::int64_t>& ns,
                      const std::vector<double>& linf, const std::vector<double>& l1) {
  os << "n,linf,l1\n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    os << ns[i] << ',' << format_double(linf.at(i)) << ',' << format_double(l1.at(i)) << '\n';
  }
}

}  // namespace convpow::io
