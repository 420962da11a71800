#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace convpow::verify {

struct Check {
  std::string name;
  double value = 0.0;
  std::string bound;  // human-readable acceptance condition
  bool pass = false;
};

struct SuiteVerdict {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool pass() const;
  nlohmann::json to_json() const;
};

// o3-figures: O3 classification at lambda = 1/4, 1/2, 3/4, the two decay
// slopes and the generalized Gaussian envelope.
SuiteVerdict o3_figures();
// binomial-oracle: exact binomial powers and the M = 0 remainder decay.
SuiteVerdict binomial_oracle();
// attractor-closed-form: mu = 1 Gaussian, unit mass, H_4(0) via Gamma.
SuiteVerdict attractor_closed_form();
// polynomial-routes: series exponential vs partition sum, derivative identity.
SuiteVerdict polynomial_routes();

std::vector<std::string> suite_names();
SuiteVerdict run(const std::string& name);

}  // namespace convpow::verify
