#include "convpow/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>

#include "convpow/attractor.hpp"
#include "convpow/catalog.hpp"
#include "convpow/error.hpp"
#include "convpow/expansion.hpp"
#include "convpow/polynomials.hpp"
#include "convpow/symbol_analysis.hpp"

namespace convpow::verify {

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string describe(const char* op, double bound) {
  std::ostringstream s;
  s.precision(6);
  s << op << ' ' << bound;
  return s.str();
}

void at_most(SuiteVerdict& v, std::string name, double value, double bound) {
  v.checks.push_back({std::move(name), value, describe("<=", bound), value <= bound});
}

void within(SuiteVerdict& v, std::string name, double value, double lo, double hi) {
  std::ostringstream s;
  s << "in [" << lo << ", " << hi << "]";
  v.checks.push_back({std::move(name), value, s.str(), value >= lo && value <= hi});
}

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

double max_coeff(const ExpansionPolynomial& p) {
  double m = 0.0;
  for (const auto& [deg, c] : p.coeffs) {
    m = std::max(m, std::abs(c));
  }
  return m;
}

// Common factor lambda (2 - lambda)(1 - lambda^2) of the O3 cumulants.
double o3_base(double l) { return l * (2.0 - l) * (1.0 - l * l); }

// Pascal's triangle row n in exact 64-bit integers (n <= 62).
std::vector<std::uint64_t> pascal_row(int n) {
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next(row.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t j = 1; j < row.size(); ++j) {
      next[j] = row[j - 1] + row[j];
    }
    row = std::move(next);
  }
  return row;
}

}  // namespace

bool SuiteVerdict::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) {
      return false;
    }
  }
  return !checks.empty();
}

nlohmann::json SuiteVerdict::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
  }
  return {{"suite", suite}, {"pass", pass()}, {"seconds", seconds}, {"checks", arr}};
}

SuiteVerdict o3_figures() {
  Timer timer;
  SuiteVerdict v{"o3-figures", {}, 0.0};

  const ExpansionPlan plan = make_plan(catalog::o3(0.5), 3);
  const auto& p = plan.report.points.at(0);
  at_most(v, "K", std::abs(static_cast<double>(plan.report.points.size()) - 1.0), 0.0);
  at_most(v, "alpha - 1/2", std::abs(p.alpha - 0.5), 1e-9);
  at_most(v, "mu - 2", std::abs(p.mu - 2.0), 0.0);
  at_most(v, "beta vs 3/128 (rel)", rel_err(p.beta, 3.0 / 128.0), 1e-9);
  at_most(v, "|gamma_5|", std::abs(p.cumulant(5)), 1e-9);
  at_most(v, "gamma_6 vs -45/32 (rel)", rel_err(p.cumulant(6), -45.0 / 32.0), 1e-9);
  at_most(v, "|gamma_7|", std::abs(p.cumulant(7)), 1e-9);
  const auto& polys = plan.polynomials.at(0);
  at_most(v, "max |P_1 coeff|", max_coeff(polys[1]), 1e-12);
  at_most(v, "max |P_3 coeff|", max_coeff(polys[3]), 1e-12);
  {
    ExpansionPolynomial diff = polys[2];
    diff.coeffs[6] += 1.0 / 512.0;
    at_most(v, "P_2 + X^6/512", max_coeff(diff), 1e-12);
  }

  for (double lambda : {0.25, 0.75}) {
    const auto pt = analyze(catalog::o3(lambda), 3).report.points.at(0);
    const double b = o3_base(lambda);
    const double g5 = -2.0 * b * (1.0 - 2.0 * lambda);
    const double g6 = -5.0 * b * (1.0 - 2.0 * lambda + 2.0 * lambda * lambda);
    const double g7 = -10.0 * b * (1.0 - 2.0 * lambda) * (1.0 - lambda + lambda * lambda);
    const std::string tag = "lambda=" + std::to_string(lambda).substr(0, 4) + " ";
    at_most(v, tag + "gamma_5 (rel)", rel_err(pt.cumulant(5), g5), 1e-9);
    at_most(v, tag + "gamma_6 (rel)", rel_err(pt.cumulant(6), g6), 1e-9);
    at_most(v, tag + "gamma_7 (rel)", rel_err(pt.cumulant(7), g7), 1e-9);
  }

  const Approximator approx(plan);
  const auto ns = default_n_list();
  std::vector<double> linf;
  std::vector<double> l1;
  for_each_remainder(approx, ns, [&](const ExpansionResult& r) {
    linf.push_back(r.linf);
    l1.push_back(r.l1);
  });
  within(v, "l^inf slope", fit_loglog(ns, linf).slope, -1.32, -1.20);
  within(v, "l^1 slope", fit_loglog(ns, l1).slope, -1.05, -0.95);

  const auto env = check_envelope(approx, {100, 400, 1000}, 0.09, 0.225);
  for (std::size_t i = 0; i < env.ns.size(); ++i) {
    at_most(v, "envelope ratio n=" + std::to_string(env.ns[i]), env.max_ratio[i],
            1.0 + envelope_slack);
  }
  v.seconds = timer.seconds();
  return v;
}

SuiteVerdict binomial_oracle() {
  Timer timer;
  SuiteVerdict v{"binomial-oracle", {}, 0.0};
  const Sequence a = catalog::bernoulli(0.5);
  for (int n : {10, 30, 60}) {
    const auto row = pascal_row(n);
    const Sequence pw = power(a, n);
    double worst = 0.0;
    for (int ell = 0; ell <= n; ++ell) {
      const double want = std::ldexp(static_cast<double>(row[static_cast<std::size_t>(ell)]), -n);
      worst = std::max(worst, rel_err(pw[ell], want));
    }
    worst = std::max(worst, (pw.min_index() == 0 && pw.max_index() == n) ? 0.0 : 1.0);
    at_most(v, "power n=" + std::to_string(n) + " (rel)", worst, 1e-12);
  }
  const ExpansionPlan plan = make_plan(a, 0);
  const auto fit =
      fit_slope(plan, log_spaced_integers(10, 2000, 30), LpNorm::infinity());
  at_most(v, "M=0 l^inf slope", fit.slope, -1.4);
  v.seconds = timer.seconds();
  return v;
}

SuiteVerdict attractor_closed_form() {
  Timer timer;
  SuiteVerdict v{"attractor-closed-form", {}, 0.0};
  ExpansionPolynomial one;
  one.coeffs[0] = 1.0;

  for (cplx beta : {cplx(0.125), cplx(3.0 / 128.0), cplx(0.1, 0.05)}) {
    const AttractorBank bank({1, beta}, {one});
    double worst = 0.0;
    for (int i = -40; i <= 40; ++i) {
      const double x = 0.25 * i;
      const cplx exact = std::exp(-x * x / (4.0 * beta)) / std::sqrt(4.0 * M_PI * beta);
      worst = std::max(worst, std::abs(bank.evaluate(x) - exact));
    }
    std::ostringstream name;
    name << "mu=1 closed form beta=" << beta;
    at_most(v, name.str(), worst, 1e-11);
  }

  for (const AttractorSpec spec : {AttractorSpec{1, 0.125}, AttractorSpec{2, 3.0 / 128.0}}) {
    const AttractorBank bank(spec, {one});
    const double h = 0.05;
    const auto steps = static_cast<int>(std::ceil(bank.x_max() / h));
    std::vector<double> xs;
    for (int i = -steps; i <= steps; ++i) {
      xs.push_back(h * i);
    }
    std::vector<cplx> vals(xs.size());
    bank.evaluate(xs, vals);
    cplx mass{};
    for (const cplx& z : vals) {
      mass += z;
    }
    at_most(v, "unit mass mu=" + std::to_string(spec.mu), std::abs(h * mass - 1.0), 1e-8);
  }

  const double h4 = std::tgamma(1.25) * std::pow(128.0 / 3.0, 0.25) / M_PI;
  at_most(v, "H_4^{3/128}(0) vs Gamma(5/4)",
          std::abs(eval_attractor({2, 3.0 / 128.0}, 0.0) - h4), 1e-10);
  v.seconds = timer.seconds();
  return v;
}

SuiteVerdict polynomial_routes() {
  Timer timer;
  SuiteVerdict v{"polynomial-routes", {}, 0.0};
  constexpr int max_m = 6;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  double route_err = 0.0;
  double identity_err = 0.0;
  for (int set = 0; set < 100; ++set) {
    TangencyPoint pt;
    pt.classified = true;
    pt.mu = 1 + set % 3;
    pt.beta = 1.0;
    for (int nu = 2 * pt.mu + 1; nu <= 2 * pt.mu + max_m; ++nu) {
      pt.cumulants[nu] = cplx(unit(rng), unit(rng));
    }
    const auto series = build_polynomials(pt, max_m);
    for (int m = 1; m <= max_m; ++m) {
      const auto bell = bell_sum_polynomial(pt, m);
      const auto& ser = series[static_cast<std::size_t>(m)];
      for (int d = 0; d <= std::max(ser.degree(), bell.degree()); ++d) {
        const cplx a = ser.coeffs.contains(d) ? ser.coeffs.at(d) : cplx{};
        const cplx b = bell.coeffs.contains(d) ? bell.coeffs.at(d) : cplx{};
        const double scale = std::max(std::abs(a), std::abs(b));
        if (scale > 0.0) {
          route_err = std::max(route_err, std::abs(a - b) / scale);
        }
      }
    }

    // P_m(w) = w^m / m! d^m/dz^m g(w, 0), g(w, z) = exp(w^{2mu} sum_nu c_nu z^nu):
    // the z-Taylor coefficients of g at fixed w, by the scalar exp recurrence.
    for (int trial = 0; trial < 20; ++trial) {
      const cplx w(1.5 * unit(rng), 1.5 * unit(rng));
      std::vector<cplx> b(max_m + 1);
      double fact = 1.0;
      for (int i = 1; i <= 2 * pt.mu; ++i) {
        fact *= i;
      }
      for (int nu = 1; nu <= max_m; ++nu) {
        fact *= 2 * pt.mu + nu;
        b[static_cast<std::size_t>(nu)] =
            std::pow(w, 2 * pt.mu) * pt.cumulants.at(2 * pt.mu + nu) / fact;
      }
      std::vector<cplx> e(max_m + 1);
      e[0] = 1.0;
      for (int k = 1; k <= max_m; ++k) {
        cplx acc{};
        for (int j = 1; j <= k; ++j) {
          acc += static_cast<double>(j) * b[static_cast<std::size_t>(j)] *
                 e[static_cast<std::size_t>(k - j)];
        }
        e[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
      }
      for (int m = 1; m <= max_m; ++m) {
        const auto& poly = series[static_cast<std::size_t>(m)];
        const cplx lhs = eval_poly(poly, w);
        const cplx rhs = std::pow(w, m) * e[static_cast<std::size_t>(m)];
        double scale = 0.0;
        for (const auto& [deg, c] : poly.coeffs) {
          scale += std::abs(c) * std::pow(std::abs(w), deg);
        }
        if (scale > 0.0) {
          identity_err = std::max(identity_err, std::abs(lhs - rhs) / scale);
        }
      }
    }
  }
  at_most(v, "series vs partition route (rel)", route_err, 1e-12);
  at_most(v, "derivative identity (rel)", identity_err, 1e-12);
  v.seconds = timer.seconds();
  return v;
}

std::vector<std::string> suite_names() {
  return {"o3-figures", "binomial-oracle", "attractor-closed-form", "polynomial-routes"};
}

SuiteVerdict run(const std::string& name) {
  if (name == "o3-figures") {
    return o3_figures();
  }
  if (name == "binomial-oracle") {
    return binomial_oracle();
  }
  if (name == "attractor-closed-form") {
    return attractor_closed_form();
  }
  if (name == "polynomial-routes") {
    return polynomial_routes();
  }
  throw InvalidArgument("unknown verification suite '" + name + "'");
}

}  // namespace convpow::verify
