#include "convpow/symbol_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "convpow/error.hpp"

namespace convpow {

namespace {

constexpr double two_pi = 2.0 * M_PI;

double modulus_sq(const Sequence& a, double theta) { return std::norm(symbol_eval(a, theta)); }

// Maximize |F|^2 on [lo, hi] by golden-section search.
double golden_max(const Sequence& a, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = modulus_sq(a, x1);
  double f2 = modulus_sq(a, x2);
  while (hi - lo > 1e-14) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = modulus_sq(a, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = modulus_sq(a, x1);
    }
  }
  return 0.5 * (lo + hi);
}

// A maximum of |F| of order 2 mu is flat to round-off over ~eps^{1/(2 mu)},
// which golden section cannot resolve. Polish it with the local log series:
// around the true maximum Re log F ~ R (xi + delta)^{2 mu}, so the xi^{2mu-1}
// coefficient gives the offset delta directly.
double polish_maximum(const Sequence& a, double theta, double max_step) {
  constexpr std::size_t order = 24;
  const double radius = 0.05 / std::max<double>(1.0, static_cast<double>(a.width()));
  const double start = theta;
  for (int iter = 0; iter < 40; ++iter) {
    TaylorSeries t;
    try {
      t = log_series(taylor_at(a, Angle::radians(theta), order));
    } catch (const ZeroConstantTerm&) {
      return start;
    }
    std::size_t lead = 0;
    double best = 0.0;
    double scale = 1.0;
    for (std::size_t nu = 1; nu <= order; ++nu) {
      scale *= radius;
      const double r = t.coeffs[nu].real();
      if (nu >= 2 && nu % 2 == 0 && r < 0.0 && -r * scale > best) {
        best = -r * scale;
        lead = nu;
      }
    }
    if (lead == 0) {
      break;
    }
    const double delta =
        t.coeffs[lead - 1].real() / (static_cast<double>(lead) * t.coeffs[lead].real());
    if (!std::isfinite(delta) || std::abs(theta - delta - start) > max_step) {
      return start;
    }
    theta -= delta;
    if (std::abs(delta) < 1e-16) {
      break;
    }
  }
  return theta;
}

double wrap(double theta) {
  theta = std::fmod(theta, two_pi);
  return theta < 0.0 ? theta + two_pi : theta;
}

}  // namespace

const char* to_string(Alternative alt) {
  return alt == Alternative::all_modulus_one ? "ALL_MODULUS_ONE" : "FINITE_TANGENCY";
}

cplx TangencyPoint::cumulant(int nu) const {
  auto it = cumulants.find(nu);
  if (it == cumulants.end()) {
    throw InsufficientCumulants("cumulant gamma_" + std::to_string(nu) + " not computed");
  }
  return it->second;
}

SymbolReport scan_symbol(const Sequence& a, const AnalysisOptions& opts) {
  const std::size_t grid =
      std::max<std::size_t>(4096, 64 * static_cast<std::size_t>(std::max<std::int64_t>(1, a.width())));
  const double step = two_pi / static_cast<double>(grid);

  std::vector<double> g(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    g[i] = modulus_sq(a, step * static_cast<double>(i));
  }

  SymbolReport report;
  const double grid_min = std::sqrt(*std::min_element(g.begin(), g.end()));

  // Refine every local maximum of the sampled |F|^2.
  struct Candidate {
    double theta;
    double value;
  };
  std::vector<Candidate> maxima;
  for (std::size_t i = 0; i < grid; ++i) {
    const double prev = g[(i + grid - 1) % grid];
    const double next = g[(i + 1) % grid];
    if (g[i] >= prev && g[i] >= next) {
      const double centre = step * static_cast<double>(i);
      const double theta = golden_max(a, centre - step, centre + step);
      maxima.push_back({theta, modulus_sq(a, theta)});
    }
  }
  double sup_sq = 0.0;
  for (const auto& m : maxima) {
    sup_sq = std::max(sup_sq, m.value);
  }
  report.sup_modulus = std::sqrt(sup_sq);
  report.normalized = std::abs(report.sup_modulus - 1.0) <= opts.tol_norm;

  if (grid_min >= report.sup_modulus * (1.0 - opts.tol_norm)) {
    report.alternative = Alternative::all_modulus_one;
    return report;
  }
  report.alternative = Alternative::finite_tangency;

  // Tangency relative to the measured sup, so unnormalized input still
  // reports where the maximum is reached.
  // Round-off level of |F|^2 evaluations; a polished point within it of the
  // golden-section value is as good a maximum.
  const double l1 = norm(a, LpNorm::finite(1));
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * l1 * l1;
  std::vector<double> thetas;
  for (const auto& m : maxima) {
    if (m.value / sup_sq - 1.0 >= -opts.tol_detect) {
      double theta = polish_maximum(a, m.theta, step);
      if (modulus_sq(a, theta) < m.value - noise) {
        theta = m.theta;
      }
      thetas.push_back(wrap(theta));
    }
  }
  std::sort(thetas.begin(), thetas.end());

  std::vector<double> merged;
  for (double t : thetas) {
    if (merged.empty() || t - merged.back() > opts.cluster_tol) {
      merged.push_back(t);
    }
  }
  if (merged.size() > 1 && merged.front() + two_pi - merged.back() <= opts.cluster_tol) {
    merged.pop_back();
  }

  for (double t : merged) {
    TangencyPoint p;
    p.theta = Angle::snapped(t, opts.snap_tol);
    p.kappa = p.theta.phase(1);
    p.value = symbol_eval(a, p.theta.value());
    p.value_arg = Angle::snapped(std::arg(p.value), opts.snap_tol);
    report.points.push_back(p);
  }
  std::sort(report.points.begin(), report.points.end(),
            [](const TangencyPoint& x, const TangencyPoint& y) {
              return x.theta.value() < y.theta.value();
            });
  return report;
}

SymbolReport find_tangency_points(const Sequence& a, const AnalysisOptions& opts) {
  SymbolReport report = scan_symbol(a, opts);
  if (!report.normalized) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sup |F_a| on the unit circle is " << report.sup_modulus
        << ", not 1; multiply the sequence by " << 1.0 / report.sup_modulus << " to normalize";
    throw NotNormalized(report.sup_modulus, msg.str());
  }
  return report;
}

TangencyPoint classify(const Sequence& a, const Angle& theta, int order,
                       const AnalysisOptions& opts) {
  if (order < 0) {
    throw InvalidArgument("classify: expansion order must be >= 0");
  }
  const auto m = static_cast<std::size_t>(order);
  std::size_t mu_cap = 4;
  while (true) {
    const std::size_t n = 2 * mu_cap + m + 2;
    const TaylorSeries s = taylor_at(a, theta, n);
    const TaylorSeries t = log_series(s);

    double scale = 0.0;
    for (std::size_t nu = 1; nu <= n; ++nu) {
      scale = std::max(scale, std::abs(t.coeffs[nu]));
    }
    const double thr = opts.tol_coeff * scale;

    std::size_t lead = 0;
    for (std::size_t nu = 2; nu <= n; ++nu) {
      if (std::abs(t.coeffs[nu]) > thr) {
        lead = nu;
        break;
      }
    }
    if (lead == 0) {
      if (mu_cap >= 64) {
        throw DegenerateSymbol("no nonzero log-series coefficient beyond order 1 up to order " +
                               std::to_string(n) + " at theta = " +
                               std::to_string(theta.value()));
      }
      mu_cap *= 2;
      continue;
    }
    if (lead + m > n) {
      mu_cap = (lead + 1) / 2 + 1;
      continue;
    }

    if (std::abs(t.coeffs[1].real()) > thr) {
      throw DriftNotReal("first log-series coefficient has real part " +
                         std::to_string(t.coeffs[1].real()) + " at theta = " +
                         std::to_string(theta.value()));
    }
    if (lead % 2 == 1) {
      throw DispersiveCase("leading log-series coefficient has odd order " +
                           std::to_string(lead) + " at theta = " + std::to_string(theta.value()));
    }
    const cplx beta = -t.coeffs[lead];
    if (beta.real() <= thr) {
      throw DispersiveCase("leading coefficient -beta has Re beta = " +
                           std::to_string(beta.real()) + " <= 0 at theta = " +
                           std::to_string(theta.value()));
    }

    TangencyPoint p;
    p.theta = theta;
    p.kappa = theta.phase(1);
    p.value = s.coeffs[0];
    p.value_arg = Angle::snapped(std::arg(p.value), opts.snap_tol);
    p.classified = true;
    p.alpha = t.coeffs[1].imag();
    p.mu = static_cast<int>(lead / 2);
    p.beta = beta;
    p.borderline = beta.real() < 100.0 * thr;
    // gamma_nu = t_nu nu! / i^nu
    double fact = 1.0;
    for (std::size_t nu = 1; nu <= lead + m; ++nu) {
      fact *= static_cast<double>(nu);
      if (nu > lead) {
        const cplx i_pow = std::pow(cplx(0.0, 1.0), static_cast<int>(nu % 4));
        p.cumulants[static_cast<int>(nu)] = t.coeffs[nu] * fact / i_pow;
      }
    }
    return p;
  }
}

Analysis analyze(const Sequence& a, int order, const AnalysisOptions& opts) {
  SymbolReport report = scan_symbol(a, opts);
  Sequence seq = a;
  double scale = 1.0;
  if (!report.normalized && opts.normalize && report.sup_modulus > 0.0) {
    scale = 1.0 / report.sup_modulus;
    seq = a.scaled(scale);
    report = scan_symbol(seq, opts);
  }
  if (!report.normalized) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sup |F_a| on the unit circle is " << report.sup_modulus
        << ", not 1; multiply the sequence by " << 1.0 / report.sup_modulus << " to normalize";
    throw NotNormalized(report.sup_modulus, msg.str());
  }
  if (report.alternative == Alternative::all_modulus_one) {
    throw AllModulusOne("|F_a| = 1 on the whole unit circle; no tangency expansion exists");
  }
  for (auto& p : report.points) {
    p = classify(seq, p.theta, order, opts);
  }
  return Analysis{std::move(seq), scale, std::move(report)};
}

}  // namespace convpow
