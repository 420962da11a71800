#include "convpow/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "convpow/error.hpp"

namespace convpow {

void ExpansionPlan::validate() const {
  if (report.alternative != Alternative::finite_tangency || report.points.empty()) {
    throw PlanIncomplete("plan has no tangency point");
  }
  if (polynomials.size() != report.points.size()) {
    throw PlanIncomplete("plan polynomials do not match its tangency points");
  }
  for (std::size_t k = 0; k < report.points.size(); ++k) {
    const auto& p = report.points[k];
    if (!p.classified) {
      throw PlanIncomplete("tangency point " + std::to_string(k) + " is not classified");
    }
    for (int nu = 2 * p.mu + 1; nu <= 2 * p.mu + order; ++nu) {
      if (!p.cumulants.contains(nu)) {
        throw PlanIncomplete("tangency point " + std::to_string(k) + " lacks gamma_" +
                             std::to_string(nu));
      }
    }
    if (polynomials[k].size() != static_cast<std::size_t>(order) + 1) {
      throw PlanIncomplete("tangency point " + std::to_string(k) + " lacks polynomials");
    }
  }
}

ExpansionPlan make_plan(const Analysis& analysis, int order) {
  ExpansionPlan plan{analysis.sequence, analysis.report, order, {}};
  for (std::size_t k = 0; k < plan.report.points.size(); ++k) {
    plan.polynomials.push_back(
        build_polynomials(plan.report.points[k], order, static_cast<int>(k) + 1));
  }
  plan.validate();
  return plan;
}

ExpansionPlan make_plan(const Sequence& a, int order, const AnalysisOptions& opts) {
  return make_plan(analyze(a, order, opts), order);
}

Approximator::Approximator(ExpansionPlan plan, QuadratureOptions quad) : plan_(std::move(plan)) {
  plan_.validate();
  for (std::size_t k = 0; k < plan_.report.points.size(); ++k) {
    const auto& p = plan_.report.points[k];
    banks_.emplace_back(AttractorSpec{p.mu, p.beta}, plan_.polynomials[k], quad);
  }
}

namespace {

double scale_n(std::int64_t n, int mu) {
  return std::pow(static_cast<double>(n), 1.0 / (2.0 * mu));
}

}  // namespace

std::pair<std::int64_t, std::int64_t> Approximator::window(std::int64_t n) const {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (std::size_t k = 0; k < banks_.size(); ++k) {
    const auto& p = plan_.report.points[k];
    const double centre = p.alpha * static_cast<double>(n);
    const double half = banks_[k].x_max() * scale_n(n, p.mu);
    lo = std::min(lo, static_cast<std::int64_t>(std::floor(centre - half)));
    hi = std::max(hi, static_cast<std::int64_t>(std::ceil(centre + half)));
  }
  return {lo, hi};
}

std::vector<cplx> Approximator::approximate(std::int64_t n, std::int64_t lo, std::int64_t hi,
                                            kernels::Exec exec) const {
  if (n < 1) {
    throw InvalidArgument("approximate: n must be >= 1");
  }
  if (hi < lo) {
    return {};
  }
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < banks_.size(); ++k) {
    const auto& p = plan_.report.points[k];
    const auto& bank = banks_[k];
    const double s = scale_n(n, p.mu);
    const double centre = p.alpha * static_cast<double>(n);
    const double half = bank.x_max() * s;
    const std::int64_t from = std::max(lo, static_cast<std::int64_t>(std::floor(centre - half)));
    const std::int64_t to = std::min(hi, static_cast<std::int64_t>(std::ceil(centre + half)));
    if (to < from) {
      continue;
    }
    std::vector<double> xs(static_cast<std::size_t>(to - from + 1));
    for (std::int64_t ell = from; ell <= to; ++ell) {
      xs[static_cast<std::size_t>(ell - from)] = (static_cast<double>(ell) - centre) / s;
    }
    const std::size_t nb = bank.banks();
    std::vector<cplx> vals(xs.size() * nb);
    bank.evaluate(xs, vals, exec);

    // n^{-(m+1)/(2mu)}
    std::vector<double> weight(nb);
    for (std::size_t m = 0; m < nb; ++m) {
      weight[m] = std::pow(static_cast<double>(n), -(static_cast<double>(m) + 1.0) / (2.0 * p.mu));
    }
    const cplx time_phase = p.value_arg.phase(n);
    for (std::int64_t ell = from; ell <= to; ++ell) {
      const std::size_t i = static_cast<std::size_t>(ell - from);
      cplx acc{};
      for (std::size_t m = 0; m < nb; ++m) {
        acc += weight[m] * vals[i * nb + m];
      }
      out[static_cast<std::size_t>(ell - lo)] += p.theta.phase(-ell) * time_phase * acc;
    }
  }
  return out;
}

std::vector<double> Approximator::log_envelope(std::int64_t n, std::int64_t lo, std::int64_t hi,
                                               double C, double c) const {
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo + 1)),
                          -std::numeric_limits<double>::infinity());
  const double logC = std::log(C);
  const double logn = std::log(static_cast<double>(n));
  for (const auto& p : plan_.report.points) {
    const double two_mu = 2.0 * p.mu;
    const double q = two_mu / (two_mu - 1.0);
    const double s = scale_n(n, p.mu);
    const double centre = p.alpha * static_cast<double>(n);
    const double lead = logC - (plan_.order + 2.0) / two_mu * logn;
    for (std::int64_t ell = lo; ell <= hi; ++ell) {
      const double x = std::abs(static_cast<double>(ell) - centre) / s;
      const double v = lead - c * std::pow(x, q);
      double& slot = out[static_cast<std::size_t>(ell - lo)];
      slot = std::max(slot, v);
    }
  }
  return out;
}

std::vector<cplx> approximate(const ExpansionPlan& plan, std::int64_t n, std::int64_t lo,
                              std::int64_t hi) {
  return Approximator(plan).approximate(n, lo, hi);
}

PowerSweep::PowerSweep(Sequence a) : a_(std::move(a)), current_(a_) {}

const Sequence& PowerSweep::advance_to(std::int64_t n) {
  if (n < n_) {
    throw InvalidArgument("PowerSweep: n must not decrease (at " + std::to_string(n_) +
                          ", asked " + std::to_string(n) + ")");
  }
  while (n_ < n) {
    current_ = convolve(current_, a_);
    ++n_;
  }
  return current_;
}

ExpansionResult remainder(const Approximator& approx, const Sequence& exact_power,
                          std::int64_t n) {
  const auto [wlo, whi] = approx.window(n);
  ExpansionResult r;
  r.n = n;
  r.lo = std::min(exact_power.min_index(), wlo);
  const std::int64_t hi = std::max(exact_power.max_index(), whi);
  r.approx = approx.approximate(n, r.lo, hi);
  r.exact.resize(r.approx.size());
  r.remainder.resize(r.approx.size());
  for (std::int64_t ell = r.lo; ell <= hi; ++ell) {
    const auto i = static_cast<std::size_t>(ell - r.lo);
    r.exact[i] = exact_power[ell];
    r.remainder[i] = r.exact[i] - r.approx[i];
  }
  r.linf = norm(r.remainder, LpNorm::infinity());
  r.l1 = norm(r.remainder, LpNorm::finite(1.0));
  return r;
}

ExpansionResult remainder(const ExpansionPlan& plan, std::int64_t n) {
  Approximator approx(plan);
  PowerSweep sweep(plan.sequence);
  return remainder(approx, sweep.advance_to(n), n);
}

void for_each_remainder(const Approximator& approx, std::vector<std::int64_t> ns,
                        const std::function<void(const ExpansionResult&)>& fn,
                        PowerMethod method) {
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (!ns.empty() && ns.front() < 1) {
    throw InvalidArgument("n values must be >= 1");
  }
  const Sequence& a = approx.plan().sequence;
  if (method == PowerMethod::square) {
    std::optional<Sequence> current;
    std::int64_t at = 0;
    for (std::int64_t n : ns) {
      const Sequence step = power(a, n - at);
      current = current ? convolve(*current, step) : step;
      at = n;
      fn(remainder(approx, *current, n));
    }
    return;
  }
  PowerSweep sweep(a);
  for (std::int64_t n : ns) {
    fn(remainder(approx, sweep.advance_to(n), n));
  }
}

SlopeFit fit_loglog(const std::vector<std::int64_t>& ns, const std::vector<double>& values) {
  if (ns.size() != values.size()) {
    throw InvalidArgument("fit_loglog: size mismatch");
  }
  SlopeFit fit;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (i > 0 && ns[i] <= ns[i - 1]) {
      throw InvalidArgument("fit_loglog: n values must be strictly increasing");
    }
    if (values[i] > 0.0 && std::isfinite(values[i])) {
      fit.ns.push_back(ns[i]);
      fit.values.push_back(values[i]);
    }
  }
  const std::size_t m = fit.ns.size();
  if (m < 3) {
    throw DegenerateData("slope fit needs at least 3 nonzero values, got " + std::to_string(m));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log10(static_cast<double>(fit.ns[i]));
    const double y = std::log10(fit.values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double dm = static_cast<double>(m);
  const double vx = sxx - sx * sx / dm;
  const double vy = syy - sy * sy / dm;
  const double cxy = sxy - sx * sy / dm;
  if (vx <= 0.0) {
    throw DegenerateData("slope fit: all n equal");
  }
  fit.slope = cxy / vx;
  fit.intercept = (sy - fit.slope * sx) / dm;
  fit.r2 = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
  return fit;
}

namespace {

std::vector<std::int64_t> prepare_ns(std::vector<std::int64_t> ns, SlopeOptions opts) {
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::erase_if(ns, [&](std::int64_t n) { return n < opts.min_n; });
  if (ns.size() < 8) {
    throw InvalidArgument("slope fit needs at least 8 distinct n values");
  }
  if (std::log10(static_cast<double>(ns.back()) / static_cast<double>(ns.front())) < 1.5 - 1e-12) {
    throw InvalidArgument("slope fit n values must span at least 1.5 decades");
  }
  return ns;
}

}  // namespace

SlopeFit fit_slope(const Approximator& approx, const std::vector<std::int64_t>& ns, LpNorm p,
                   SlopeOptions opts) {
  const auto sorted = prepare_ns(ns, opts);
  std::vector<double> values;
  for_each_remainder(
      approx, sorted, [&](const ExpansionResult& r) { values.push_back(norm(r.remainder, p)); },
      opts.powers);
  return fit_loglog(sorted, values);
}

SlopeFit fit_slope(const ExpansionPlan& plan, const std::vector<std::int64_t>& ns, LpNorm p,
                   SlopeOptions opts) {
  return fit_slope(Approximator(plan), ns, p, opts);
}

EnvelopeCheck check_envelope(const Approximator& approx, const std::vector<std::int64_t>& ns,
                             double C, double c) {
  if (!(C > 0.0)) {
    throw InvalidArgument("check_envelope: C must be positive");
  }
  if (!(c >= 0.0)) {
    throw InvalidArgument("check_envelope: c must be nonnegative");
  }
  EnvelopeCheck check;
  check.C = C;
  check.c = c;
  check.pass = true;
  for_each_remainder(approx, ns, [&](const ExpansionResult& r) {
    const auto env = approx.log_envelope(r.n, r.lo, r.hi(), C, c);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.remainder.size(); ++i) {
      const double mag = std::abs(r.remainder[i]);
      if (mag == 0.0) {
        continue;
      }
      worst = std::max(worst, std::exp(std::log(mag) - env[i]));
    }
    check.ns.push_back(r.n);
    check.max_ratio.push_back(worst);
    if (!(worst <= 1.0 + envelope_slack)) {
      check.pass = false;
    }
  });
  return check;
}

EnvelopeCheck check_envelope(const ExpansionPlan& plan, const std::vector<std::int64_t>& ns,
                             double C, double c) {
  return check_envelope(Approximator(plan), ns, C, c);
}

SlopeFit corollary1_error(const Approximator& approx, const Sequence& u0,
                          const std::vector<std::int64_t>& ns, LpNorm p, SlopeOptions opts) {
  const auto sorted = prepare_ns(ns, opts);
  std::vector<double> values;
  for_each_remainder(approx, sorted, [&](const ExpansionResult& r) {
    // (a^{*n} - approx) * u0 by linearity.
    const bool any = std::any_of(r.remainder.begin(), r.remainder.end(),
                                 [](cplx v) { return std::abs(v) > trim_threshold; });
    if (!any) {
      values.push_back(0.0);
      return;
    }
    const Sequence rem(r.lo, r.remainder);
    values.push_back(norm(convolve(rem, u0), p));
  }, opts.powers);
  return fit_loglog(sorted, values);
}

SlopeFit corollary1_error(const ExpansionPlan& plan, const Sequence& u0,
                          const std::vector<std::int64_t>& ns, LpNorm p, SlopeOptions opts) {
  return corollary1_error(Approximator(plan), u0, ns, p, opts);
}

std::vector<std::int64_t> log_spaced_integers(std::int64_t lo, std::int64_t hi, std::size_t count) {
  if (lo < 1 || hi < lo || count < 2 ||
      static_cast<std::uint64_t>(hi - lo + 1) < static_cast<std::uint64_t>(count)) {
    throw InvalidArgument("log_spaced_integers: cannot pick " + std::to_string(count) +
                          " distinct integers in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
  const double l0 = std::log(static_cast<double>(lo));
  const double l1 = std::log(static_cast<double>(hi));
  for (std::size_t k = count;; ++k) {
    std::set<std::int64_t> picked;
    for (std::size_t i = 0; i < k; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(k - 1);
      picked.insert(std::llround(std::exp(l0 + t * (l1 - l0))));
    }
    picked.insert(lo);
    picked.insert(hi);
    if (picked.size() >= count) {
      return {picked.begin(), picked.end()};
    }
  }
}

std::vector<std::int64_t> default_n_list() { return log_spaced_integers(1, 1000, 40); }

}  // namespace convpow
