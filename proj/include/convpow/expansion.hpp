#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "convpow/attractor.hpp"
#include "convpow/polynomials.hpp"
#include "convpow/sequence.hpp"
#include "convpow/symbol_analysis.hpp"

namespace convpow {

/// Everything needed to form the order-M approximation of a^{*n}.
struct ExpansionPlan {
  Sequence sequence;
  SymbolReport report;
  int order = 0;
  std::vector<std::vector<ExpansionPolynomial>> polynomials;  // [k][m], m = 0..order

  // Throws PlanIncomplete when a point lacks classification, cumulants or
  // polynomials for the stated order.
  void validate() const;
};

ExpansionPlan make_plan(const Analysis& analysis, int order);
ExpansionPlan make_plan(const Sequence& a, int order, const AnalysisOptions& opts = {});

/// Caches one attractor bank per tangency point so that many (n, ell) pairs
/// share the quadrature set-up.
class Approximator {
 public:
  explicit Approximator(ExpansionPlan plan, QuadratureOptions quad = {});

  const ExpansionPlan& plan() const noexcept { return plan_; }
  const AttractorBank& bank(std::size_t k) const { return banks_.at(k); }

  // Smallest interval of ell outside which every attractor term is zero.
  std::pair<std::int64_t, std::int64_t> window(std::int64_t n) const;

  // approx_ell for ell = lo..hi.
  std::vector<cplx> approximate(std::int64_t n, std::int64_t lo, std::int64_t hi,
                                kernels::Exec exec = kernels::Exec::parallel) const;

  // Envelope bound on |R^n_ell| for ell = lo..hi:
  //   max_k C n^{-(M+2)/(2mu_k)} exp(-c |x_k|^{2mu_k/(2mu_k-1)}).
  // Returned as the natural log to survive underflow.
  std::vector<double> log_envelope(std::int64_t n, std::int64_t lo, std::int64_t hi, double C,
                                   double c) const;

 private:
  ExpansionPlan plan_;
  std::vector<AttractorBank> banks_;
};

std::vector<cplx> approximate(const ExpansionPlan& plan, std::int64_t n, std::int64_t lo,
                              std::int64_t hi);

/// Exact powers a^{*n} for a nondecreasing list of n by repeated
/// convolution with a. Short stencils stay on the direct-summation path, so
/// tail entries keep relative accuracy far below the peak.
class PowerSweep {
 public:
  explicit PowerSweep(Sequence a);
  const Sequence& advance_to(std::int64_t n);
  std::int64_t current_n() const noexcept { return n_; }

 private:
  Sequence a_;
  Sequence current_;
  std::int64_t n_ = 1;
};

struct ExpansionResult {
  std::int64_t n = 0;
  std::int64_t lo = 0;  // index of the first entry below
  std::vector<cplx> exact;
  std::vector<cplx> approx;
  std::vector<cplx> remainder;
  double linf = 0.0;
  double l1 = 0.0;

  std::int64_t hi() const noexcept { return lo + static_cast<std::int64_t>(remainder.size()) - 1; }
};

/// R^n = a^{*n} - approx over the union of the exact support and the
/// approximation window.
ExpansionResult remainder(const Approximator& approx, const Sequence& exact_power,
                          std::int64_t n);
ExpansionResult remainder(const ExpansionPlan& plan, std::int64_t n);

/// How exact powers are produced along a sweep of n.
///   iterate: one direct convolution with a per step; tails keep relative
///            accuracy (needed for envelope ratios far from the centre).
///   square:  jumps by binary exponentiation with FFT products; cost grows
///            like log n per jump, tails only accurate relative to the peak.
enum class PowerMethod { iterate, square };

/// Calls `fn` with the remainder for each n (sorted ascending, deduplicated).
void for_each_remainder(const Approximator& approx, std::vector<std::int64_t> ns,
                        const std::function<void(const ExpansionResult&)>& fn,
                        PowerMethod method = PowerMethod::iterate);

struct SlopeFit {
  std::vector<std::int64_t> ns;
  std::vector<double> values;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares of log10(value) on log10(n); zero values are skipped.
SlopeFit fit_loglog(const std::vector<std::int64_t>& ns, const std::vector<double>& values);

struct SlopeOptions {
  std::int64_t min_n = 1;  // fit only n >= min_n (pre-asymptotic cut)
  PowerMethod powers = PowerMethod::iterate;
};

SlopeFit fit_slope(const Approximator& approx, const std::vector<std::int64_t>& ns, LpNorm p,
                   SlopeOptions opts = {});
SlopeFit fit_slope(const ExpansionPlan& plan, const std::vector<std::int64_t>& ns, LpNorm p,
                   SlopeOptions opts = {});

inline constexpr double envelope_slack = 0.05;

struct EnvelopeCheck {
  double C = 0.0;
  double c = 0.0;
  std::vector<std::int64_t> ns;
  std::vector<double> max_ratio;  // per n: max_ell |R| / envelope
  bool pass = false;
};

EnvelopeCheck check_envelope(const Approximator& approx, const std::vector<std::int64_t>& ns,
                             double C, double c);
EnvelopeCheck check_envelope(const ExpansionPlan& plan, const std::vector<std::int64_t>& ns,
                             double C, double c);

/// Decay of || a^{*n} * u0 - approx * u0 ||_p in n.
SlopeFit corollary1_error(const Approximator& approx, const Sequence& u0,
                          const std::vector<std::int64_t>& ns, LpNorm p, SlopeOptions opts = {});
SlopeFit corollary1_error(const ExpansionPlan& plan, const Sequence& u0,
                          const std::vector<std::int64_t>& ns, LpNorm p, SlopeOptions opts = {});

/// `count` distinct integers, log-spaced over [lo, hi], both ends included.
std::vector<std::int64_t> log_spaced_integers(std::int64_t lo, std::int64_t hi, std::size_t count);

/// 40 log-spaced n in [1, 1000].
std::vector<std::int64_t> default_n_list();

}  // namespace convpow
