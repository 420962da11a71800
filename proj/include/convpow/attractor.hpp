#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "convpow/kernels.hpp"
#include "convpow/polynomials.hpp"

namespace convpow {

/// H^beta_{2mu}(x) = (1/2pi) int exp(-i x theta) exp(-beta theta^{2mu}) dtheta.
struct AttractorSpec {
  int mu = 1;
  cplx beta{1.0, 0.0};

  void validate() const;
};

struct QuadratureRule {
  double cutoff = 0.0;     // integrate over [-cutoff, cutoff]
  std::size_t nodes = 0;   // even; step = 2 cutoff / nodes

  double step() const noexcept { return 2.0 * cutoff / static_cast<double>(nodes); }
};

struct QuadratureOptions {
  double target_decay = 46.0;   // Re(beta) cutoff^{2mu} >= target_decay
  double cutoff_margin = 1.1;   // head room for polynomial factors
  std::size_t initial_nodes = 8192;
  std::size_t max_nodes = std::size_t{1} << 20;
  double convergence_tol = 1e-12;
  double window_floor = 1e-16;  // |H| below this outside |x| <= x_max
};

/// Trapezoid quadrature for (P(-d/dx) H^beta_{2mu})(x), for a bank of
/// polynomials sharing one node set. Node weights
///   h/(2pi) * P(i theta_j) * exp(-beta theta_j^{2mu})
/// are computed once; each evaluation is a single Fourier sum.
class AttractorBank {
 public:
  AttractorBank(AttractorSpec spec, std::vector<ExpansionPolynomial> polys,
                QuadratureOptions opts = {});

  const AttractorSpec& spec() const noexcept { return spec_; }
  const QuadratureRule& rule() const noexcept { return rule_; }
  std::size_t banks() const noexcept { return polys_.size(); }

  // Values beyond |x| > x_max are returned as exactly 0.
  double x_max() const noexcept { return x_max_; }

  // out[i * banks() + b] = value of polynomial b at xs[i].
  void evaluate(std::span<const double> xs, std::span<cplx> out,
                kernels::Exec exec = kernels::Exec::parallel) const;
  cplx evaluate(double x, std::size_t bank = 0) const;

 private:
  struct Folded {
    std::vector<double> theta;
    std::vector<cplx> center;
    std::vector<cplx> even;
    std::vector<cplx> odd;
  };
  Folded fold(std::size_t nodes) const;
  void evaluate_with(const Folded& f, std::span<const double> xs, std::span<cplx> out,
                     kernels::Exec exec) const;
  double estimate_x_max() const;

  AttractorSpec spec_;
  std::vector<ExpansionPolynomial> polys_;
  QuadratureOptions opts_;
  QuadratureRule rule_;
  Folded folded_;
  double x_max_ = 0.0;
};

// Exponent of the tail: |H(x)| ~ exp(-c |x|^{2mu/(2mu-1)}), c from the
// steepest-descent saddle (slowest-decaying lower-half-plane saddle).
double attractor_tail_rate(const AttractorSpec& spec);

cplx eval_attractor(const AttractorSpec& spec, double x);
cplx eval_applied(const AttractorSpec& spec, const ExpansionPolynomial& p, double x);
/// N-th derivative of H^beta_{2mu}.
cplx attractor_derivative(const AttractorSpec& spec, int order, double x);

}  // namespace convpow
