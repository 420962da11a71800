#include "convpow/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convpow/error.hpp"

namespace convpow {

void AttractorSpec::validate() const {
  if (mu < 1) {
    throw InvalidArgument("attractor: mu must be >= 1");
  }
  if (!(beta.real() > 0.0) || !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw InvalidArgument("attractor: beta must have a positive real part");
  }
}

double attractor_tail_rate(const AttractorSpec& spec) {
  spec.validate();
  // Saddles of -i x theta - beta theta^{2mu}: theta = s x^{1/(2mu-1)} with
  // s^{2mu-1} = -i / (2 mu beta); the exponent there is
  // -i s x^q (2mu-1)/(2mu), q = 2mu/(2mu-1).
  const int p = 2 * spec.mu - 1;
  const cplx rhs = cplx(0.0, -1.0) / (2.0 * spec.mu * spec.beta);
  const double r = std::pow(std::abs(rhs), 1.0 / p);
  const double arg0 = std::arg(rhs) / p;
  double slowest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < p; ++k) {
    const cplx s = std::polar(r, arg0 + 2.0 * M_PI * k / p);
    if (s.imag() < 0.0) {
      slowest = std::min(slowest, -s.imag());
    }
  }
  return slowest * static_cast<double>(p) / (2.0 * spec.mu);
}

AttractorBank::AttractorBank(AttractorSpec spec, std::vector<ExpansionPolynomial> polys,
                             QuadratureOptions opts)
    : spec_(spec), polys_(std::move(polys)), opts_(opts) {
  spec_.validate();
  if (polys_.empty()) {
    throw InvalidArgument("AttractorBank: no polynomial given");
  }
  rule_.cutoff = opts_.cutoff_margin *
                 std::pow(opts_.target_decay / spec_.beta.real(), 1.0 / (2.0 * spec_.mu));
  x_max_ = estimate_x_max();

  // Double the node count until the Fourier sums settle across the window.
  const std::vector<double> probes = {0.0, x_max_ / 3.0, 2.0 * x_max_ / 3.0, x_max_};
  std::size_t nodes = std::max<std::size_t>(opts_.initial_nodes, 2);
  nodes += nodes % 2;
  Folded coarse = fold(nodes);
  std::vector<cplx> v_coarse(probes.size() * banks());
  std::vector<cplx> v_fine(probes.size() * banks());
  evaluate_with(coarse, probes, v_coarse, kernels::Exec::serial);
  while (true) {
    if (2 * nodes > opts_.max_nodes) {
      break;
    }
    Folded fine = fold(2 * nodes);
    evaluate_with(fine, probes, v_fine, kernels::Exec::serial);
    double diff = 0.0;
    for (std::size_t i = 0; i < v_fine.size(); ++i) {
      diff = std::max(diff, std::abs(v_fine[i] - v_coarse[i]));
    }
    if (diff < opts_.convergence_tol) {
      break;
    }
    nodes *= 2;
    coarse = std::move(fine);
    v_coarse.swap(v_fine);
  }
  rule_.nodes = nodes;
  folded_ = std::move(coarse);
}

AttractorBank::Folded AttractorBank::fold(std::size_t nodes) const {
  const std::size_t half = nodes / 2;
  const double h = 2.0 * rule_.cutoff / static_cast<double>(nodes);
  const double scale = h / (2.0 * M_PI);
  const std::size_t nb = banks();

  Folded f;
  f.theta.resize(half);
  f.center.resize(nb);
  f.even.resize(nb * half);
  f.odd.resize(nb * half);

  auto weight = [&](double theta, const ExpansionPolynomial& p) {
    const double t2mu = std::pow(theta, 2 * spec_.mu);
    return scale * eval_poly(p, cplx(0.0, theta)) * std::exp(-spec_.beta * t2mu);
  };

  for (std::size_t b = 0; b < nb; ++b) {
    f.center[b] = weight(0.0, polys_[b]);
  }
  for (std::size_t j = 1; j <= half; ++j) {
    const double theta = h * static_cast<double>(j);
    f.theta[j - 1] = theta;
    // Trapezoid end weight at the cutoff.
    const double end = (j == half) ? 0.5 : 1.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const cplx wp = end * weight(theta, polys_[b]);
      const cplx wm = end * weight(-theta, polys_[b]);
      f.even[b * half + j - 1] = wp + wm;
      f.odd[b * half + j - 1] = wp - wm;
    }
  }
  return f;
}

void AttractorBank::evaluate_with(const Folded& f, std::span<const double> xs,
                                  std::span<cplx> out, kernels::Exec exec) const {
  kernels::FoldedWeights w{f.theta, f.center, f.even, f.odd};
  kernels::fourier_sum(exec, w, xs, out);
}

double AttractorBank::estimate_x_max() const {
  const double rate = 0.9 * attractor_tail_rate(spec_);
  const double q = 2.0 * spec_.mu / (2.0 * spec_.mu - 1.0);
  const int p = 2 * spec_.mu - 1;
  const double saddle_scale =
      std::pow(std::abs(1.0 / (2.0 * spec_.mu * spec_.beta)), 1.0 / p);
  // Global bound on |H|: (1/2pi) int exp(-Re beta theta^{2mu}) dtheta.
  const double mass = std::tgamma(1.0 + 1.0 / (2.0 * spec_.mu)) *
                      std::pow(spec_.beta.real(), -1.0 / (2.0 * spec_.mu)) / M_PI;
  double x = 1.0;
  for (int iter = 0; iter < 100; ++iter) {
    // |P(i theta)| at the saddle, |theta| = saddle_scale x^{1/(2mu-1)}.
    const double t = saddle_scale * std::pow(x, 1.0 / p);
    double amp = 0.0;
    for (const auto& poly : polys_) {
      double a = 0.0;
      for (const auto& [deg, c] : poly.coeffs) {
        a += std::abs(c) * std::pow(std::max(t, 1.0), deg);
      }
      amp = std::max(amp, a);
    }
    amp = std::max(amp, 1e-300) * std::max(mass, 1.0) * std::max(1.0, x);
    const double next =
        std::pow(std::max(0.0, std::log(amp / opts_.window_floor)) / rate, 1.0 / q);
    if (std::abs(next - x) < 1e-9 * std::max(1.0, x)) {
      x = next;
      break;
    }
    x = next;
  }
  return std::max(x, 1.0);
}

void AttractorBank::evaluate(std::span<const double> xs, std::span<cplx> out,
                             kernels::Exec exec) const {
  if (out.size() != xs.size() * banks()) {
    throw InvalidArgument("AttractorBank::evaluate: output size mismatch");
  }
  std::vector<double> inside;
  std::vector<std::size_t> where;
  inside.reserve(xs.size());
  where.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i]) <= x_max_) {
      inside.push_back(xs[i]);
      where.push_back(i);
    }
  }
  std::fill(out.begin(), out.end(), cplx{});
  std::vector<cplx> vals(inside.size() * banks());
  evaluate_with(folded_, inside, vals, exec);
  for (std::size_t i = 0; i < where.size(); ++i) {
    std::copy_n(vals.begin() + static_cast<std::ptrdiff_t>(i * banks()), banks(),
                out.begin() + static_cast<std::ptrdiff_t>(where[i] * banks()));
  }
}

cplx AttractorBank::evaluate(double x, std::size_t bank) const {
  if (bank >= banks()) {
    throw InvalidArgument("AttractorBank::evaluate: bank index out of range");
  }
  if (std::abs(x) > x_max_) {
    return {};
  }
  std::vector<cplx> out(banks());
  const double xs[1] = {x};
  evaluate_with(folded_, xs, out, kernels::Exec::serial);
  return out[bank];
}

namespace {

ExpansionPolynomial unit_polynomial() {
  ExpansionPolynomial p;
  p.coeffs[0] = 1.0;
  return p;
}

}  // namespace

cplx eval_attractor(const AttractorSpec& spec, double x) {
  return AttractorBank(spec, {unit_polynomial()}).evaluate(x);
}

cplx eval_applied(const AttractorSpec& spec, const ExpansionPolynomial& p, double x) {
  if (p.is_zero()) {
    return {};
  }
  return AttractorBank(spec, {p}).evaluate(x);
}

cplx attractor_derivative(const AttractorSpec& spec, int order, double x) {
  if (order < 0) {
    throw InvalidArgument("attractor_derivative: order must be >= 0");
  }
  // d^N/dx^N <-> (-i theta)^N = P(i theta) with P = (-1)^N X^N.
  ExpansionPolynomial p;
  p.coeffs[order] = (order % 2 == 0) ? 1.0 : -1.0;
  return AttractorBank(spec, {p}).evaluate(x);
}

}  // namespace convpow
