#include <doctest.h>

#include "convpow/attractor.hpp"
#include "convpow/error.hpp"
#include "helpers.hpp"

using namespace convpow;
using testutil::cplx;

namespace {

cplx gaussian(cplx beta, double x) {
  return std::exp(-x * x / (4.0 * beta)) / std::sqrt(4.0 * M_PI * beta);
}

ExpansionPolynomial monomial(int d, cplx c = 1.0) {
  ExpansionPolynomial p;
  p.coeffs[d] = c;
  return p;
}

}  // namespace

TEST_CASE("mu = 1 attractor is the Gaussian kernel") {
  for (cplx beta : {cplx(0.125), cplx(0.5), cplx(0.1, 0.05), cplx(2.0, -1.0)}) {
    double worst = 0.0;
    for (double x = -10.0; x <= 10.0; x += 0.25) {
      worst = std::max(worst, std::abs(eval_attractor({1, beta}, x) - gaussian(beta, x)));
    }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("H_4 at the origin") {
  const double beta = 3.0 / 128.0;
  const double want = std::tgamma(1.25) * std::pow(beta, -0.25) / M_PI;
  CHECK(std::abs(eval_attractor({2, beta}, 0.0) - want) < 1e-10);
  // general mu: H(0) = Gamma(1 + 1/(2mu)) beta^{-1/(2mu)} / pi
  for (int mu : {1, 3, 4}) {
    const double w = std::tgamma(1.0 + 1.0 / (2 * mu)) * std::pow(0.2, -1.0 / (2 * mu)) / M_PI;
    CHECK(std::abs(eval_attractor({mu, 0.2}, 0.0) - w) < 1e-10);
  }
}

TEST_CASE("Gaussian third derivative") {
  // H = e^{-2x^2} / sqrt(pi/2) at beta = 1/8
  for (double x = -4.0; x <= 4.0; x += 0.125) {
    const double want = (48.0 * x - 64.0 * x * x * x) * std::exp(-2.0 * x * x) / std::sqrt(M_PI / 2);
    CHECK(std::abs(attractor_derivative({1, 0.125}, 3, x) - want) < 1e-10);
  }
}

TEST_CASE("sixth derivative of H_4 matches Richardson-extrapolated differences") {
  const AttractorSpec spec{2, 3.0 / 128.0};
  // 6th central difference, stencil weights 1 -6 15 -20 15 -6 1.
  auto d6 = [&](double x, double h) {
    static const double w[7] = {1, -6, 15, -20, 15, -6, 1};
    cplx s{};
    for (int j = 0; j < 7; ++j) s += w[j] * eval_attractor(spec, x + (j - 3) * h);
    return s / std::pow(h, 6);
  };
  double scale = 0.0;
  for (double x = -3.0; x <= 3.0; x += 0.5) scale = std::max(scale, std::abs(attractor_derivative(spec, 6, x)));
  for (double x = -3.0; x <= 3.0; x += 0.5) {
    const cplx rich = (4.0 * d6(x, 0.05) - d6(x, 0.1)) / 3.0;
    CHECK(std::abs(attractor_derivative(spec, 6, x) - rich) < 1e-4 * scale);
  }
}

TEST_CASE("applied polynomials act as P(-d/dx)") {
  const AttractorSpec spec{2, cplx(0.05, 0.01)};
  // P = -X gives d/dx; P = X^2 gives d^2/dx^2
  for (double x : {-2.0, 0.3, 1.7}) {
    CHECK(std::abs(eval_applied(spec, monomial(1, -1.0), x) - attractor_derivative(spec, 1, x)) < 1e-12);
    CHECK(std::abs(eval_applied(spec, monomial(2), x) - attractor_derivative(spec, 2, x)) < 1e-12);
  }
}

TEST_CASE("bank evaluation") {
  const AttractorSpec spec{2, 3.0 / 128.0};
  const AttractorBank bank(spec, {monomial(0), monomial(6, -1.0 / 512.0), monomial(5, cplx(0, 1))});
  CHECK(bank.banks() == 3);
  CHECK(bank.rule().nodes % 2 == 0);
  CHECK(bank.x_max() > 10.0);
  std::vector<double> xs;
  for (double x = -30.0; x <= 30.0; x += 0.37) xs.push_back(x);
  std::vector<cplx> s(xs.size() * 3), p(xs.size() * 3);
  bank.evaluate(xs, s, kernels::Exec::serial);
  bank.evaluate(xs, p, kernels::Exec::parallel);
  CHECK(s == p);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i]) > bank.x_max()) {
      for (int b = 0; b < 3; ++b) CHECK(s[i * 3 + b] == cplx(0.0));
    } else {
      CHECK(std::abs(s[i * 3] - eval_attractor(spec, xs[i])) < 1e-13);
      CHECK(std::abs(s[i * 3 + 1] - eval_applied(spec, monomial(6, -1.0 / 512.0), xs[i])) < 1e-13);
    }
  }
  // real beta: even symmetric real profile
  CHECK(std::abs(bank.evaluate(1.3).imag()) < 1e-15);
  CHECK(std::abs(bank.evaluate(1.3) - bank.evaluate(-1.3)) < 1e-15);
  CHECK_THROWS(bank.evaluate(0.0, 3));
}

TEST_CASE("window: everything beyond x_max is negligible") {
  const AttractorSpec spec{2, 3.0 / 128.0};
  const AttractorBank bank(spec, {monomial(0)});
  QuadratureOptions wide;
  wide.window_floor = 1e-300;
  const AttractorBank ref(spec, {monomial(0)}, wide);
  for (double x = bank.x_max(); x < bank.x_max() + 5.0; x += 0.25) {
    CHECK(std::abs(ref.evaluate(x)) < 1e-16);
  }
}

TEST_CASE("tail rate") {
  CHECK(attractor_tail_rate({1, 0.125}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(attractor_tail_rate({1, 0.5}) == doctest::Approx(0.5).epsilon(1e-14));
  // mu = 2: |H_4(x)| <= C exp(-rate |x|^{4/3}) with rate from the saddle
  const AttractorSpec spec{2, 3.0 / 128.0};
  const double rate = attractor_tail_rate(spec);
  CHECK(rate > 0.0);
  for (double x = 5.0; x <= 15.0; x += 1.0) {
    CHECK(std::abs(eval_attractor(spec, x)) <= 10.0 * std::exp(-0.95 * rate * std::pow(x, 4.0 / 3.0)));
  }
}

TEST_CASE("invalid attractor specs") {
  CHECK_THROWS_AS(AttractorSpec({0, 1.0}).validate(), InvalidArgument);
  CHECK_THROWS_AS(AttractorSpec({2, cplx(-0.1, 1.0)}).validate(), InvalidArgument);
  CHECK_THROWS_AS(attractor_derivative({1, 1.0}, -1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(AttractorBank({1, 1.0}, {}), InvalidArgument);
}
