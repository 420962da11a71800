#include <doctest.h>

#include <random>

#include "convpow/catalog.hpp"
#include "convpow/error.hpp"
#include "convpow/phase.hpp"
#include "convpow/series.hpp"
#include "helpers.hpp"

using namespace convpow;
using testutil::cplx;

namespace {

// exp of a series with zero constant term via sum t^k / k!, truncated
// products only; independent of exp_series.
std::vector<cplx> naive_exp(const std::vector<cplx>& t) {
  const std::size_t n = t.size();
  std::vector<cplx> out(n), term(n);
  out[0] = term[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<cplx> next(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 1; i + j < n; ++j) next[i + j] += term[i] * t[j];
    for (auto& z : next) z /= static_cast<double>(k);
    term = next;
    for (std::size_t i = 0; i < n; ++i) out[i] += term[i];
  }
  return out;
}

}  // namespace

TEST_CASE("taylor_at examples") {
  const auto c = taylor_at(catalog::symmetric_walk(), Angle::exact(0, 1), 4);
  const std::vector<cplx> cosine{1.0, 0.0, -0.5, 0.0, 1.0 / 24.0};
  REQUIRE(c.order() == 4);
  for (std::size_t i = 0; i <= 4; ++i) CHECK(std::abs(c[i] - cosine[i]) < 1e-15);

  const auto d = taylor_at(Sequence::delta(), Angle::radians(1.234), 5);
  CHECK(d[0] == cplx(1.0));
  for (std::size_t i = 1; i <= 5; ++i) CHECK(d[i] == cplx(0.0));

  const auto o = taylor_at(catalog::o3(0.5), Angle::exact(0, 1), 2);
  CHECK(std::abs(o[0] - 1.0) < 1e-15);
  CHECK(std::abs(o[1] - cplx(0, 0.5)) < 1e-15);
  CHECK(std::abs(o[2] - (-0.125)) < 1e-15);

  // kappa != 1: c_nu = sum a_l kappa^l (i l)^nu / nu!
  const auto k = taylor_at(catalog::symmetric_walk(), Angle::exact(1, 1), 3);
  CHECK(std::abs(k[0] + 1.0) < 1e-15);
  CHECK(std::abs(k[2] - 0.5) < 1e-15);
  CHECK_THROWS(taylor_at(Sequence::delta(), Angle::exact(0, 1), 0));
}

TEST_CASE("log of the cosine series") {
  const auto c = taylor_at(catalog::symmetric_walk(), Angle::exact(0, 1), 6);
  const auto t = log_series(c);
  const std::vector<cplx> want{0.0, 0.0, -0.5, 0.0, -1.0 / 12.0, 0.0, -1.0 / 45.0};
  for (std::size_t i = 0; i <= 6; ++i) CHECK(std::abs(t[i] - want[i]) < 1e-15);
  // the frozen coefficients exponentiate back to the cosine series
  const auto e = naive_exp(want);
  for (std::size_t i = 0; i <= 6; ++i) CHECK(std::abs(e[i] - c[i]) < 1e-15);
}

TEST_CASE("log of an exponential is linear") {
  const double alpha = 0.37;
  TaylorSeries s;
  cplx term = 1.0;
  for (int k = 0; k <= 8; ++k) {
    s.coeffs.push_back(term);
    term *= cplx(0, alpha) / static_cast<double>(k + 1);
  }
  const auto t = log_series(s);
  CHECK(std::abs(t[1] - cplx(0, alpha)) < 1e-15);
  for (std::size_t k = 2; k <= 8; ++k) CHECK(std::abs(t[k]) < 1e-15);
}

TEST_CASE("exp(log(s)) returns s / s_0") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    TaylorSeries s;
    for (int k = 0; k <= 12; ++k) s.coeffs.emplace_back(u(rng), u(rng));
    s.coeffs[0] += cplx(1.5, 0.0);
    const auto back = exp_series(log_series(s));
    for (std::size_t k = 0; k <= 12; ++k) {
      CHECK(std::abs(back[k] - s[k] / s[0]) < 1e-11 * (1.0 + std::abs(s[k] / s[0])));
    }
  }
}

TEST_CASE("log_series rejects a vanishing constant term") {
  TaylorSeries s{{1e-15, 1.0, 0.0}};
  CHECK_THROWS_AS(log_series(s), ZeroConstantTerm);
}

TEST_CASE("angles") {
  const auto half = Angle::exact(1, 1);
  CHECK(half.is_exact());
  CHECK(half.phase(3) == cplx(-1.0, 0.0));
  CHECK(half.phase(-1000001) == cplx(-1.0, 0.0));
  CHECK(Angle::exact(1, 2).phase(5) == cplx(0.0, 1.0));
  CHECK(Angle::exact(-1, 2).value() == doctest::Approx(1.5 * M_PI));
  const auto s = Angle::snapped(M_PI / 3.0 + 1e-12);
  CHECK(s.is_exact());
  CHECK(s.numerator() == 1);
  CHECK(s.denominator() == 3);
  CHECK_FALSE(Angle::snapped(1.0).is_exact());
  // exact phases carry no drift at large multiples
  const auto third = Angle::exact(2, 3);
  CHECK(std::abs(third.phase(3000000) - 1.0) < 1e-15);
  // inexact angles reduce in extended precision
  const auto r = Angle::radians(0.1);
  CHECK(std::abs(r.phase(1000003) - std::exp(cplx(0, std::fmod(0.1L * 1000003, 2 * M_PIl)))) <
        1e-9);
}
