#include <doctest.h>

#include <random>

#include "convpow/catalog.hpp"
#include "convpow/error.hpp"
#include "convpow/sequence.hpp"
#include "helpers.hpp"

using namespace convpow;
using testutil::cplx;

TEST_CASE("sequence construction trims to canonical form") {
  const Sequence a(-2, std::vector<cplx>{0.0, 0.0, 1.0, cplx(0, 2), 0.0});
  CHECK(a.offset() == 0);
  CHECK(a.size() == 2);
  CHECK(a[1] == cplx(0, 2));
  CHECK(a[7] == cplx(0.0));
  CHECK(a[-5] == cplx(0.0));
  CHECK_THROWS_AS(Sequence(0, std::vector<cplx>{0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(Sequence(0, std::vector<double>{std::nan("")}), InvalidArgument);
  // tiny but genuine tail values survive
  const Sequence t(0, std::vector<double>{1.0, 1e-290});
  CHECK(t.size() == 2);
}

TEST_CASE("convolution examples") {
  const Sequence half(0, std::vector<double>{0.5, 0.5});
  const auto b = Sequence(3, std::vector<cplx>{cplx(1, 2), -0.5, cplx(0, 0.25)});
  CHECK(convolve(Sequence::delta(), b) == b);
  CHECK(convolve(half, half) == Sequence(0, std::vector<double>{0.25, 0.5, 0.25}));

  // O3(1/2) squared on -2..4; entry 0 from the brute-force double loop is
  // (-1/16)(9/16)... collected: -9/256 + 81/256 - 9/256 = 63/256.
  const auto o3 = catalog::o3(0.5);
  const auto sq = convolve(o3, o3);
  CHECK(sq.min_index() == -2);
  CHECK(sq.max_index() == 4);
  const auto naive = testutil::naive_convolve(o3, o3);
  CHECK(std::abs(naive[2] - 63.0 / 256.0) < 1e-15);
  CHECK(std::abs(sq[0] - 63.0 / 256.0) < 1e-15);
  for (std::int64_t l = -2; l <= 4; ++l) {
    CHECK(std::abs(sq[l] - naive[static_cast<std::size_t>(l + 2)]) < 1e-15);
  }
}

TEST_CASE("direct and FFT convolution agree on random inputs up to length 1e4") {
  std::mt19937_64 rng(3);
  for (auto [la, lb] : {std::pair{40u, 40u}, {100u, 3000u}, {10000u, 10000u}, {33u, 9999u}}) {
    const auto a = testutil::random_sequence(rng, la, -5);
    const auto b = testutil::random_sequence(rng, lb, 12);
    const auto d = convolve_direct(a, b);
    const auto f = convolve_fft(a, b);
    CHECK(d.offset() == f.offset());
    double scale = 0.0;
    for (const auto& z : d.coeffs()) scale = std::max(scale, std::abs(z));
    CHECK(testutil::max_diff(d, f) <= 1e-12 * scale);
  }
}

TEST_CASE("convolution is commutative and associative") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = testutil::random_sequence(rng, 1 + rng() % 60, -3);
    const auto b = testutil::random_sequence(rng, 1 + rng() % 60, 4);
    const auto c = testutil::random_sequence(rng, 1 + rng() % 60, 0);
    const auto ab = convolve(a, b);
    double scale = norm(ab, LpNorm::infinity());
    CHECK(testutil::max_diff(ab, convolve(b, a)) <= 1e-12 * scale);
    const auto l = convolve(ab, c);
    const auto r = convolve(a, convolve(b, c));
    CHECK(testutil::max_diff(l, r) <= 1e-12 * norm(l, LpNorm::infinity()));
  }
}

TEST_CASE("power") {
  const Sequence half(0, std::vector<double>{0.5, 0.5});
  CHECK(power(half, 1) == half);
  CHECK_THROWS_AS(power(half, 0), InvalidArgument);

  // exact binomial law from Pascal's triangle
  std::vector<double> row{1.0};
  for (int n = 1; n <= 60; ++n) {
    std::vector<double> next(row.size() + 1, 1.0);
    for (std::size_t j = 1; j < row.size(); ++j) next[j] = row[j - 1] + row[j];
    row = next;
    if (n % 7 == 0 || n == 60) {
      const auto p = power(half, n);
      for (int l = 0; l <= n; ++l) {
        const double want = std::ldexp(row[static_cast<std::size_t>(l)], -n);
        CHECK(std::abs(p[l] - want) <= 1e-12 * want);
      }
    }
  }

  const auto p7 = power(catalog::o3(0.5), 7);
  cplx sum{};
  for (const auto& z : p7.coeffs()) sum += z;
  CHECK(std::abs(sum - 1.0) < 1e-13);

  // binary exponentiation vs iterated products
  std::mt19937_64 rng(9);
  const auto a = testutil::random_sequence(rng, 5).scaled(0.2);
  Sequence it = a;
  for (int n = 2; n <= 40; ++n) {
    it = convolve(it, a);
  }
  CHECK(testutil::max_diff(power(a, 40), it) <= 1e-11 * norm(it, LpNorm::infinity()));
}

TEST_CASE("powers of probability laws stay nonnegative with unit mass") {
  const Sequence lazy(-1, std::vector<double>{0.25, 0.5, 0.25});
  const Sequence skew(0, std::vector<double>{0.125, 0.5, 0.375});
  for (const auto& a : {lazy, skew, catalog::bernoulli(0.5)}) {
    for (int n : {3, 50, 400, 1000}) {
      const auto p = power(a, n);
      double sum = 0.0;
      bool nonneg = true;
      for (const auto& z : p.coeffs()) {
        nonneg = nonneg && z.real() >= 0.0 && z.imag() == 0.0;
        sum += z.real();
      }
      CHECK(nonneg);
      CHECK(std::abs(sum - 1.0) <= 1e-13);
      CHECK(p.min_index() >= n * a.min_index());
      CHECK(p.max_index() <= n * a.max_index());
    }
  }
}

TEST_CASE("norms") {
  CHECK(norm(Sequence::delta(), LpNorm::finite(1)) == 1.0);
  CHECK(norm(Sequence(0, std::vector<cplx>{3.0, cplx(0, -4)}), LpNorm::infinity()) == 4.0);
  CHECK(norm(Sequence(0, std::vector<double>{0.5, 0.5}), LpNorm::finite(2)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(LpNorm::finite(0.5), InvalidArgument);

  std::mt19937_64 rng(13);
  const auto a = testutil::random_sequence(rng, 4).scaled(0.3);
  const double n1 = norm(a, LpNorm::finite(1));
  for (int n : {2, 5, 17}) {
    CHECK(norm(power(a, n), LpNorm::finite(1)) <= std::pow(n1, n) * (1.0 + 1e-12));
  }
}

TEST_CASE("symbol evaluation") {
  const auto walk = catalog::symmetric_walk();
  for (double t : {0.0, 0.3, 2.0, -1.1}) {
    CHECK(std::abs(symbol_eval(walk, t) - std::cos(t)) < 1e-15);
  }
  for (double l = 0.1; l < 0.95; l += 0.1) {
    CHECK(std::abs(symbol_eval(catalog::o3(l), 0.0) - 1.0) < 1e-14);
  }
  for (double l : {0.25, 0.5, 0.75}) {
    const auto a = catalog::o3(l);
    double worst = 0.0;
    for (int i = 0; i < 256; ++i) {
      const double t = 2.0 * M_PI * i / 256.0;
      const double s2 = std::pow(std::sin(t / 2.0), 2);
      const double want = 1.0 - (4.0 / 9.0) * l * (2.0 - l) * (1.0 - l * l) * s2 * s2 *
                                    (3.0 + 4.0 * l * (1.0 - l) * s2);
      worst = std::max(worst, std::abs(std::norm(symbol_eval(a, t)) - want));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("symbol is multiplicative") {
  std::mt19937_64 rng(17);
  const auto a = testutil::random_sequence(rng, 6, -2).scaled(0.15);
  const auto b = testutil::random_sequence(rng, 9, 3).scaled(0.1);
  const auto ab = convolve(a, b);
  // Evaluation round-off scales with the l^1 norm, which bounds |F| itself.
  const double scale_ab = norm(ab, LpNorm::finite(1));
  for (int i = 0; i < 64; ++i) {
    const double t = 2.0 * M_PI * i / 64.0;
    const cplx want = symbol_eval(a, t) * symbol_eval(b, t);
    CHECK(std::abs(symbol_eval(ab, t) - want) <= 1e-12 * scale_ab);
  }
  for (int n : {2, 9, 32}) {
    const auto p = power(a, n);
    const double scale = norm(p, LpNorm::finite(1));
    for (int i = 0; i < 64; ++i) {
      const double t = 2.0 * M_PI * i / 64.0;
      const cplx want = std::pow(symbol_eval(a, t), n);
      CHECK(std::abs(symbol_eval(p, t) - want) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("symbol derivative matches a centered difference") {
  const auto a = catalog::o3(0.3);
  const double h = 1e-5;
  for (double t : {0.2, 1.7, 3.0}) {
    const cplx fd = (symbol_eval(a, t + h) - symbol_eval(a, t - h)) / (2.0 * h);
    CHECK(std::abs(symbol_eval_derivative(a, t) - fd) < 1e-9);
  }
}
