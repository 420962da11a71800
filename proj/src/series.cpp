#include "convpow/series.hpp"

#include <cmath>

#include "convpow/error.hpp"

namespace convpow {

TaylorSeries taylor_at(const Sequence& a, const Angle& kappa, std::size_t order) {
  if (order < 1) {
    throw InvalidArgument("taylor_at: order must be >= 1");
  }
  TaylorSeries s{std::vector<cplx>(order + 1)};
  for (std::int64_t ell = a.min_index(); ell <= a.max_index(); ++ell) {
    const cplx a_ell = a[ell];
    if (a_ell == cplx{}) {
      continue;
    }
    cplx term = a_ell * kappa.phase(ell);
    const cplx step(0.0, static_cast<double>(ell));
    s.coeffs[0] += term;
    for (std::size_t nu = 1; nu <= order; ++nu) {
      term *= step / static_cast<double>(nu);
      s.coeffs[nu] += term;
    }
  }
  return s;
}

TaylorSeries log_series(const TaylorSeries& s) {
  if (s.coeffs.empty() || std::abs(s.coeffs[0]) < 1e-14) {
    throw ZeroConstantTerm("log_series: constant term is (numerically) zero");
  }
  const std::size_t n = s.order();
  std::vector<cplx> u(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    u[k] = s.coeffs[k] / s.coeffs[0];
  }
  // k t_k = k u_k - sum_{j=1}^{k-1} j t_j u_{k-j}
  TaylorSeries t{std::vector<cplx>(n + 1)};
  for (std::size_t k = 1; k <= n; ++k) {
    cplx acc = static_cast<double>(k) * u[k];
    for (std::size_t j = 1; j < k; ++j) {
      acc -= static_cast<double>(j) * t.coeffs[j] * u[k - j];
    }
    t.coeffs[k] = acc / static_cast<double>(k);
  }
  return t;
}

TaylorSeries exp_series(const TaylorSeries& t) {
  const std::size_t n = t.order();
  TaylorSeries e{std::vector<cplx>(n + 1)};
  if (t.coeffs.empty()) {
    return e;
  }
  e.coeffs[0] = std::exp(t.coeffs[0]);
  // k e_k = sum_{j=1}^{k} j t_j e_{k-j}
  for (std::size_t k = 1; k <= n; ++k) {
    cplx acc{};
    for (std::size_t j = 1; j <= k; ++j) {
      acc += static_cast<double>(j) * t.coeffs[j] * e.coeffs[k - j];
    }
    e.coeffs[k] = acc / static_cast<double>(k);
  }
  return e;
}

}  // namespace convpow
