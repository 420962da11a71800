#include "convpow/polynomials.hpp"

#include <cmath>
#include <functional>

#include "convpow/error.hpp"

namespace convpow {

namespace {

using Poly = std::map<int, cplx>;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<double>(i);
  }
  return f;
}

// c_nu = gamma_{2mu+nu} / (2mu+nu)!, nu = 1..order.
std::vector<cplx> scaled_cumulants(const TangencyPoint& point, int order) {
  if (!point.classified || point.mu < 1) {
    throw InsufficientCumulants("tangency point is not classified");
  }
  std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
  for (int nu = 1; nu <= order; ++nu) {
    const int idx = 2 * point.mu + nu;
    auto it = point.cumulants.find(idx);
    if (it == point.cumulants.end()) {
      throw InsufficientCumulants("order " + std::to_string(order) + " needs gamma_" +
                                  std::to_string(idx) + ", which was not computed");
    }
    c[static_cast<std::size_t>(nu)] = it->second / factorial(idx);
  }
  return c;
}

void add_into(Poly& dst, int deg, cplx v) {
  if (v == cplx{}) {
    return;
  }
  cplx& slot = dst[deg];
  slot += v;
  if (slot == cplx{}) {
    dst.erase(deg);
  }
}

}  // namespace

std::vector<ExpansionPolynomial> build_polynomials(const TangencyPoint& point, int order, int k) {
  if (order < 0) {
    throw InvalidArgument("build_polynomials: order must be >= 0");
  }
  const auto c = scaled_cumulants(point, order);
  const int two_mu = 2 * point.mu;

  // E_0 = 1, m E_m = sum_{j=1}^m j A_j E_{m-j} with A_j = c_j Y^{2mu+j}.
  std::vector<ExpansionPolynomial> out(static_cast<std::size_t>(order) + 1);
  out[0].coeffs[0] = 1.0;
  for (int m = 1; m <= order; ++m) {
    Poly acc;
    for (int j = 1; j <= m; ++j) {
      const cplx cj = c[static_cast<std::size_t>(j)] * static_cast<double>(j);
      if (cj == cplx{}) {
        continue;
      }
      for (const auto& [deg, v] : out[static_cast<std::size_t>(m - j)].coeffs) {
        add_into(acc, deg + two_mu + j, cj * v);
      }
    }
    for (auto& [deg, v] : acc) {
      v /= static_cast<double>(m);
    }
    out[static_cast<std::size_t>(m)].coeffs = std::move(acc);
  }
  for (int m = 0; m <= order; ++m) {
    out[static_cast<std::size_t>(m)].k = k;
    out[static_cast<std::size_t>(m)].m = m;
  }
  return out;
}

ExpansionPolynomial bell_sum_polynomial(const TangencyPoint& point, int m, int k) {
  if (m < 1) {
    throw InvalidArgument("bell_sum_polynomial: m must be >= 1");
  }
  const auto c = scaled_cumulants(point, m);
  const int two_mu = 2 * point.mu;

  ExpansionPolynomial p;
  p.k = k;
  p.m = m;
  // Partitions of m as multiplicities nu_l of each part l, sum l nu_l = m.
  std::vector<int> mult(static_cast<std::size_t>(m) + 1, 0);
  std::function<void(int, int)> visit = [&](int part, int remaining) {
    if (remaining == 0) {
      int parts = 0;
      cplx term = 1.0;
      for (int l = 1; l <= m; ++l) {
        const int v = mult[static_cast<std::size_t>(l)];
        if (v == 0) {
          continue;
        }
        parts += v;
        term *= std::pow(c[static_cast<std::size_t>(l)], v) / factorial(v);
      }
      add_into(p.coeffs, m + two_mu * parts, term);
      return;
    }
    if (part == 0) {
      return;
    }
    for (int v = remaining / part; v >= 0; --v) {
      mult[static_cast<std::size_t>(part)] = v;
      visit(part - 1, remaining - v * part);
    }
    mult[static_cast<std::size_t>(part)] = 0;
  };
  visit(m, m);
  return p;
}

cplx eval_poly(const ExpansionPolynomial& p, cplx z) {
  if (p.coeffs.empty()) {
    return {};
  }
  cplx acc{};
  int prev = p.coeffs.rbegin()->first;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    for (int d = prev; d > it->first; --d) {
      acc *= z;
    }
    acc += it->second;
    prev = it->first;
  }
  for (int d = prev; d > 0; --d) {
    acc *= z;
  }
  return acc;
}

ExpansionPolynomial combine(const std::vector<ExpansionPolynomial>& polys,
                            const std::vector<cplx>& weights) {
  if (polys.size() != weights.size()) {
    throw InvalidArgument("combine: size mismatch");
  }
  ExpansionPolynomial out;
  if (!polys.empty()) {
    out.k = polys.front().k;
  }
  out.m = -1;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const auto& [deg, v] : polys[i].coeffs) {
      add_into(out.coeffs, deg, weights[i] * v);
    }
  }
  return out;
}

}  // namespace convpow
