#pragma once

#include <complex>
#include <map>
#include <vector>

#include "convpow/symbol_analysis.hpp"

namespace convpow {

/// Sparse polynomial sum_d coeffs[d] X^d; P_{k,m} in the correction term of
/// order m attached to tangency point k.
struct ExpansionPolynomial {
  int k = 0;
  int m = 0;
  std::map<int, cplx> coeffs;

  bool is_zero() const noexcept { return coeffs.empty(); }
  int degree() const noexcept { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }
};

/// P_{k,0..order} from the exponential of
///   sum_{nu >= 1} gamma_{2mu+nu} / (2mu+nu)! Y^{2mu+nu} Z^nu
/// truncated at Z^order.
std::vector<ExpansionPolynomial> build_polynomials(const TangencyPoint& point, int order,
                                                   int k = 0);

/// P_{k,m} by summing over all integer partitions of m.
ExpansionPolynomial bell_sum_polynomial(const TangencyPoint& point, int m, int k = 0);

/// Horner evaluation.
cplx eval_poly(const ExpansionPolynomial& p, cplx z);

/// sum_i w_i P_i, dropping exact zeros.
ExpansionPolynomial combine(const std::vector<ExpansionPolynomial>& polys,
                            const std::vector<cplx>& weights);

}  // namespace convpow
