#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "convpow/phase.hpp"
#include "convpow/sequence.hpp"

namespace convpow {

/// Truncated power series c_0 + c_1 xi + ... + c_N xi^N.
struct TaylorSeries {
  std::vector<cplx> coeffs;

  std::size_t order() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  cplx operator[](std::size_t nu) const { return nu < coeffs.size() ? coeffs[nu] : cplx{}; }
};

/// Taylor coefficients in xi of F_a(kappa e^{i xi}) through order N:
///   c_nu = sum_ell a_ell kappa^ell (i ell)^nu / nu!
TaylorSeries taylor_at(const Sequence& a, const Angle& kappa, std::size_t order);

/// log(s / s_0) through the order of s. The constant term of the result is 0.
/// Throws ZeroConstantTerm when |s_0| < 1e-14.
TaylorSeries log_series(const TaylorSeries& s);

/// exp(t) through the order of t.
TaylorSeries exp_series(const TaylorSeries& t);

}  // namespace convpow
