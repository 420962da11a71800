#pragma once

#include <complex>
#include <cstdint>
#include <optional>

namespace convpow {

/// An angle on the unit circle. Angles that are rational multiples of pi
/// with a small denominator are kept exact, so integer multiples of them
/// (kappa^{-ell}, F(kappa)^n for large ell, n) carry no rounding drift.
class Angle {
 public:
  // Largest denominator q for which theta = pi * p / q is kept exact.
  static constexpr int max_snap_denominator = 12;

  static Angle exact(std::int64_t num, std::int64_t den);  // pi * num / den
  static Angle radians(double theta);
  // Exact if within `tol` of pi * p / q with q <= max_snap_denominator.
  static Angle snapped(double theta, double tol = 1e-9);

  // Representative in [0, 2 pi).
  double value() const noexcept;
  bool is_exact() const noexcept { return den_ != 0; }
  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }

  // exp(i * k * angle).
  std::complex<double> phase(std::int64_t k) const;

 private:
  Angle(std::int64_t num, std::int64_t den, double theta) : num_(num), den_(den), theta_(theta) {}
  std::int64_t num_ = 0;
  std::int64_t den_ = 0;  // 0 marks an inexact angle
  double theta_ = 0.0;
};

}  // namespace convpow
