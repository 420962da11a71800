#include "convpow/phase.hpp"

#include <cmath>
#include <numeric>

#include "convpow/error.hpp"

namespace convpow {

namespace {

constexpr long double two_pi_l = 6.283185307179586476925286766559005768L;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// exp(i pi r / q) for 0 <= r < 2q, exact at multiples of pi/2.
std::complex<double> exact_phase(std::int64_t r, std::int64_t q) {
  if ((2 * r) % q == 0) {
    switch ((2 * r) / q) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  return std::polar(1.0, static_cast<double>(M_PI * static_cast<double>(r) / static_cast<double>(q)));
}

}  // namespace

Angle Angle::exact(std::int64_t num, std::int64_t den) {
  if (den <= 0) {
    throw InvalidArgument("Angle::exact: denominator must be positive");
  }
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  num = floor_mod(num, 2 * den);
  return Angle(num, den, M_PI * static_cast<double>(num) / static_cast<double>(den));
}

Angle Angle::radians(double theta) {
  long double t = std::fmod(static_cast<long double>(theta), two_pi_l);
  if (t < 0) {
    t += two_pi_l;
  }
  return Angle(0, 0, static_cast<double>(t));
}

Angle Angle::snapped(double theta, double tol) {
  const Angle raw = radians(theta);
  for (std::int64_t q = 1; q <= max_snap_denominator; ++q) {
    const double p = std::nearbyint(raw.value() * static_cast<double>(q) / M_PI);
    const double candidate = M_PI * p / static_cast<double>(q);
    if (std::abs(raw.value() - candidate) <= tol) {
      return exact(static_cast<std::int64_t>(p), q);
    }
  }
  return raw;
}

double Angle::value() const noexcept { return theta_; }

std::complex<double> Angle::phase(std::int64_t k) const {
  if (is_exact()) {
    // k * num mod 2 den without overflow for |k| < 2^62 / (2 den).
    const std::int64_t r = floor_mod(floor_mod(k, 2 * den_) * num_, 2 * den_);
    return exact_phase(r, den_);
  }
  long double t = std::fmod(static_cast<long double>(k) * static_cast<long double>(theta_), two_pi_l);
  return std::polar(1.0, static_cast<double>(t));
}

}  // namespace convpow
