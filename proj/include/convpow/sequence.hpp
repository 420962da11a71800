#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "convpow/kernels.hpp"

namespace convpow {

using cplx = std::complex<double>;

// Coefficients with modulus at or below this value are dropped from the ends
// of a sequence. Only structural zeros get this small.
inline constexpr double trim_threshold = 1e-300;

// Below this length (of the shorter operand) convolution sums directly.
inline constexpr std::size_t fft_min_length = 33;

/// A finitely supported complex sequence on Z, stored as the coefficients
/// on {offset, ..., offset + size() - 1}. Always kept trimmed: the first and
/// last stored coefficients are nonzero.
class Sequence {
 public:
  Sequence(std::int64_t offset, std::vector<cplx> coeffs);
  Sequence(std::int64_t offset, const std::vector<double>& coeffs);

  static Sequence delta(std::int64_t at = 0);

  std::int64_t offset() const noexcept { return offset_; }
  std::int64_t min_index() const noexcept { return offset_; }
  std::int64_t max_index() const noexcept {
    return offset_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
  }
  std::size_t size() const noexcept { return coeffs_.size(); }
  // Width of the support interval, max_index - min_index.
  std::int64_t width() const noexcept { return static_cast<std::int64_t>(coeffs_.size()) - 1; }

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  // a_ell, zero outside the support.
  cplx operator[](std::int64_t ell) const noexcept;

  Sequence scaled(cplx factor) const;
  bool is_real() const noexcept;

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::int64_t offset_;
  std::vector<cplx> coeffs_;
};

/// p in [1, inf].
class LpNorm {
 public:
  static LpNorm finite(double p);
  static LpNorm infinity() { return LpNorm(0.0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  double p() const noexcept { return p_; }

 private:
  LpNorm(double p, bool infinite) : p_(p), infinite_(infinite) {}
  double p_;
  bool infinite_;
};

// Direct summation when the shorter operand has fewer than fft_min_length
// entries or both operands are nonnegative reals; zero-padded FFT otherwise.
Sequence convolve(const Sequence& a, const Sequence& b,
                  kernels::Exec exec = kernels::Exec::parallel);

// The two convolution routes behind convolve(), exposed for cross-checks.
Sequence convolve_direct(const Sequence& a, const Sequence& b,
                         kernels::Exec exec = kernels::Exec::parallel);
Sequence convolve_fft(const Sequence& a, const Sequence& b);

/// a^{*n} by binary exponentiation; n >= 1.
Sequence power(const Sequence& a, std::int64_t n);

double norm(std::span<const cplx> values, LpNorm p);
double norm(const Sequence& a, LpNorm p);

/// F_a(e^{i theta}) = sum_ell a_ell e^{i ell theta}.
cplx symbol_eval(const Sequence& a, double theta);

/// d/dtheta F_a(e^{i theta}).
cplx symbol_eval_derivative(const Sequence& a, double theta);

}  // namespace convpow
