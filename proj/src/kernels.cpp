#include "convpow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace convpow::kernels {

namespace {

inline void check_conv_sizes(std::span<const cplx> a, std::span<const cplx> b,
                             std::span<cplx> out) {
  if (a.empty() || b.empty() || out.size() != a.size() + b.size() - 1) {
    throw std::invalid_argument("direct_convolve: bad sizes");
  }
}

// One output coefficient. Summation order is fixed so the serial and
// parallel kernels agree bit for bit.
inline cplx conv_entry(std::span<const cplx> a, std::span<const cplx> b, std::ptrdiff_t i) {
  const auto na = static_cast<std::ptrdiff_t>(a.size());
  const auto nb = static_cast<std::ptrdiff_t>(b.size());
  const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - nb + 1);
  const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(na - 1, i);
  double re = 0.0;
  double im = 0.0;
  for (std::ptrdiff_t j = lo; j <= hi; ++j) {
    const cplx x = a[j];
    const cplx y = b[i - j];
    re += x.real() * y.real() - x.imag() * y.imag();
    im += x.real() * y.imag() + x.imag() * y.real();
  }
  return {re, im};
}

inline void fourier_entry(const FoldedWeights& w, double x, cplx* dst) {
  const std::size_t banks = w.center.size();
  const std::size_t half = w.theta.size();
  for (std::size_t b = 0; b < banks; ++b) {
    dst[b] = w.center[b];
  }
  for (std::size_t j = 0; j < half; ++j) {
    const double phase = x * w.theta[j];
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    for (std::size_t b = 0; b < banks; ++b) {
      const cplx e = w.even[b * half + j];
      const cplx o = w.odd[b * half + j];
      // e*c - i*o*s
      dst[b] += cplx(e.real() * c + o.imag() * s, e.imag() * c - o.real() * s);
    }
  }
}

void check_fourier_sizes(const FoldedWeights& w, std::span<const double> xs,
                         std::span<cplx> out) {
  const std::size_t banks = w.center.size();
  if (w.even.size() != banks * w.theta.size() || w.odd.size() != w.even.size() ||
      out.size() != xs.size() * banks) {
    throw std::invalid_argument("fourier_sum: bad sizes");
  }
}

}  // namespace

void direct_convolve_serial(std::span<const cplx> a, std::span<const cplx> b,
                            std::span<cplx> out) {
  check_conv_sizes(a, b, out);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = conv_entry(a, b, i);
  }
}

void direct_convolve_parallel(std::span<const cplx> a, std::span<const cplx> b,
                              std::span<cplx> out) {
  check_conv_sizes(a, b, out);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n * static_cast<std::ptrdiff_t>(std::min(a.size(), b.size())) > 65536)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = conv_entry(a, b, i);
  }
}

void fourier_sum_serial(const FoldedWeights& w, std::span<const double> xs,
                        std::span<cplx> out) {
  check_fourier_sizes(w, xs, out);
  const std::size_t banks = w.center.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fourier_entry(w, xs[i], out.data() + i * banks);
  }
}

void fourier_sum_parallel(const FoldedWeights& w, std::span<const double> xs,
                          std::span<cplx> out) {
  check_fourier_sizes(w, xs, out);
  const std::size_t banks = w.center.size();
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 8) if (n > 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    fourier_entry(w, xs[i], out.data() + static_cast<std::size_t>(i) * banks);
  }
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_max_threads(int n) {
#ifdef _OPENMP
  if (n > 0) {
    omp_set_num_threads(n);
  }
#else
  (void)n;
#endif
}

}  // namespace convpow::kernels
