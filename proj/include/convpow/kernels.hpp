#pragma once

// Data-parallel inner loops. Every kernel has a serial reference version that
// the tests hold the OpenMP version to; both produce bit-identical results
// because each output slot is written by exactly one iteration.

#include <complex>
#include <span>

namespace convpow::kernels {

using cplx = std::complex<double>;

enum class Exec { serial, parallel };

// out[i] = sum_j a[j] * b[i - j]; out.size() must be a.size() + b.size() - 1.
void direct_convolve_serial(std::span<const cplx> a, std::span<const cplx> b,
                            std::span<cplx> out);
void direct_convolve_parallel(std::span<const cplx> a, std::span<const cplx> b,
                              std::span<cplx> out);

inline void direct_convolve(Exec exec, std::span<const cplx> a, std::span<const cplx> b,
                            std::span<cplx> out) {
  if (exec == Exec::parallel) {
    direct_convolve_parallel(a, b, out);
  } else {
    direct_convolve_serial(a, b, out);
  }
}

// Symmetric Fourier sum used by the attractor quadrature. With nodes
// theta_j = j*h (j = -J..J), weights w_j and the folded arrays
//   even[j-1] = w_j + w_{-j},  odd[j-1] = w_j - w_{-j}   (j = 1..J)
// it returns  w_0 + sum_j even * cos(x theta_j) - i * odd * sin(x theta_j),
// i.e. sum_j w_j exp(-i x theta_j).
//
// `weights` holds `banks` weight sets back to back, each of length J; the
// result for x = xs[i] and bank b lands in out[i * banks + b].
struct FoldedWeights {
  std::span<const double> theta;  // theta_1..theta_J
  std::span<const cplx> center;   // w_0, one per bank
  std::span<const cplx> even;     // banks * J
  std::span<const cplx> odd;      // banks * J
};

void fourier_sum_serial(const FoldedWeights& w, std::span<const double> xs, std::span<cplx> out);
void fourier_sum_parallel(const FoldedWeights& w, std::span<const double> xs,
                          std::span<cplx> out);

inline void fourier_sum(Exec exec, const FoldedWeights& w, std::span<const double> xs,
                        std::span<cplx> out) {
  if (exec == Exec::parallel) {
    fourier_sum_parallel(w, xs, out);
  } else {
    fourier_sum_serial(w, xs, out);
  }
}

// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();
void set_max_threads(int n);

}  // namespace convpow::kernels
