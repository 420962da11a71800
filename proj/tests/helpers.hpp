#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "convpow/sequence.hpp"

namespace testutil {

using convpow::cplx;
using convpow::Sequence;

// Brute-force double loop, independent of the library kernels.
inline std::vector<cplx> naive_convolve(const Sequence& a, const Sequence& b) {
  std::vector<cplx> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
  }
  return out;
}

inline Sequence random_sequence(std::mt19937_64& rng, std::size_t len, std::int64_t offset = 0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> c(len);
  for (auto& z : c) {
    z = {u(rng), u(rng)};
  }
  c.front() += 2.0;  // keep the ends away from zero
  c.back() += 2.0;
  return Sequence(offset, std::move(c));
}

inline double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& z : v) {
    m = std::max(m, std::abs(z));
  }
  return m;
}

// max_ell |a_ell - b_ell| over the union of supports.
inline double max_diff(const Sequence& a, const Sequence& b) {
  const auto lo = std::min(a.min_index(), b.min_index());
  const auto hi = std::max(a.max_index(), b.max_index());
  double m = 0.0;
  for (auto l = lo; l <= hi; ++l) {
    m = std::max(m, std::abs(a[l] - b[l]));
  }
  return m;
}

}  // namespace testutil
