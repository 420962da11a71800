#include "convpow/sequence.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "convpow/error.hpp"

namespace convpow {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer fftw_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) {
    throw std::bad_alloc();
  }
  return FftwBuffer(p);
}

class FftwPlan {
 public:
  FftwPlan(int n, fftw_complex* in, fftw_complex* out, int sign) {
    // The planner is not thread safe; execution is.
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE);
    if (plan_ == nullptr) {
      throw Error("FftError", "fftw planning failed");
    }
  }
  ~FftwPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

}  // namespace

Sequence::Sequence(std::int64_t offset, std::vector<cplx> coeffs)
    : offset_(offset), coeffs_(std::move(coeffs)) {
  auto small = [](cplx c) { return std::abs(c) <= trim_threshold; };
  auto first = std::find_if_not(coeffs_.begin(), coeffs_.end(), small);
  if (first == coeffs_.end()) {
    throw InvalidArgument("sequence has no nonzero coefficient");
  }
  auto last = std::find_if_not(coeffs_.rbegin(), coeffs_.rend(), small).base();
  offset_ += first - coeffs_.begin();
  coeffs_.erase(last, coeffs_.end());
  coeffs_.erase(coeffs_.begin(), first);
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument("sequence has a non-finite coefficient");
    }
  }
}

Sequence::Sequence(std::int64_t offset, const std::vector<double>& coeffs)
    : Sequence(offset, std::vector<cplx>(coeffs.begin(), coeffs.end())) {}

Sequence Sequence::delta(std::int64_t at) { return Sequence(at, std::vector<cplx>{1.0}); }

cplx Sequence::operator[](std::int64_t ell) const noexcept {
  if (ell < min_index() || ell > max_index()) {
    return {};
  }
  return coeffs_[static_cast<std::size_t>(ell - offset_)];
}

Sequence Sequence::scaled(cplx factor) const {
  std::vector<cplx> c(coeffs_);
  for (auto& v : c) {
    v *= factor;
  }
  return Sequence(offset_, std::move(c));
}

bool Sequence::is_real() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c.imag() == 0.0; });
}

LpNorm LpNorm::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw InvalidArgument("l^p exponent must be a finite real >= 1 (or infinity)");
  }
  return LpNorm(p, false);
}

Sequence convolve_direct(const Sequence& a, const Sequence& b, kernels::Exec exec) {
  std::vector<cplx> out(a.size() + b.size() - 1);
  kernels::direct_convolve(exec, a.coeffs(), b.coeffs(), out);
  return Sequence(a.offset() + b.offset(), std::move(out));
}

Sequence convolve_fft(const Sequence& a, const Sequence& b) {
  const std::size_t len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(len);
  auto fa = fftw_buffer(n);
  auto fb = fftw_buffer(n);
  auto* ca = reinterpret_cast<cplx*>(fa.get());
  auto* cb = reinterpret_cast<cplx*>(fb.get());
  std::fill(ca, ca + n, cplx{});
  std::fill(cb, cb + n, cplx{});
  std::copy(a.coeffs().begin(), a.coeffs().end(), ca);
  std::copy(b.coeffs().begin(), b.coeffs().end(), cb);

  const int in = static_cast<int>(n);
  {
    FftwPlan pa(in, fa.get(), fa.get(), FFTW_FORWARD);
    FftwPlan pb(in, fb.get(), fb.get(), FFTW_FORWARD);
    pa.execute();
    pb.execute();
  }
  for (std::size_t i = 0; i < n; ++i) {
    ca[i] *= cb[i];
  }
  {
    FftwPlan back(in, fa.get(), fa.get(), FFTW_BACKWARD);
    back.execute();
  }
  const double inv = 1.0 / static_cast<double>(n);
  std::vector<cplx> out(ca, ca + len);
  for (auto& v : out) {
    v *= inv;
  }
  return Sequence(a.offset() + b.offset(), std::move(out));
}

namespace {

bool nonnegative_real(const Sequence& a) {
  return std::all_of(a.coeffs().begin(), a.coeffs().end(),
                     [](cplx c) { return c.imag() == 0.0 && c.real() >= 0.0; });
}

}  // namespace

Sequence convolve(const Sequence& a, const Sequence& b, kernels::Exec exec) {
  // Nonnegative inputs stay on the direct path: FFT round-off would leave
  // small negative entries in what must be a probability law.
  if (std::min(a.size(), b.size()) < fft_min_length || (nonnegative_real(a) && nonnegative_real(b))) {
    return convolve_direct(a, b, exec);
  }
  return convolve_fft(a, b);
}

Sequence power(const Sequence& a, std::int64_t n) {
  if (n < 1) {
    throw InvalidArgument("power: exponent must be >= 1, got " + std::to_string(n));
  }
  Sequence base = a;
  std::optional<Sequence> acc;
  while (true) {
    if (n & 1) {
      acc = acc ? convolve(*acc, base) : base;
    }
    n >>= 1;
    if (n == 0) {
      break;
    }
    base = convolve(base, base);
  }
  return *acc;
}

double norm(std::span<const cplx> values, LpNorm p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (const cplx& v : values) {
      m = std::max(m, std::abs(v));
    }
    return m;
  }
  if (p.p() == 1.0) {
    double s = 0.0;
    for (const cplx& v : values) {
      s += std::abs(v);
    }
    return s;
  }
  // Scale by the max modulus so large p does not overflow.
  const double m = norm(values, LpNorm::infinity());
  if (m == 0.0) {
    return 0.0;
  }
  double s = 0.0;
  for (const cplx& v : values) {
    s += std::pow(std::abs(v) / m, p.p());
  }
  return m * std::pow(s, 1.0 / p.p());
}

double norm(const Sequence& a, LpNorm p) { return norm(a.coeffs(), p); }

cplx symbol_eval(const Sequence& a, double theta) {
  const cplx z = std::polar(1.0, theta);
  const auto c = a.coeffs();
  cplx acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * z + *it;
  }
  const double lead = std::remainder(static_cast<double>(a.offset()) * theta, 2.0 * M_PI);
  return acc * std::polar(1.0, lead);
}

cplx symbol_eval_derivative(const Sequence& a, double theta) {
  cplx acc{};
  for (std::int64_t ell = a.min_index(); ell <= a.max_index(); ++ell) {
    const double ph = std::remainder(static_cast<double>(ell) * theta, 2.0 * M_PI);
    acc += a[ell] * cplx(0.0, static_cast<double>(ell)) * std::polar(1.0, ph);
  }
  return acc;
}

}  // namespace convpow
