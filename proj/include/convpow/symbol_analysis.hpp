#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "convpow/phase.hpp"
#include "convpow/sequence.hpp"
#include "convpow/series.hpp"

namespace convpow {

struct AnalysisOptions {
  double tol_norm = 1e-10;     // | sup |F| - 1 |
  double tol_detect = 1e-10;   // accept a local max of |F|^2 - 1 as tangency
  double tol_coeff = 1e-9;     // zero test for log-series coefficients, relative
  double cluster_tol = 1e-8;   // merge candidate arguments closer than this
  double snap_tol = 1e-9;      // snap to pi * p / q, q <= 12
  bool normalize = false;      // divide by sup |F| instead of failing
};

enum class Alternative { all_modulus_one, finite_tangency };

const char* to_string(Alternative alt);

/// A point kappa = e^{i theta} where |F_a(kappa)| = 1, with the local data
///   F(kappa e^{i xi}) = F(kappa) exp(i alpha xi - beta xi^{2 mu}
///                        + sum_{nu > 2 mu} gamma_nu (i xi)^nu / nu!).
struct TangencyPoint {
  Angle theta = Angle::radians(0.0);
  cplx kappa{1.0, 0.0};
  cplx value{1.0, 0.0};
  Angle value_arg = Angle::radians(0.0);  // arg F(kappa)

  bool classified = false;
  double alpha = 0.0;
  int mu = 0;
  cplx beta{};
  std::map<int, cplx> cumulants;  // nu -> gamma_nu, nu = 2mu+1 .. 2mu+M
  bool borderline = false;        // Re beta within 100x of the zero threshold

  cplx cumulant(int nu) const;
};

struct SymbolReport {
  bool normalized = false;
  double sup_modulus = 0.0;
  Alternative alternative = Alternative::finite_tangency;
  std::vector<TangencyPoint> points;  // sorted by theta
};

/// Grid scan plus refinement of |F_a| on the unit circle. Never throws for
/// normalization; see `normalized` and `sup_modulus`. Tangency points are
/// located relative to sup |F| and left unclassified.
SymbolReport scan_symbol(const Sequence& a, const AnalysisOptions& opts = {});

/// scan_symbol, then NotNormalized when sup |F| != 1.
SymbolReport find_tangency_points(const Sequence& a, const AnalysisOptions& opts = {});

/// Local expansion at e^{i theta} with cumulants through 2 mu + order.
TangencyPoint classify(const Sequence& a, const Angle& theta, int order,
                       const AnalysisOptions& opts = {});

struct Analysis {
  Sequence sequence;  // the analyzed sequence (rescaled when normalize is set)
  double applied_scale = 1.0;
  SymbolReport report;
};

/// Full pipeline: normalization gate, tangency localization and
/// classification of every point. Throws NotNormalized, AllModulusOne,
/// DriftNotReal, DispersiveCase or DegenerateSymbol.
Analysis analyze(const Sequence& a, int order, const AnalysisOptions& opts = {});

}  // namespace convpow
