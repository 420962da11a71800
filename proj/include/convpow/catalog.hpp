#pragma once

#include <map>
#include <string>

#include "convpow/sequence.hpp"

namespace convpow::catalog {

/// Third-order (O3) upwind stencil for the transport equation at CFL number
/// lambda in (0, 1), supported on -1..2.
Sequence o3(double lambda);

/// Bernoulli step law: {0 -> 1-p, 1 -> p}, p in (0, 1).
Sequence bernoulli(double p);

/// {-1 -> 1/2, 1 -> 1/2}.
Sequence symmetric_walk();

/// Lax-Friedrichs: {-1 -> (1-lambda)/2, 1 -> (1+lambda)/2}, lambda in (0, 1).
/// Drift +lambda, matching the O3 orientation.
Sequence lax_friedrichs(double lambda);

/// Reads the JSON sequence format {"offset": int, "coeffs": [[re, im], ...]}.
Sequence from_file(const std::string& path);

struct SchemeSpec {
  std::string name;
  std::map<std::string, double> params;
  std::string file;
};

/// Resolves a scheme name (o3, bernoulli, symmetric-walk, lax-friedrichs,
/// file) with its parameters. Missing parameters default to 0.5.
Sequence resolve(const SchemeSpec& spec);

}  // namespace convpow::catalog
