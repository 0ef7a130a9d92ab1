#pragma once

#include "maxreg/halfspace.hpp"
#include "maxreg/order_io.hpp"
#include "maxreg/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace maxreg {

/// Decaying exponential sum per live column: two terms with Im sigma in [0.8, 1.8].
HalfField random_exponential_field(const HalfGrid& g, std::uint64_t seed);

struct RecoveryReport {
  double error = 0.0;     // relative, in the norm named by `norm`
  double residual = 0.0;  // relative residual of the equations
  double boundary_residual = 0.0;
  std::string norm;
  json to_json() const;
};

/// op[D] u* and op[L] (u1*, u2*) on random band-limited torus fields.
RecoveryReport whole_scalar_manufactured(const TorusGrid& g, std::uint64_t seed);
RecoveryReport whole_system_manufactured(const TorusGrid& g, std::uint64_t seed);

/// Scalar problem with a builtin pair: f = D u*, g = B u* for a decaying exponential u*.
RecoveryReport half_scalar_manufactured(const HalfGrid& g, const BoundaryCondition& bc, std::uint64_t seed);
/// The CHG system with Tr_1 data for a decaying exponential pair (u1*, u2*).
RecoveryReport half_chg_manufactured(const HalfGrid& g, std::uint64_t seed);

struct EnsembleLevel {
  int K = 0;
  int Nn = 0;
  std::vector<double> ratios;
  double median = 0.0;
  double max_residual = 0.0;
  double max_boundary_residual = 0.0;
  double max_cond = 0.0;
};

struct EnsembleReport {
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<EnsembleLevel> levels;

  /// max/min of the level medians.
  double median_change() const;
  json to_json() const;
  std::string csv() const;
};

/// Random CHG data (sampled f, smooth g) at `levels` resolutions, each doubling K and Nn.
EnsembleReport chg_ensemble(const HalfGrid& base, int samples, std::uint64_t seed, int levels = 2);

}  // namespace maxreg
