#pragma once

#include "maxreg/boundary.hpp"

#include <functional>
#include <vector>

namespace maxreg::oracle {

/// Dense multi-element Chebyshev solve of u'''' - (2q + i tau) u'' + (q^2 + i tau q + i tau) u = f
/// on [0, L] with two boundary operators at 0 and decay imposed at L.
struct CollocationColumn {
  double tau = 1.0;
  double q = 0.0;  // |xi'|^2
  std::function<cplx(double)> f;
  BoundaryCondition bc;
  cplx g[2] = {0.0, 0.0};
  double length = 40.0;
  int elements = 10;
  int nodes = 24;  // per element
};

/// u at the requested points.
std::vector<cplx> collocation_solve(const CollocationColumn& c, const std::vector<double>& at);

}  // namespace maxreg::oracle
