#pragma once

#include "maxreg/certify.hpp"
#include "maxreg/chg.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace maxreg {

/// B = sum_j op[b_j] Tr_j for j = 0..3; an empty slot is the zero coefficient.
struct BoundaryOperator {
  std::array<std::optional<SymbolFn>, 4> coeffs;
  std::optional<OrderFunctionDiff> chi;

  /// Highest trace index with a nonzero coefficient, -1 if none.
  int leading() const;
  cplx coeff(int j, double tau, double xi_prime) const;
  /// B(z) = sum_j b_j (i z)^j, the action on e^{i z x_n}.
  cplx symbol(double tau, double xi_prime, cplx z) const;

  static BoundaryOperator trace(int j);
};

struct BoundaryCondition {
  std::string name;
  std::array<BoundaryOperator, 2> ops;
};

BoundaryCondition dirichlet_pair();
BoundaryCondition neumann_pair_13();
std::vector<BoundaryCondition> builtin_boundary_conditions();
/// Lookup by name ("dirichlet", "neumann13", ...); throws InvalidInput.
BoundaryCondition boundary_condition(const std::string& name);

/// Target order function: explicit chi, or T_j(mu_D + nu) for the leading Tr_j.
OrderFunctionDiff target_order(const BoundaryOperator& op, const OrderFunction& nu);

struct ExtendedBoundaryMatrix {
  int m = 0;
  MatrixSymbol matrix{1, {SymbolFn()}};
};

ExtendedBoundaryMatrix build_extended_matrix(const BoundaryCondition& bc, int m, const OrderFunction& nu);

struct LsReport {
  bool pass = false;
  double min_abs_det = 0.0;
  GridPoint argmin;
  json to_json() const;
};

LsReport lopatinskii_check(const ExtendedBoundaryMatrix& b, const GridSpec& grid);

struct ComplementingReport {
  ExtendedBoundaryMatrix extended;
  MixedOrderReport mixed;
  json to_json() const;
};

ComplementingReport complementing_check(const BoundaryCondition& bc, const OrderFunction& nu, const GridSpec& grid);

/// M_ij = B_i(rho_j^+) at one column.
std::array<cplx, 4> boundary_root_matrix(const BoundaryCondition& bc, double tau, double xi_prime);

/// Boundary-condition file: {ops: [{coeffs: [ref x4], chi: ref}], m, nu}.
struct BoundaryFile {
  BoundaryCondition bc;
  int m = 0;
  OrderFunction nu;
};
BoundaryFile boundary_from_json(const json& j);

}  // namespace maxreg
