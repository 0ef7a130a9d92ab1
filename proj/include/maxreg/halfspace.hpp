#pragma once

#include "maxreg/boundary.hpp"
#include "maxreg/column.hpp"
#include "maxreg/polygon.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace maxreg {

/// Time modes |k| <= K, tangential Fourier modes (N of them when n = 2, one
/// mode xi' = 0 when n = 1), and the x_n grid on [0, Ln].
struct HalfGrid {
  double T = 2.0 * 3.14159265358979323846;
  int K = 16;
  int n = 1;
  double Lx = 2.0 * 3.14159265358979323846 * 16.0;
  int N = 32;
  ColumnGrid xn;

  void validate() const;
  int tangential() const { return n == 2 ? N : 1; }
  std::size_t columns() const { return static_cast<std::size_t>(2 * K + 1) * static_cast<std::size_t>(tangential()); }
  std::size_t column(int k, int j) const { return static_cast<std::size_t>(k + K) * static_cast<std::size_t>(tangential()) + static_cast<std::size_t>(j); }
  int k_of(std::size_t col) const { return static_cast<int>(col / static_cast<std::size_t>(tangential())) - K; }
  int j_of(std::size_t col) const { return static_cast<int>(col % static_cast<std::size_t>(tangential())); }
  double omega(int k) const;
  double xi_prime(int j) const;
  /// L2 factor so that ||u||^2 = measure * sum over columns of int |col|^2.
  double measure() const;

  /// Ln = decay_lengths / (slowest decay rate of the roots at |k| = 1).
  static double default_length(double T, double decay_lengths = 16.0);
};

/// Tangential Fourier coefficients per column; entry per (k, xi') mode.
using BoundaryField = std::vector<cplx>;
using TraceTuple = std::vector<BoundaryField>;

struct HalfField {
  HalfGrid grid;
  std::vector<Column> cols;

  HalfField() = default;
  explicit HalfField(const HalfGrid& g);
  bool oscillatory() const;
};

HalfField operator+(const HalfField& a, const HalfField& b);
HalfField operator-(const HalfField& a, const HalfField& b);

/// (D^-)^{-1} applied per column by two causal resolvents.
HalfField dminus_inverse_plus(const HalfField& f);
/// (D^+)^{-1} on data supported in x_n >= 0 by two anticausal resolvents; the
/// result keeps upper support, so its first two traces vanish.
HalfField dplus_inverse_dotted(const HalfField& f);
/// D^- applied exactly (polynomial in d/dx_n).
HalfField apply_dminus(const HalfField& u);
/// D applied as a fourth-order polynomial in d/dx_n per column.
HalfField apply_D(const HalfField& u);

/// ||op[omega_mu^-] u||_{L2(G+)} with factors (<tau>^y + <xi'> - d/dx_n)^e.
double halfspace_norm(const HalfField& u, const OrderFunctionDiff& mu);
/// Smooth-weight norm of a boundary field.
double boundary_norm(const HalfGrid& g, const BoundaryField& b, const OrderFunctionDiff& chi);

/// Exponential-sum lifting with d^m/dx_n^m eta(0) = g_m for m < ord mu.
HalfField trace_extension(const HalfGrid& grid, const TraceTuple& g, const OrderFunction& mu);
TraceTuple traces(const HalfField& u, int count);

struct HalfDiagnostics {
  std::vector<double> cond;  // per column in trace/mu_D scaling, 0 for k = 0
  double max_cond = 0.0;
  double boundary_residual = 0.0;  // max |B u - g| / (1 + |g|)
};

struct HalfSolve {
  HalfField u;
  HalfDiagnostics diag;
};

/// One column of the factorized solve: two causal resolvents for D^-, two
/// anticausal ones for D^+, then the 2x2 root system M_ij = B_i(rho_j^+).
class ColumnSolver {
 public:
  explicit ColumnSolver(const BoundaryCondition& bc);

  struct Result {
    Column u;
    double cond = 0.0;
    double boundary_residual = 0.0;
    bool singular = false;
  };
  Result solve(const ColumnGrid& grid, double tau, double xi_prime, const Column& f, cplx g1, cplx g2) const;

 private:
  BoundaryCondition bc_;
  OrderFunctionDiff row_order_[2];
  std::vector<ElementaryTerm> mu_terms_;
};

/// op[D]_+ u = f with B_1 u = g_1, B_2 u = g_2 by the factorized route.
HalfSolve solve_half_scalar(const HalfField& f, const TraceTuple& g, const BoundaryCondition& bc);

struct ChgNorms {
  double e1 = 0, e2 = 0, f1 = 0, f2 = 0, g1 = 0, g2 = 0;
  double ratio() const;
};

struct ChgSolve {
  HalfField u1, u2;
  HalfDiagnostics diag;
  double residual = 0.0;  // relative PDE residual of both lines
};

/// The system L u = f with Tr_1 u_i = g_i through the adjugate and two Neumann solves.
ChgSolve solve_half_chg_system(const HalfField& f1, const HalfField& f2, const BoundaryField& g1, const BoundaryField& g2);
/// L u per column.
std::pair<HalfField, HalfField> apply_chg_L(const HalfField& u1, const HalfField& u2);
ChgNorms chg_norms(const HalfField& u1, const HalfField& u2, const HalfField& f1, const HalfField& f2,
                   const BoundaryField& g1, const BoundaryField& g2);

/// Random sampled data with decaying spectral envelope, independent of resolution.
HalfField random_half_field(const HalfGrid& g, std::uint64_t seed);
BoundaryField random_boundary_field(const HalfGrid& g, std::uint64_t seed);

void write_half_field(const std::string& path, const HalfField& f);
HalfField read_half_field(const std::string& path);

}  // namespace maxreg
