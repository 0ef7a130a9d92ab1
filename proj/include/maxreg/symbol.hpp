#pragma once

#include "maxreg/polygon.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace maxreg {

using cplx = std::complex<double>;

/// One term coeff * tau^i * xi^alpha (or |xi|^r when radial).
struct Monomial {
  cplx coeff;
  int tau_power = 0;
  std::vector<int> alpha;  // empty when radial
  int radial_power = 0;
};

class SymbolFn;

/// Polynomial symbol with exact exponent bookkeeping.
class PolySymbol {
 public:
  PolySymbol(int n, bool radial, std::vector<Monomial> monomials);

  int n() const { return n_; }
  bool radial() const { return radial_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  cplx operator()(double tau, std::span<const double> xi) const;
  cplx eval_radial(double tau, double xi_norm) const;

  PolySymbol operator*(const PolySymbol& o) const;
  SymbolFn to_fn() const;

 private:
  void normalize();
  int n_;
  bool radial_;
  std::vector<Monomial> monomials_;
};

/// E(P) = {(|alpha|, i)} as (xi-degree, tau-degree) points.
std::vector<QPoint> exponent_set(const PolySymbol& p);

/// Immutable complex symbol on (tau, xi). Radial symbols only see |xi|.
class SymbolFn {
 public:
  using RadialFn = std::function<cplx(double, double)>;
  using FullFn = std::function<cplx(double, std::span<const double>)>;

  SymbolFn();  // zero symbol
  static SymbolFn radial(RadialFn f, std::string name = {}, bool oscillatory_only = false);
  static SymbolFn full(FullFn f, int n, std::string name = {}, bool oscillatory_only = false);
  static SymbolFn constant(cplx c);

  cplx operator()(double tau, std::span<const double> xi) const;
  /// For radial symbols evaluates at |xi|; otherwise along the first axis.
  cplx at(double tau, double xi_norm) const;

  bool is_radial() const { return static_cast<bool>(radial_); }
  bool oscillatory_only() const { return oscillatory_only_; }
  int dimension() const { return n_; }
  const std::string& name() const { return name_; }

  SymbolFn with_order(OrderFunctionDiff mu) const;
  SymbolFn named(std::string name) const;
  const std::optional<OrderFunctionDiff>& order() const { return order_; }

  SymbolFn operator+(const SymbolFn& o) const;
  SymbolFn operator-(const SymbolFn& o) const;
  SymbolFn operator*(const SymbolFn& o) const;
  SymbolFn operator*(cplx c) const;
  SymbolFn operator-() const { return *this * cplx(-1.0); }

 private:
  RadialFn radial_;
  FullFn full_;
  int n_ = 0;
  bool oscillatory_only_ = false;
  std::string name_;
  std::optional<OrderFunctionDiff> order_;
};

/// Common building blocks: tau, |xi|^2, constants.
namespace sym {
SymbolFn tau();
SymbolFn i_tau();
SymbolFn xi_sq();
SymbolFn one();
SymbolFn zero();
}  // namespace sym

/// m x m matrix symbol with optional row (s_i) and column (t_j) order functions.
class MatrixSymbol {
 public:
  MatrixSymbol(int m, std::vector<SymbolFn> entries);

  int size() const { return m_; }
  const SymbolFn& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * m_ + j)]; }
  SymbolFn& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * m_ + j)]; }

  MatrixSymbol& with_orders(std::vector<OrderFunctionDiff> rows, std::vector<OrderFunctionDiff> cols);
  bool has_orders() const { return !rows_.empty(); }
  const std::vector<OrderFunctionDiff>& row_orders() const { return rows_; }
  const std::vector<OrderFunctionDiff>& col_orders() const { return cols_; }
  /// delta = sum of s_k + t_k
  OrderFunctionDiff delta() const;

  /// Entries evaluated at a point, row-major.
  std::vector<cplx> eval(double tau, std::span<const double> xi) const;
  std::vector<cplx> eval_at(double tau, double xi_norm) const;

  static MatrixSymbol identity(int m);

 private:
  int m_;
  std::vector<SymbolFn> entries_;
  std::vector<OrderFunctionDiff> rows_, cols_;
};

/// Laplace expansion of a dense row-major m x m block.
cplx laplace_det(const std::vector<cplx>& a, int m);

SymbolFn det(const MatrixSymbol& m);
/// (adj M)_{ij} = (-1)^{i+j} det M^{(ji)}; order functions S_i = -t_i, T_j = delta - s_j.
MatrixSymbol adjugate(const MatrixSymbol& m);

}  // namespace maxreg
