#pragma once

#include "maxreg/symbol.hpp"

#include <vector>

namespace maxreg {

/// coeff * exp(i sigma x) on x >= 0, Im sigma > 0.
struct ExpTerm {
  cplx coeff;
  cplx sigma;
};

/// Uniform grid x_i = i h on [0, Ln], i = 0..Nn.
struct ColumnGrid {
  double Ln = 16.0;
  int Nn = 256;

  double h() const { return Ln / Nn; }
  double x(int i) const { return i * h(); }
  int points() const { return Nn + 1; }
};

/// One (k, xi') column in x_n: an exact exponential sum plus an optional
/// sampled part. jet[d][i] is the d-th derivative of the sampled part at x_i.
struct Column {
  std::vector<ExpTerm> exps;
  std::vector<std::vector<cplx>> jet;

  bool has_samples() const { return !jet.empty(); }
  static Column exponential(std::vector<ExpTerm> terms);
  static Column sampled(std::vector<cplx> values);
};

Column operator+(const Column& a, const Column& b);
Column operator-(const Column& a, const Column& b);
Column operator*(cplx c, const Column& a);

/// Merges equal exponents and drops zero coefficients.
Column simplified(const Column& a);

/// Value samples of exps + sampled part on the grid.
std::vector<cplx> samples(const ColumnGrid& g, const Column& c);
cplx value_at(const ColumnGrid& g, const Column& c, int i);

/// Finite-difference weights (Fornberg) for the m-th derivative at x0 over nodes.
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);
/// Fourth-order first derivative of samples (central inside, one-sided at ends).
std::vector<cplx> fd_derivative(const ColumnGrid& g, const std::vector<cplx>& v);

/// Jets of the sampled part extended by finite differences up to order d.
std::vector<std::vector<cplx>> jet_upto(const ColumnGrid& g, const Column& c, int d);

/// sum_d poly[d] d^d/dx^d applied to the column; exact on the exponential part.
Column apply_derivative_poly(const ColumnGrid& g, const Column& c, const std::vector<cplx>& poly);

/// d^j/dx^j at x = 0.
cplx trace(const ColumnGrid& g, const Column& c, int j);

/// Bounded solution of (-i d/dx - rho) v = c, Im rho < 0, integrated from Ln down.
Column causal_resolvent(const ColumnGrid& g, cplx rho, const Column& c);
/// Solution of (-i d/dx - rho) v = c with v(0) = 0, Im rho > 0, integrated upward.
Column anticausal_resolvent(const ColumnGrid& g, cplx rho, const Column& c);

/// int_0^Ln |c|^2: exact Gram for the exponential part, Simpson for the rest.
double l2_norm_sq(const ColumnGrid& g, const Column& c);

/// (e^z - 1)/z and (e^z (z - 1) + 1)/z^2 with series near zero.
cplx phi1(cplx z);
cplx phi2(cplx z);

}  // namespace maxreg
