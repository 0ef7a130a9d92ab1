#pragma once

#include "maxreg/certify.hpp"
#include "maxreg/symbol.hpp"

namespace maxreg::chg {

/// D = i tau + |xi|^2 (i tau + |xi|^2), the CHG matrix L, its adjugate, and
/// the order functions mu_D = 2 o(1/2) + 2, mu_pm = o(1/2) + 1.
struct Symbols {
  SymbolFn D;
  MatrixSymbol L{1, {SymbolFn()}};
  MatrixSymbol adjL{1, {SymbolFn()}};
  OrderFunction mu_D;
  OrderFunction mu_plus;
  OrderFunction mu_minus;
};

const Symbols& symbols();

PolySymbol determinant_poly(int n = 1);

/// D(tau, xi', xi_n) with q = |xi'|^2.
cplx eval_D(double tau, double q, cplx xi_n);

/// Both solutions of s^2 + i tau s + i tau = 0, labelled by the sign in front of
/// the inner square root. Z(tau) = 2 s_minus.
struct InnerRoots {
  cplx s_plus;
  cplx s_minus;
};
InnerRoots inner_roots(double tau);

struct RootQuadruple {
  cplx rho1_plus, rho2_plus, rho1_minus, rho2_minus;
};

/// Principal-branch roots of D(tau, xi', .) classified by half plane.
RootQuadruple roots(double tau, double xi_prime_norm);

struct FactorCoeffs {
  cplx d0_plus, d1_plus, d2_plus{-1.0};
  cplx d0_minus, d1_minus, d2_minus{-1.0};
};

FactorCoeffs dplus_coeffs(double tau, double xi_prime_norm);
FactorCoeffs coeffs_from_roots(const RootQuadruple& r);

/// D^+(xi_n) = -(i xi_n)^2 + d1 (i xi_n) + d0, likewise D^-.
cplx eval_dplus(const FactorCoeffs& c, cplx xi_n);
cplx eval_dminus(const FactorCoeffs& c, cplx xi_n);

/// Symbols on (tau, |xi'|) for the boundary algebra.
SymbolFn d0_plus_symbol();
SymbolFn d1_plus_symbol();

/// max |D - D^+ D^-| / (1 + |D|) over the grid and the given xi_n samples.
double factor_residual(const GridSpec& grid, const std::vector<double>& xi_n_samples);

struct RootBoundsReport {
  CertReport rho1_lower, rho1_upper, rho2_lower, rho2_upper;
  double re_z_at_tau_max = 0.0;
  bool pass = false;
  json to_json() const;
};

RootBoundsReport root_bounds_check(double lambda, const GridSpec& grid);

}  // namespace maxreg::chg
