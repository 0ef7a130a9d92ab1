#include "maxreg/chg.hpp"

#include "maxreg/errors.hpp"

#include <cmath>

namespace maxreg::chg {

namespace {

constexpr cplx I{0.0, 1.0};

OrderFunction o_half() { return OrderFunction::elementary(Rational(1, 2)); }

Symbols build() {
  Symbols s;
  s.mu_D = o_half() * Rational(2) + OrderFunction::constant(Rational(2));
  s.mu_plus = o_half() + OrderFunction::constant(Rational(1));
  s.mu_minus = s.mu_plus;

  SymbolFn itau = sym::i_tau(), xi2 = sym::xi_sq();
  s.L = MatrixSymbol(2, {itau.named("i*tau"), xi2.named("|xi|^2"), (-xi2 - itau).named("-|xi|^2-i*tau"), sym::one()});
  // t1 = max{3, 1+gamma} = 2 o(1/2) + 1, t2 = 2, s1 = 0, s2 = -1
  OrderFunction t1 = o_half() * Rational(2) + OrderFunction::constant(Rational(1));
  s.L.with_orders({OrderFunctionDiff(), OrderFunctionDiff::constant(Rational(-1))},
                  {OrderFunctionDiff(t1), OrderFunctionDiff::constant(Rational(2))});
  s.D = SymbolFn::radial([](double t, double x) {
          const double q = x * x;
          return cplx(0.0, t) + q * cplx(q, t);
        }, "D").with_order(OrderFunctionDiff(s.mu_D));
  s.adjL = MatrixSymbol(2, {sym::one(), (-xi2).named("-|xi|^2"), (xi2 + itau).named("i*tau+|xi|^2"), itau});
  s.adjL.with_orders({of_sub(OrderFunctionDiff(), OrderFunctionDiff(t1)), OrderFunctionDiff::constant(Rational(-2))},
                     {of_sub(OrderFunctionDiff(s.mu_D), OrderFunctionDiff()),
                      of_sub(OrderFunctionDiff(s.mu_D), OrderFunctionDiff::constant(Rational(-1)))});
  return s;
}

}  // namespace

const Symbols& symbols() {
  static const Symbols s = build();
  return s;
}

PolySymbol determinant_poly(int n) {
  std::vector<Monomial> m;
  auto radial = [](cplx c, int i, int r) {
    Monomial x;
    x.coeff = c;
    x.tau_power = i;
    x.radial_power = r;
    return x;
  };
  m.push_back(radial(I, 1, 0));
  m.push_back(radial(I, 1, 2));
  m.push_back(radial(1.0, 0, 4));
  return PolySymbol(n, true, m);
}

cplx eval_D(double tau, double q, cplx xi_n) {
  const cplx w = q + xi_n * xi_n;
  return I * tau + w * (I * tau + w);
}

InnerRoots inner_roots(double tau) {
  const cplx it = I * tau;
  const cplx disc = std::sqrt(cplx(-tau * tau, -4.0 * tau));
  const cplx a = (-it + disc) / 2.0;
  const cplx b = (-it - disc) / 2.0;
  // the product of the two roots is i tau; recover the small one by division
  if (std::abs(a) >= std::abs(b)) return {a, it / a};
  return {it / b, b};
}

RootQuadruple roots(double tau, double xi_prime_norm) {
  if (tau == 0.0) throw DomainError("roots of D need tau != 0");
  if (!(xi_prime_norm >= 0.0)) throw InvalidInput("|xi'| must be nonnegative");
  const double q = xi_prime_norm * xi_prime_norm;
  const auto s = inner_roots(tau);
  const double sg = tau > 0 ? 1.0 : -1.0;
  // rho_(e1,e2) = e1 * sqrt(s_e2 - q); Re has sign e1, Im has sign -e1 e2 sgn(tau)
  const cplx r1 = std::sqrt(s.s_plus - q);
  const cplx r2 = std::sqrt(s.s_minus - q);
  RootQuadruple out;
  out.rho1_minus = sg * r1;
  out.rho2_minus = -sg * r2;
  out.rho1_plus = -out.rho1_minus;
  out.rho2_plus = -out.rho2_minus;
  return out;
}

FactorCoeffs coeffs_from_roots(const RootQuadruple& r) {
  FactorCoeffs c;
  c.d1_plus = I * (r.rho1_plus + r.rho2_plus);
  c.d0_plus = r.rho1_plus * r.rho2_plus;
  c.d1_minus = I * (r.rho1_minus + r.rho2_minus);
  c.d0_minus = r.rho1_minus * r.rho2_minus;
  return c;
}

FactorCoeffs dplus_coeffs(double tau, double xi_prime_norm) { return coeffs_from_roots(roots(tau, xi_prime_norm)); }

cplx eval_dplus(const FactorCoeffs& c, cplx xi_n) {
  const cplx z = I * xi_n;
  return c.d2_plus * z * z + c.d1_plus * z + c.d0_plus;
}

cplx eval_dminus(const FactorCoeffs& c, cplx xi_n) {
  const cplx z = I * xi_n;
  return c.d2_minus * z * z + c.d1_minus * z + c.d0_minus;
}

SymbolFn d0_plus_symbol() {
  return SymbolFn::radial([](double t, double x) { return dplus_coeffs(t, x).d0_plus; }, "d0+", true);
}

SymbolFn d1_plus_symbol() {
  return SymbolFn::radial([](double t, double x) { return dplus_coeffs(t, x).d1_plus; }, "d1+", true);
}

double factor_residual(const GridSpec& grid, const std::vector<double>& xi_n_samples) {
  double worst = 0.0;
  for (double tau : grid.taus()) {
    for (double xp : grid.xis()) {
      const auto c = dplus_coeffs(tau, xp);
      for (double xn : xi_n_samples) {
        const cplx d = eval_D(tau, xp * xp, xn);
        const cplx prod = eval_dplus(c, xn) * eval_dminus(c, xn);
        worst = std::max(worst, std::abs(d - prod) / (1.0 + std::abs(d)));
      }
    }
  }
  return worst;
}

json RootBoundsReport::to_json() const {
  return {{"rho1_lower", rho1_lower.to_json()}, {"rho1_upper", rho1_upper.to_json()},
          {"rho2_lower", rho2_lower.to_json()}, {"rho2_upper", rho2_upper.to_json()},
          {"re_z_at_tau_max", re_z_at_tau_max}, {"pass", pass}};
}

RootBoundsReport root_bounds_check(double lambda, const GridSpec& grid) {
  auto rho1 = SymbolFn::radial([](double t, double x) { return roots(t, x).rho1_plus; }, "rho1+", true);
  auto rho2 = SymbolFn::radial([](double t, double x) { return roots(t, x).rho2_plus; }, "rho2+", true);
  const OrderFunctionDiff oh(o_half());
  const OrderFunctionDiff o0(OrderFunction::elementary(Rational(0)));
  RootBoundsReport r;
  r.rho1_lower = ellipticity_certify(rho1, oh, lambda, grid);
  r.rho1_upper = upper_bound_certify(rho1, oh, grid);
  r.rho2_lower = ellipticity_certify(rho2, o0, lambda, grid);
  r.rho2_upper = upper_bound_certify(rho2, o0, grid);
  r.re_z_at_tau_max = std::abs((2.0 * inner_roots(grid.tau_max).s_minus).real());
  r.pass = r.rho1_lower.pass && r.rho1_upper.pass && r.rho2_lower.pass && r.rho2_upper.pass;
  return r;
}

}  // namespace maxreg::chg
