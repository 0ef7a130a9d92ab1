#include "maxreg/boundary.hpp"
#include "maxreg/certify.hpp"
#include "maxreg/chg.hpp"
#include "maxreg/errors.hpp"
#include "maxreg/order_io.hpp"
#include "maxreg/symbol.hpp"
#include "maxreg/symbol_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace maxreg;

namespace {

constexpr cplx I{0.0, 1.0};

Monomial radial(cplx c, int i, int r) {
  Monomial m;
  m.coeff = c;
  m.tau_power = i;
  m.radial_power = r;
  return m;
}

Monomial full(cplx c, int i, std::vector<int> alpha) {
  Monomial m;
  m.coeff = c;
  m.tau_power = i;
  m.alpha = std::move(alpha);
  return m;
}

std::set<std::pair<Rational, Rational>> point_set(const std::vector<QPoint>& v) {
  std::set<std::pair<Rational, Rational>> s;
  for (const auto& p : v) s.insert({p.r, p.s});
  return s;
}

GridSpec small_grid() {
  GridSpec g;
  g.n_tau = 24;
  g.n_xi = 24;
  return g;
}

}  // namespace

TEST(ExponentSet, Determinant) {
  EXPECT_EQ(point_set(exponent_set(chg::determinant_poly(1))),
            (std::set<std::pair<Rational, Rational>>{{Rational(4), Rational(0)}, {Rational(2), Rational(1)}, {Rational(0), Rational(1)}}));
  EXPECT_EQ(point_set(exponent_set(chg::determinant_poly(2))), point_set(exponent_set(chg::determinant_poly(1))));
}

TEST(ExponentSet, TrivialSymbols) {
  EXPECT_EQ(point_set(exponent_set(PolySymbol(1, true, {radial(1.0, 0, 0)}))),
            (std::set<std::pair<Rational, Rational>>{{Rational(0), Rational(0)}}));
  EXPECT_EQ(point_set(exponent_set(PolySymbol(1, true, {radial(I, 1, 0)}))),
            (std::set<std::pair<Rational, Rational>>{{Rational(0), Rational(1)}}));
}

TEST(ExponentSet, ProductIsMinkowskiSum) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> deg(0, 3), coef(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Monomial> a, b;
    for (int k = 0; k < 3; ++k) a.push_back(full(cplx(coef(rng), 0), deg(rng), {deg(rng), deg(rng)}));
    for (int k = 0; k < 3; ++k) b.push_back(full(cplx(coef(rng), 0), deg(rng), {deg(rng), deg(rng)}));
    const PolySymbol pa(2, false, a), pb(2, false, b);
    // positive coefficients cannot cancel, so the brute-force expansion is exact
    std::map<std::tuple<int, int, int>, double> prod;
    for (const auto& x : pa.monomials())
      for (const auto& y : pb.monomials())
        prod[{x.tau_power + y.tau_power, x.alpha[0] + y.alpha[0], x.alpha[1] + y.alpha[1]}] += x.coeff.real() * y.coeff.real();
    std::set<std::pair<Rational, Rational>> expect;
    for (const auto& [k, v] : prod) expect.insert({Rational(std::get<1>(k) + std::get<2>(k)), Rational(std::get<0>(k))});
    EXPECT_EQ(point_set(exponent_set(pa * pb)), expect);
  }
}

TEST(Eval, DeterminantAtUnitPoint) {
  const double xi[1] = {1.0};
  const cplx v = chg::determinant_poly(1)(1.0, xi);
  EXPECT_NEAR(std::abs(v - cplx(1.0, 2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(chg::symbols().D.at(1.0, 1.0) - cplx(1.0, 2.0)), 0.0, 1e-15);
}

TEST(Eval, OffDiagonalEntryIsXiSquared) {
  const auto& L = chg::symbols().L;
  for (double t : {-3.0, 0.5, 20.0})
    for (double x : {0.0, 0.3, 4.0}) EXPECT_NEAR(std::abs(L(0, 1).at(t, x) - x * x), 0.0, 1e-14);
}

TEST(Eval, ZeroPolynomial) {
  const double xi[1] = {2.0};
  EXPECT_EQ(PolySymbol(1, true, {}).operator()(3.0, xi), cplx(0.0));
  EXPECT_EQ(PolySymbol(1, true, {radial(0.0, 2, 2)}).monomials().size(), 0u);
}

TEST(Eval, OscillatoryOnlyRejectsZeroTau) {
  EXPECT_THROW(chg::d1_plus_symbol().at(0.0, 1.0), DomainError);
}

TEST(Determinant, ChgDeterminantIsD) {
  const auto& s = chg::symbols();
  const SymbolFn d = det(s.L);
  for (double t : {-7.0, -0.4, 1.0, 33.0})
    for (double x : {0.0, 0.2, 1.0, 5.0}) EXPECT_NEAR(std::abs(d.at(t, x) - s.D.at(t, x)), 0.0, 1e-12 * (1 + std::abs(s.D.at(t, x))));
}

TEST(Determinant, AdjugateEntries) {
  const MatrixSymbol adj = adjugate(chg::symbols().L);
  for (double t : {-2.0, 3.0})
    for (double x : {0.0, 1.5}) {
      EXPECT_NEAR(std::abs(adj(0, 0).at(t, x) - 1.0), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(adj(0, 1).at(t, x) + x * x), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(adj(1, 0).at(t, x) - (I * t + x * x)), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(adj(1, 1).at(t, x) - I * t), 0.0, 1e-14);
    }
}

TEST(Determinant, Identity) {
  const auto id = MatrixSymbol::identity(3);
  EXPECT_EQ(det(id).at(2.0, 1.0), cplx(1.0));
  const auto adj = adjugate(id);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(adj(i, j).at(2.0, 1.0), cplx(i == j ? 1.0 : 0.0));
}

TEST(Determinant, AdjugateIdentityOnRandomPoints) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto bc = build_extended_matrix(neumann_pair_13(), 0, OrderFunction());
  for (const MatrixSymbol* m : {&chg::symbols().L, &bc.matrix}) {
    const MatrixSymbol adj = adjugate(*m);
    const int n = m->size();
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const double tau = std::copysign(std::pow(10.0, 3.0 * std::abs(u(rng))), u(rng));
      const double xi = std::pow(10.0, 2.0 * u(rng));
      const auto a = m->eval_at(tau, xi), b = adj.eval_at(tau, xi);
      const cplx d = laplace_det(a, n);
      double err = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          cplx s = 0.0;
          for (int k = 0; k < n; ++k) s += a[static_cast<std::size_t>(i * n + k)] * b[static_cast<std::size_t>(k * n + j)];
          err = std::max(err, std::abs(s - (i == j ? d : 0.0)));
        }
      worst = std::max(worst, err / (1.0 + std::abs(d)));
    }
    EXPECT_LT(worst, 1e-10);
  }
}

TEST(Determinant, AdjugateOrderFunctions) {
  const auto& L = chg::symbols().L;
  const MatrixSymbol adj = adjugate(L);
  ASSERT_TRUE(adj.has_orders());
  // S_i = -t_i, T_j = delta - s_j
  for (int i = 0; i < 2; ++i) EXPECT_EQ(adj.row_orders()[i], of_sub(OrderFunctionDiff(), L.col_orders()[i]));
  for (int j = 0; j < 2; ++j) EXPECT_EQ(adj.col_orders()[j], of_sub(L.delta(), L.row_orders()[j]));
}

TEST(UpperBound, DeterminantBelowTwo) {
  const auto& s = chg::symbols();
  const auto rep = upper_bound_certify(s.D, OrderFunctionDiff(s.mu_D), GridSpec{});
  EXPECT_TRUE(rep.pass);
  EXPECT_LE(rep.sup_ratio, 2.0);
}

TEST(UpperBound, ConstantOne) {
  const auto rep = upper_bound_certify(sym::one(), OrderFunctionDiff(), small_grid());
  EXPECT_TRUE(rep.pass);
  EXPECT_DOUBLE_EQ(rep.sup_ratio, 1.0);
}

TEST(UpperBound, OffDiagonalEntryAgainstRowPlusColumn) {
  const auto& L = chg::symbols().L;
  const auto mu = of_add(L.row_orders()[1], L.col_orders()[0]);  // max{2, gamma}
  const auto rep = upper_bound_certify(L(1, 0), mu, GridSpec{});
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(std::isfinite(rep.sup_ratio));
}

TEST(UpperBound, GrowthIsDetected) {
  // |xi|^4 against mu = 2 grows along the xi axis
  const auto rep = upper_bound_certify(sym::xi_sq() * sym::xi_sq(), OrderFunctionDiff::constant(Rational(2)), GridSpec{});
  EXPECT_FALSE(rep.pass);
  EXPECT_TRUE(rep.witness.found);
}

TEST(UpperBound, NonFiniteValueRaises) {
  const SymbolFn bad = SymbolFn::radial([](double, double x) { return x > 1.0 ? cplx(NAN, 0.0) : cplx(1.0); }, "bad");
  EXPECT_THROW(upper_bound_certify(bad, OrderFunctionDiff(), small_grid()), EvaluationError);
}

TEST(Ellipticity, DeterminantConstantHoldsPointwise) {
  const auto& s = chg::symbols();
  for (double lambda : {0.25, 1.0, 3.0}) {
    GridSpec g;
    g.lambda = lambda;
    const double floor = std::min(1.0, lambda) / (2.0 * std::sqrt(3.0));
    const auto rep = ellipticity_certify(s.D, OrderFunctionDiff(s.mu_D), lambda, g, floor);
    EXPECT_TRUE(rep.pass) << "lambda " << lambda;
    EXPECT_EQ(rep.violations, 0u);
    EXPECT_GE(rep.inf_ratio, floor);
    // zero-tolerance re-check by direct evaluation
    for (double t : g.taus())
      for (double x : g.xis()) ASSERT_GE(std::abs(s.D.at(t, x)), floor * weight_eval(OrderFunctionDiff(s.mu_D), t, x));
  }
}

TEST(Ellipticity, ConstantOne) {
  const auto rep = ellipticity_certify(sym::one(), OrderFunctionDiff(), 0.5, small_grid());
  EXPECT_TRUE(rep.pass);
  EXPECT_DOUBLE_EQ(rep.inf_ratio, 1.0);
}

TEST(Ellipticity, TimeDerivativeAgainstIdentity) {
  const auto rep = ellipticity_certify(sym::i_tau(), OrderFunctionDiff(OrderFunction::identity()), 1.0, GridSpec{}, 0.5);
  EXPECT_TRUE(rep.pass);
  EXPECT_GE(rep.inf_ratio, 0.5);
}

TEST(Ellipticity, MonotoneInGrid) {
  const auto& s = chg::symbols();
  GridSpec small = small_grid(), big = small_grid();
  big.tau_max = 1e8;
  big.xi_max = 1e5;
  big.lambda = 0.5;
  big.n_tau = 40;
  big.n_xi = 40;
  small.lambda = 1.0;
  const auto a = ellipticity_certify(s.D, OrderFunctionDiff(s.mu_D), 1.0, small);
  const auto b = ellipticity_certify(s.D, OrderFunctionDiff(s.mu_D), 0.5, big);
  EXPECT_LE(b.inf_ratio, a.inf_ratio + 1e-15);
  const auto ua = upper_bound_certify(s.D, OrderFunctionDiff(s.mu_D), small);
  const auto ub = upper_bound_certify(s.D, OrderFunctionDiff(s.mu_D), big);
  EXPECT_GE(ub.sup_ratio, ua.sup_ratio - 1e-15);
}

TEST(MixedOrder, ChgMatrixPasses) {
  const auto rep = mixed_order_certify(chg::symbols().L, GridSpec{});
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.delta, OrderFunctionDiff(chg::symbols().mu_D));
  EXPECT_EQ(rep.delta.pointwise(), parse_order_expr("2*o(1/2) + 2").pointwise());
}

TEST(MixedOrder, IdentityPasses) {
  auto id = MatrixSymbol::identity(2);
  id.with_orders({OrderFunctionDiff(), OrderFunctionDiff()}, {OrderFunctionDiff(), OrderFunctionDiff()});
  const auto rep = mixed_order_certify(id, small_grid());
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.delta, OrderFunctionDiff());
}

TEST(MixedOrder, DirichletExtendedMatrixFailsOnDeterminant) {
  const auto b = build_extended_matrix(dirichlet_pair(), 0, OrderFunction());
  const auto rep = mixed_order_certify(b.matrix, GridSpec{});
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.determinant.pass);
}

TEST(SymbolIo, PolynomialRoundTrip) {
  const auto p = chg::determinant_poly(1);
  const auto q = poly_from_json(to_json(p));
  const double xi[1] = {0.7};
  EXPECT_EQ(p(2.0, xi), q(2.0, xi));
  EXPECT_THROW(poly_from_json(json::parse(R"({"n":1,"radial":true,"monomials":[]})")), ParseError);
}
