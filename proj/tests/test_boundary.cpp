#include "maxreg/boundary.hpp"
#include "maxreg/errors.hpp"
#include "maxreg/order_io.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace maxreg;

namespace {

constexpr cplx I{0.0, 1.0};

const std::vector<std::pair<double, double>>& points() {
  static const std::vector<std::pair<double, double>> p = [] {
    std::vector<std::pair<double, double>> out;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const double tau = std::exp(std::log(1e4) * u(rng)) * (u(rng) < 0.5 ? -1.0 : 1.0);
      const double xi = i % 10 == 0 ? 0.0 : std::exp(std::log(1e-2) + std::log(1e4) * u(rng));
      out.push_back({tau, xi});
    }
    return out;
  }();
  return p;
}

// B(w) reduced modulo -w^2 + d1 w + d0 with w = i z: returns (a, c) for a + c w.
std::pair<cplx, cplx> remainder(const BoundaryOperator& op, const chg::FactorCoeffs& f, double tau, double xi) {
  const cplx d0 = f.d0_plus, d1 = f.d1_plus;
  const cplx w_pow[4][2] = {{1.0, 0.0}, {0.0, 1.0}, {d0, d1}, {d1 * d0, d1 * d1 + d0}};
  cplx a = 0.0, c = 0.0;
  for (int j = 0; j < 4; ++j) {
    const cplx b = op.coeff(j, tau, xi);
    a += b * w_pow[j][0];
    c += b * w_pow[j][1];
  }
  return {a, c};
}

cplx remainder_det(const BoundaryCondition& bc, double tau, double xi) {
  const auto f = chg::dplus_coeffs(tau, xi);
  const auto [a0, c0] = remainder(bc.ops[0], f, tau, xi);
  const auto [a1, c1] = remainder(bc.ops[1], f, tau, xi);
  return a0 * c1 - a1 * c0;
}

OrderFunction nu_zero() { return OrderFunction(); }

}  // namespace

TEST(ExtendedMatrix, NeumannEntries) {
  const auto b = build_extended_matrix(neumann_pair_13(), 0, nu_zero());
  ASSERT_EQ(b.matrix.size(), 4);
  for (const auto& [tau, xi] : points()) {
    const auto f = chg::dplus_coeffs(tau, xi);
    const cplx want[16] = {0, 1, 0, 0, 0, 0, 0, 1, f.d0_plus, f.d1_plus, -1.0, 0, 0, f.d0_plus, f.d1_plus, -1.0};
    const auto got = b.matrix.eval_at(tau, xi);
    for (int k = 0; k < 16; ++k) ASSERT_NEAR(std::abs(got[k] - want[k]), 0.0, 1e-12 * (1 + std::abs(want[k])));
  }
}

TEST(ExtendedMatrix, ColumnOrdersAreTraceOrders) {
  const auto b = build_extended_matrix(neumann_pair_13(), 0, nu_zero());
  const char* expected[4] = {"2*o(1/2) + 3/2", "2*o(1/2) + 1/2", "3/2*o(1/2)", "1/2*o(1/2)"};
  for (int j = 0; j < 4; ++j)
    EXPECT_EQ(b.matrix.col_orders()[j].pointwise(), parse_order_expr(expected[j]).pointwise()) << j;
}

TEST(ExtendedMatrix, RowOrdersForNeumann) {
  const auto b = build_extended_matrix(neumann_pair_13(), 0, nu_zero());
  // boundary rows carry minus the target order of the leading trace
  EXPECT_EQ(b.matrix.row_orders()[0], of_sub(OrderFunctionDiff(), b.matrix.col_orders()[1]));
  EXPECT_EQ(b.matrix.row_orders()[1], of_sub(OrderFunctionDiff(), b.matrix.col_orders()[3]));
}

TEST(ExtendedMatrix, WrongSizeRejected) {
  EXPECT_THROW(build_extended_matrix(neumann_pair_13(), 1, nu_zero()), InvalidInput);
  EXPECT_THROW(build_extended_matrix(neumann_pair_13(), -1, nu_zero()), InvalidInput);
}

TEST(ExtendedMatrix, BandStructure) {
  const auto b = build_extended_matrix(dirichlet_pair(), 1, parse_order_expr("1").pointwise());
  ASSERT_EQ(b.matrix.size(), 5);
  const auto e = b.matrix.eval_at(2.0, 0.5);
  for (int i = 2; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const int k = j + 2 - i;
      if (k < 0 || k > 2) EXPECT_EQ(e[i * 5 + j], cplx(0.0)) << i << ',' << j;
    }
}

TEST(Lopatinskii, NeumannDeterminant) {
  const auto b = build_extended_matrix(neumann_pair_13(), 0, nu_zero());
  const SymbolFn d = det(b.matrix);
  for (const auto& [tau, xi] : points()) {
    const auto f = chg::dplus_coeffs(tau, xi);
    const cplx want = -f.d0_plus * f.d1_plus;
    ASSERT_NEAR(std::abs(d.at(tau, xi) - want), 0.0, 1e-12 * std::abs(want)) << tau << ' ' << xi;
  }
  const auto rep = lopatinskii_check(b, GridSpec{});
  EXPECT_TRUE(rep.pass);
  EXPECT_GT(rep.min_abs_det, 0.0);
}

TEST(Lopatinskii, DirichletDeterminantIsOne) {
  const auto b = build_extended_matrix(dirichlet_pair(), 0, nu_zero());
  const SymbolFn d = det(b.matrix);
  for (const auto& [tau, xi] : points()) ASSERT_NEAR(std::abs(d.at(tau, xi) - 1.0), 0.0, 1e-12);
  const auto rep = lopatinskii_check(b, GridSpec{});
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.min_abs_det, 1.0, 1e-12);
}

TEST(Lopatinskii, ZeroOperatorsFail) {
  BoundaryCondition bc{"empty", {}};
  const auto rep = lopatinskii_check(build_extended_matrix(bc, 0, nu_zero()), GridSpec{});
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.min_abs_det, 0.0);
}

TEST(Lopatinskii, DuplicatedTraceFails) {
  BoundaryCondition bc{"tr0-twice", {BoundaryOperator::trace(0), BoundaryOperator::trace(0)}};
  EXPECT_FALSE(lopatinskii_check(build_extended_matrix(bc, 0, nu_zero()), GridSpec{}).pass);
}

TEST(Lopatinskii, DeterminantEqualsRemainderDeterminant) {
  for (const auto& bc : builtin_boundary_conditions()) {
    const SymbolFn d = det(build_extended_matrix(bc, 0, nu_zero()).matrix);
    for (const auto& [tau, xi] : points()) {
      const cplx want = remainder_det(bc, tau, xi);
      ASSERT_NEAR(std::abs(d.at(tau, xi) - want), 0.0, 1e-11 * (1 + std::abs(want))) << bc.name;
    }
  }
}

TEST(Lopatinskii, RootMatrixFactorsThroughRemainder) {
  // B_i(rho_k) = a_i + c_i (i rho_k), so det M = det R (i rho_2 - i rho_1)
  for (const auto& bc : builtin_boundary_conditions()) {
    for (const auto& [tau, xi] : points()) {
      const auto m = boundary_root_matrix(bc, tau, xi);
      const auto r = chg::roots(tau, xi);
      const cplx want = remainder_det(bc, tau, xi) * (I * r.rho2_plus - I * r.rho1_plus);
      const cplx got = m[0] * m[3] - m[1] * m[2];
      ASSERT_NEAR(std::abs(got - want), 0.0, 1e-10 * (1 + std::abs(want))) << bc.name;
    }
  }
}

TEST(Lopatinskii, ReducedSystemMatchesExtendedSolve) {
  // Solve the extended system for the traces and compare with the combination of the
  // two decaying exponentials that satisfies the boundary pair.
  const auto bc = neumann_pair_13();
  const auto b = build_extended_matrix(bc, 0, nu_zero());
  const cplx g[2] = {{0.3, -1.1}, {2.0, 0.4}};
  for (const auto& [tau, xi] : points()) {
    const auto e = b.matrix.eval_at(tau, xi);
    Eigen::Matrix4cd A;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) A(i, j) = e[i * 4 + j];
    Eigen::Vector4cd rhs(g[0], g[1], 0.0, 0.0);
    const Eigen::Vector4cd t = A.partialPivLu().solve(rhs);

    const auto m = boundary_root_matrix(bc, tau, xi);
    Eigen::Matrix2cd M;
    M << m[0], m[1], m[2], m[3];
    const Eigen::Vector2cd c = M.partialPivLu().solve(Eigen::Vector2cd(g[0], g[1]));
    const auto r = chg::roots(tau, xi);
    const cplx rho[2] = {r.rho1_plus, r.rho2_plus};
    for (int j = 0; j < 4; ++j) {
      cplx v = 0.0;
      for (int k = 0; k < 2; ++k) v += c(k) * std::pow(I * rho[k], j);
      ASSERT_NEAR(std::abs(v - t(j)), 0.0, 1e-8 * (1 + std::abs(t(j)))) << tau << ' ' << xi << ' ' << j;
    }
  }
}

TEST(Complementing, NeumannPasses) {
  const auto rep = complementing_check(neumann_pair_13(), nu_zero(), GridSpec{});
  EXPECT_TRUE(rep.mixed.pass);
  EXPECT_EQ(rep.mixed.delta.pointwise(), parse_order_expr("2*o(1/2) + 1").pointwise());
  for (const auto& e : rep.mixed.entries) EXPECT_TRUE(e.pass) << e.subject;
}

TEST(Complementing, NeumannWithExtraOrderPasses) {
  const auto rep = complementing_check(neumann_pair_13(), parse_order_expr("1").pointwise(), GridSpec{});
  EXPECT_EQ(rep.extended.m, 1);
  EXPECT_EQ(rep.extended.matrix.size(), 5);
  EXPECT_TRUE(rep.mixed.pass);
  const SymbolFn d = det(rep.extended.matrix);
  for (const auto& [tau, xi] : points()) {
    const auto f = chg::dplus_coeffs(tau, xi);
    const cplx want = f.d0_plus * f.d1_plus;
    ASSERT_NEAR(std::abs(std::abs(d.at(tau, xi)) - std::abs(want)), 0.0, 1e-10 * std::abs(want));
  }
}

TEST(Complementing, DirichletFailsWithWitness) {
  const auto rep = complementing_check(dirichlet_pair(), nu_zero(), GridSpec{});
  EXPECT_FALSE(rep.mixed.pass);
  EXPECT_FALSE(rep.mixed.determinant.pass);
  EXPECT_TRUE(rep.mixed.determinant.witness.found);
  EXPECT_LT(rep.mixed.determinant.witness.exponent, -kWitnessSlope);
  EXPECT_FALSE(rep.mixed.determinant.witness.ray.empty());
  const auto j = rep.to_json();
  EXPECT_FALSE(j.at("pass").get<bool>());
}

TEST(Complementing, ImpliesLopatinskii) {
  GridSpec g;
  g.n_tau = 24;
  g.n_xi = 24;
  for (const auto& bc : builtin_boundary_conditions()) {
    const auto c = complementing_check(bc, nu_zero(), g);
    const auto ls = lopatinskii_check(c.extended, g);
    if (c.mixed.pass) EXPECT_TRUE(ls.pass) << bc.name;
  }
}

TEST(Catalog, BuiltinsAndLookup) {
  const auto all = builtin_boundary_conditions();
  EXPECT_GE(all.size(), 2u);
  for (const auto& bc : all) EXPECT_EQ(boundary_condition(bc.name).name, bc.name);
  EXPECT_EQ(boundary_condition("neumann").name, "neumann13");
  EXPECT_THROW(boundary_condition("robin"), InvalidInput);
  EXPECT_THROW(BoundaryOperator::trace(4), InvalidInput);
}

TEST(Catalog, DefaultTargetOrders) {
  const auto bc = neumann_pair_13();
  const OrderFunction top = chg::symbols().mu_D;
  EXPECT_EQ(target_order(bc.ops[0], nu_zero()).pointwise(), trace_order_function(top, 1));
  EXPECT_EQ(target_order(bc.ops[1], nu_zero()).pointwise(), trace_order_function(top, 3));
  BoundaryOperator custom = BoundaryOperator::trace(0);
  custom.chi = parse_order_expr("7");
  EXPECT_EQ(target_order(custom, nu_zero()), parse_order_expr("7"));
}

TEST(Catalog, OperatorSymbol) {
  BoundaryOperator op;
  op.coeffs[1] = sym::one();
  op.coeffs[3] = SymbolFn::constant(2.0);
  EXPECT_EQ(op.leading(), 3);
  const cplx z{0.4, 1.3};
  EXPECT_NEAR(std::abs(op.symbol(1.0, 0.0, z) - (I * z + 2.0 * std::pow(I * z, 3))), 0.0, 1e-14);
  EXPECT_EQ(BoundaryOperator().leading(), -1);
}

TEST(Catalog, FileRoundTrip) {
  const json j = json::parse(R"({"name": "file13", "ops": [{"coeffs": [0, "1", 0, 0]}, {"coeffs": ["0", 0, 0, "1"]}]})");
  const auto f = boundary_from_json(j);
  EXPECT_EQ(f.bc.name, "file13");
  EXPECT_EQ(f.bc.ops[0].leading(), 1);
  EXPECT_EQ(f.bc.ops[1].leading(), 3);
  EXPECT_THROW(boundary_from_json(json::parse(R"({"ops": [{"coeffs": [0, 0, 0, 0]}]})")), ParseError);
}
