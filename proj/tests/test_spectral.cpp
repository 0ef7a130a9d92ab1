#include "maxreg/chg.hpp"
#include "maxreg/errors.hpp"
#include "maxreg/experiments.hpp"
#include "maxreg/order_io.hpp"
#include "maxreg/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace maxreg;

namespace {

constexpr cplx I{0.0, 1.0};

TorusGrid small_grid(int n = 1) {
  TorusGrid g;
  g.K = 8;
  g.n = n;
  g.N = n == 1 ? 128 : 32;
  g.Lx = n == 1 ? 2 * 3.14159265358979323846 * 16.0 : 40.0;
  return g;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double max_abs(const Field& a) {
  double m = 0.0;
  for (const cplx& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

SymbolFn weight_symbol(const OrderFunctionDiff& mu, double sign) {
  return SymbolFn::radial([mu, sign](double tau, double xi) { return cplx(std::pow(smooth_weight_eval(mu, tau, xi), sign)); });
}

}  // namespace

TEST(Projection, IdempotentAndOscillatory) {
  Field f(small_grid());
  for (std::size_t i = 0; i < f.data().size(); ++i) f.data()[i] = cplx(std::sin(0.1 * i), std::cos(0.3 * i));
  EXPECT_FALSE(f.oscillatory());
  const Field p = project_oscillatory(f);
  EXPECT_TRUE(p.oscillatory());
  EXPECT_EQ(max_diff(project_oscillatory(p), p), 0.0);
  EXPECT_THROW(apply_multiplier(f, sym::one()), InvalidInput);
}

TEST(Projection, CommutesWithMultipliers) {
  const Field f = random_field(small_grid(), 3);
  const Field a = project_oscillatory(apply_multiplier(f, chg::symbols().D));
  const Field b = apply_multiplier(project_oscillatory(f), chg::symbols().D);
  EXPECT_LT(max_diff(a, b), 1e-12 * max_abs(a));
}

TEST(Multipliers, TimeDerivative) {
  const Field f = random_field(small_grid(), 4);
  const Field d = apply_multiplier(f, sym::i_tau());
  const auto& g = f.grid();
  for (int k = -g.K; k <= g.K; ++k)
    for (std::size_t p = 0; p < g.slab(); ++p)
      ASSERT_NEAR(std::abs(d.slab(k)[p] - I * g.omega(k) * f.slab(k)[p]), 0.0, 1e-12 * (1 + std::abs(f.slab(k)[p])) * g.K);
}

TEST(Multipliers, Composition) {
  const Field f = random_field(small_grid(), 5);
  const Field two = apply_multiplier(apply_multiplier(f, sym::xi_sq()), sym::i_tau());
  const Field one = apply_multiplier(f, sym::i_tau() * sym::xi_sq());
  EXPECT_LT(max_diff(one, two), 1e-12 * max_abs(one));
}

TEST(Multipliers, WeightInverse) {
  const auto mu = parse_order_expr("2*o(1/2) + 2");
  const Field f = random_field(small_grid(), 6);
  const Field back = apply_multiplier(apply_multiplier(f, weight_symbol(mu, 1.0)), weight_symbol(mu, -1.0));
  EXPECT_LT(max_diff(back, f), 1e-12 * max_abs(f));
}

TEST(Norms, ZeroAndSingleMode) {
  const auto g = small_grid();
  EXPECT_EQ(norm_weighted(Field(g), OrderFunctionDiff()), 0.0);
  // a single space-time exponential of unit amplitude has ||.||^2 = T Lx
  Field f(g);
  const int k = 3, j = 5;
  for (int p = 0; p < g.N; ++p) f.slab(k)[p] = std::exp(I * g.wavenumber(j) * g.x_of(p));
  EXPECT_NEAR(norm_weighted(f, OrderFunctionDiff()), std::sqrt(g.T * g.Lx), 1e-12 * std::sqrt(g.T * g.Lx));
  const auto mu = parse_order_expr("o(1/2) + 1");
  const double w = smooth_weight_eval(mu, g.omega(k), std::abs(g.wavenumber(j)));
  EXPECT_NEAR(norm_weighted(f, mu), w * std::sqrt(g.T * g.Lx), 1e-12 * w * std::sqrt(g.T * g.Lx));
}

TEST(Norms, PlancherelAgainstQuadrature) {
  for (int n : {1, 2}) {
    const Field f = random_field(small_grid(n), 7);
    const double spectral = norm_weighted(f, OrderFunctionDiff());
    const double direct = l2_quadrature(f, 2 * f.grid().K + 3);
    EXPECT_NEAR(spectral, direct, 1e-12 * direct) << n;
  }
  EXPECT_THROW(l2_quadrature(random_field(small_grid(), 1), 4), InvalidInput);
}

TEST(Norms, WeightLiftIsIsometric) {
  const auto mu = parse_order_expr("2*o(1/2) + 2");
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const Field f = random_field(small_grid(), s);
    const double lifted = norm_weighted(apply_multiplier(f, weight_symbol(mu, 1.0)), OrderFunctionDiff());
    EXPECT_NEAR(lifted, norm_weighted(f, mu), 1e-12 * lifted);
  }
}

TEST(WholeSpace, ScalarManufactured) {
  for (std::uint64_t s : {1u, 2u, 3u}) {
    const auto r = whole_scalar_manufactured(small_grid(), s);
    EXPECT_LT(r.error, 1e-9);
    EXPECT_LT(r.residual, 1e-9);
  }
  EXPECT_LT(whole_scalar_manufactured(small_grid(2), 9).error, 1e-9);
}

TEST(WholeSpace, SystemManufactured) {
  for (std::uint64_t s : {1u, 2u}) EXPECT_LT(whole_system_manufactured(small_grid(), s).error, 1e-9);
  EXPECT_LT(whole_system_manufactured(small_grid(2), 4).error, 1e-9);
}

TEST(WholeSpace, SystemMatchesDeterminantRoute) {
  // u1 = (adj L f)_1 / D solved as a scalar problem
  const auto& cs = chg::symbols();
  const Field f1 = random_field(small_grid(), 11), f2 = random_field(small_grid(), 12);
  const auto u = solve_whole_system(cs.L, {f1, f2});
  Field rhs = apply_multiplier(f1, cs.adjL(0, 0));
  const Field other = apply_multiplier(f2, cs.adjL(0, 1));
  for (std::size_t i = 0; i < rhs.data().size(); ++i) rhs.data()[i] += other.data()[i];
  const Field u1 = solve_whole_scalar(cs.D, rhs);
  EXPECT_LT(max_diff(u[0], u1), 1e-10 * max_abs(u1));
}

TEST(WholeSpace, SingularSymbolReported) {
  const Field f = random_field(small_grid(), 2);
  EXPECT_THROW(solve_whole_scalar(sym::xi_sq(), f), SingularSymbol);
  EXPECT_THROW(solve_whole_system(MatrixSymbol(2, {sym::one(), sym::one(), sym::one(), sym::one()}), {f, f}), SingularSymbol);
  EXPECT_THROW(solve_whole_system(chg::symbols().L, {f}), InvalidInput);
}

TEST(FieldIo, RoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "maxreg_field_roundtrip.bin";
  const Field f = random_field(small_grid(2), 8);
  write_field(path.string(), f);
  const Field g = read_field(path.string());
  EXPECT_EQ(g.grid().K, f.grid().K);
  EXPECT_EQ(g.grid().N, f.grid().N);
  EXPECT_EQ(g.grid().n, 2);
  EXPECT_LT(max_diff(f, g), 1e-6 * max_abs(f));
  std::filesystem::remove(path);
  EXPECT_THROW(read_field(path.string()), InvalidInput);
}
