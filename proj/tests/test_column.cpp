#include "maxreg/column.hpp"
#include "maxreg/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace maxreg;

namespace {

constexpr cplx I{0.0, 1.0};

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<cplx> sample_exp(const ColumnGrid& g, cplx c, cplx sigma) {
  std::vector<cplx> v(static_cast<std::size_t>(g.points()));
  for (int i = 0; i < g.points(); ++i) v[static_cast<std::size_t>(i)] = c * std::exp(I * sigma * g.x(i));
  return v;
}

// sampled e^{i sigma x} pushed through the causal resolvent, error against the exact bounded solution
double causal_error(int Nn, cplx rho, cplx sigma) {
  const ColumnGrid g{30.0, Nn};
  const auto v = causal_resolvent(g, rho, Column::sampled(sample_exp(g, 1.0, sigma)));
  const auto exact = sample_exp(g, 1.0 / (sigma - rho), sigma);
  return max_diff(samples(g, v), exact);
}

double anticausal_error(int Nn, cplx rho, cplx sigma) {
  const ColumnGrid g{30.0, Nn};
  const auto v = anticausal_resolvent(g, rho, Column::sampled(sample_exp(g, 1.0, sigma)));
  auto exact = sample_exp(g, 1.0 / (sigma - rho), sigma);
  const auto hom = sample_exp(g, -1.0 / (sigma - rho), rho);
  for (std::size_t i = 0; i < exact.size(); ++i) exact[i] += hom[i];
  return max_diff(samples(g, v), exact);
}

}  // namespace

TEST(Resolvent, ExactOnExponentials) {
  const ColumnGrid g{16.0, 64};
  const cplx rho{0.7, -1.3}, sigma{-0.4, 0.9};
  const auto v = causal_resolvent(g, rho, Column::exponential({{2.0, sigma}}));
  ASSERT_EQ(v.exps.size(), 1u);
  EXPECT_NEAR(std::abs(v.exps[0].coeff - 2.0 / (sigma - rho)), 0.0, 1e-15);
  // (-i d/dx - rho) v reproduces the data
  const auto back = apply_derivative_poly(g, v, {-rho, -I});
  EXPECT_LT(max_diff(samples(g, back), sample_exp(g, 2.0, sigma)), 1e-13);
}

TEST(Resolvent, AnticausalStartsAtZero) {
  const ColumnGrid g{16.0, 64};
  const cplx rho{0.3, 0.8}, sigma{1.1, 0.5};
  const auto v = anticausal_resolvent(g, rho, Column::exponential({{1.0, sigma}}));
  EXPECT_NEAR(std::abs(trace(g, v, 0)), 0.0, 1e-15);
  const auto back = apply_derivative_poly(g, v, {-rho, -I});
  EXPECT_LT(max_diff(samples(g, back), sample_exp(g, 1.0, sigma)), 1e-13);
}

TEST(Resolvent, SecondOrderOnSamples) {
  const cplx rho{0.5, -1.0}, sigma{0.2, 0.6};
  const double e1 = causal_error(300, rho, sigma), e2 = causal_error(600, rho, sigma);
  EXPECT_LT(e2, 1e-4);
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.3);

  const cplx rp{-0.5, 1.0};
  const double a1 = anticausal_error(300, rp, sigma), a2 = anticausal_error(600, rp, sigma);
  EXPECT_LT(a2, 1e-4);
  EXPECT_NEAR(std::log2(a1 / a2), 2.0, 0.3);
}

TEST(Resolvent, WrongHalfPlaneRejected) {
  const ColumnGrid g;
  const auto c = Column::exponential({{1.0, {0.0, 1.0}}});
  EXPECT_THROW(causal_resolvent(g, {0.0, 1.0}, c), WrongHalfPlane);
  EXPECT_THROW(anticausal_resolvent(g, {0.0, -1.0}, c), WrongHalfPlane);
  EXPECT_THROW(causal_resolvent(g, {1.0, 0.0}, c), WrongHalfPlane);
}

TEST(Resolvent, ResonantExponentRejected) {
  const ColumnGrid g;
  const cplx rho{0.2, 0.7};
  EXPECT_THROW(anticausal_resolvent(g, rho, Column::exponential({{1.0, rho}})), InvalidInput);
}

TEST(Resolvent, SampledAndExactPathsAgree) {
  const ColumnGrid g{30.0, 4096};
  const cplx rho{-1.2, -0.4}, sigma{0.3, 1.5};
  const auto exact = causal_resolvent(g, rho, Column::exponential({{1.0, sigma}}));
  const auto sampled = causal_resolvent(g, rho, Column::sampled(sample_exp(g, 1.0, sigma)));
  EXPECT_LT(max_diff(samples(g, exact), samples(g, sampled)), 1e-5);
}

TEST(FiniteDifference, FourthOrder) {
  auto err = [](int Nn) {
    const ColumnGrid g{4.0, Nn};
    std::vector<cplx> v(static_cast<std::size_t>(g.points())), dv(v.size());
    for (int i = 0; i < g.points(); ++i) {
      v[static_cast<std::size_t>(i)] = std::sin(1.3 * g.x(i));
      dv[static_cast<std::size_t>(i)] = 1.3 * std::cos(1.3 * g.x(i));
    }
    return max_diff(fd_derivative(g, v), dv);
  };
  EXPECT_NEAR(std::log2(err(64) / err(128)), 4.0, 0.4);
}

TEST(FiniteDifference, WeightsOnPolynomials) {
  const std::vector<double> nodes{0.0, 0.5, 1.0, 1.5, 2.0};
  const auto w = fd_weights(0.0, nodes, 2);
  // second derivative of x^3 at 0 is 0, of x^2 is 2
  double s2 = 0, s3 = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    s2 += w[k] * nodes[k] * nodes[k];
    s3 += w[k] * nodes[k] * nodes[k] * nodes[k];
  }
  EXPECT_NEAR(s2, 2.0, 1e-12);
  EXPECT_NEAR(s3, 0.0, 1e-12);
}

TEST(Traces, ExponentialPowers) {
  const ColumnGrid g;
  const cplx rho{0.6, 1.4};
  const auto c = Column::exponential({{1.0, rho}});
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(trace(g, c, j) - std::pow(I * rho, j)), 0.0, 1e-13);
}

TEST(Traces, SampledFirstDerivative) {
  const ColumnGrid g{10.0, 2000};
  const cplx sigma{0.4, 0.9};
  const auto c = Column::sampled(sample_exp(g, 1.0, sigma));
  EXPECT_NEAR(std::abs(trace(g, c, 1) - I * sigma), 0.0, 1e-8);
}

TEST(Norms, ExactGramForExponentials) {
  const ColumnGrid g{12.0, 64};
  const cplx s{0.5, 0.7};
  const double want = (1.0 - std::exp(-2 * s.imag() * g.Ln)) / (2 * s.imag());
  EXPECT_NEAR(l2_norm_sq(g, Column::exponential({{1.0, s}})), want, 1e-14);
  // cross terms: |e^{i s1 x} + e^{i s2 x}|^2 against fine sampled quadrature
  const cplx s2{-0.8, 0.3};
  const auto c = Column::exponential({{1.0, s}, {0.5, s2}});
  const ColumnGrid fine{12.0, 20000};
  EXPECT_NEAR(l2_norm_sq(g, c), l2_norm_sq(fine, Column::sampled(samples(fine, c))), 1e-8);
}

TEST(Algebra, SimplifiedMergesTerms) {
  const cplx s{0.1, 0.2};
  const auto c = simplified(Column::exponential({{1.0, s}, {2.0, s}, {0.0, {0.0, 3.0}}}));
  ASSERT_EQ(c.exps.size(), 1u);
  EXPECT_EQ(c.exps[0].coeff, cplx(3.0));
  const auto z = Column::exponential({{1.0, s}}) - Column::exponential({{1.0, s}});
  EXPECT_TRUE(z.exps.empty());
}

TEST(Phi, SeriesBranchIsContinuous) {
  for (cplx z : {cplx(0.4999, 0.0), cplx(0.0, 0.4999), cplx(-0.3, 0.39)}) {
    const cplx zo = z * (0.5001 / 0.4999);
    EXPECT_NEAR(std::abs(phi1(z) - phi1(zo)), 0.0, 1e-3);
    EXPECT_NEAR(std::abs(phi2(z) - phi2(zo)), 0.0, 1e-3);
  }
  const cplx z{1.3, -0.7};
  EXPECT_NEAR(std::abs(phi1(z) - (std::exp(z) - 1.0) / z), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(phi2(z) - (std::exp(z) * (z - 1.0) + 1.0) / (z * z)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(phi1(0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(phi2(0.0) - 0.5), 0.0, 1e-15);
}

TEST(Resolvent, MirrorIdentity) {
  // x -> Ln - x maps the downward causal sweep for rho onto the upward one for -rho
  const ColumnGrid g{20.0, 400};
  const cplx rho{0.8, -1.7};
  std::vector<cplx> f(static_cast<std::size_t>(g.points()));
  for (int i = 0; i < g.points(); ++i) f[static_cast<std::size_t>(i)] = cplx(std::cos(0.7 * g.x(i)), std::exp(-0.2 * g.x(i)));
  std::vector<cplx> mirrored(f.rbegin(), f.rend());
  for (auto& v : mirrored) v = -v;
  const auto down = samples(g, causal_resolvent(g, rho, Column::sampled(f)));
  const auto up = samples(g, anticausal_resolvent(g, -rho, Column::sampled(mirrored)));
  const std::vector<cplx> back(up.rbegin(), up.rend());
  EXPECT_LT(max_diff(down, back), 1e-12);
  const std::vector<cplx> twice(mirrored.rbegin(), mirrored.rend());
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(-twice[i], f[i]);
}
