#include "maxreg/experiments.hpp"

#include "maxreg/chg.hpp"
#include "maxreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace maxreg {

namespace {

double l2(const Field& f) { return norm_weighted(f, OrderFunctionDiff()); }

Field difference(const Field& a, const Field& b) {
  Field d = a;
  for (std::size_t i = 0; i < d.data().size(); ++i) d.data()[i] -= b.data()[i];
  return d;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::uint64_t sample_seed(std::uint64_t seed, int sample, int slot) {
  return seed * 1000003ULL + static_cast<std::uint64_t>(sample) * 8ULL + static_cast<std::uint64_t>(slot);
}

}  // namespace

json RecoveryReport::to_json() const {
  return {{"error", error}, {"residual", residual}, {"boundary_residual", boundary_residual}, {"norm", norm}};
}

HalfField random_exponential_field(const HalfGrid& g, std::uint64_t seed) {
  HalfField f(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 0; c < g.columns(); ++c) {
    const int k = g.k_of(c);
    std::vector<ExpTerm> terms;
    for (int t = 0; t < 2; ++t) {
      const cplx coeff(unit(rng) - 0.5, unit(rng) - 0.5);
      const cplx sigma(2.0 * unit(rng) - 1.0, 0.8 + unit(rng));
      terms.push_back({coeff * std::exp(-0.2 * std::abs(k)), sigma});
    }
    if (k != 0) f.cols[c] = Column::exponential(std::move(terms));
  }
  return f;
}

RecoveryReport whole_scalar_manufactured(const TorusGrid& g, std::uint64_t seed) {
  const auto& cs = chg::symbols();
  const Field exact = random_field(g, seed);
  const Field f = apply_multiplier(exact, cs.D);
  const Field u = solve_whole_scalar(cs.D, f);
  RecoveryReport r;
  r.norm = "mu_D";
  r.error = norm_weighted(difference(u, exact), cs.mu_D) / norm_weighted(exact, cs.mu_D);
  r.residual = l2(difference(apply_multiplier(u, cs.D), f)) / l2(f);
  return r;
}

RecoveryReport whole_system_manufactured(const TorusGrid& g, std::uint64_t seed) {
  const auto& cs = chg::symbols();
  const std::vector<Field> exact{random_field(g, seed), random_field(g, seed + 1)};
  const auto f = apply_matrix(cs.L, exact);
  const auto u = solve_whole_system(cs.L, f);
  const auto back = apply_matrix(cs.L, u);
  RecoveryReport r;
  r.norm = "L2";
  double err = 0.0, ref = 0.0, res = 0.0, fn = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    err += l2(difference(u[i], exact[i]));
    ref += l2(exact[i]);
    res += l2(difference(back[i], f[i]));
    fn += l2(f[i]);
  }
  r.error = err / ref;
  r.residual = res / fn;
  return r;
}

RecoveryReport half_scalar_manufactured(const HalfGrid& g, const BoundaryCondition& bc, std::uint64_t seed) {
  const OrderFunctionDiff mu_D(chg::symbols().mu_D);
  const HalfField exact = random_exponential_field(g, seed);
  const HalfField f = apply_D(exact);
  const TraceTuple tr = traces(exact, 4);
  TraceTuple data(2, BoundaryField(g.columns(), 0.0));
  for (std::size_t c = 0; c < g.columns(); ++c) {
    const int k = g.k_of(c);
    if (k == 0) continue;
    const double xp = std::abs(g.xi_prime(g.j_of(c)));
    for (std::size_t i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) data[i][c] += bc.ops[i].coeff(j, g.omega(k), xp) * tr[static_cast<std::size_t>(j)][c];
  }
  const HalfSolve s = solve_half_scalar(f, data, bc);
  RecoveryReport r;
  r.norm = "mu_D";
  r.error = halfspace_norm(s.u - exact, mu_D) / halfspace_norm(exact, mu_D);
  r.residual = halfspace_norm(apply_D(s.u) - f, OrderFunctionDiff()) / halfspace_norm(f, OrderFunctionDiff());
  r.boundary_residual = s.diag.boundary_residual;
  return r;
}

RecoveryReport half_chg_manufactured(const HalfGrid& g, std::uint64_t seed) {
  const auto& cs = chg::symbols();
  const OrderFunction t1 = cs.L.col_orders()[0].plus(), t2 = cs.L.col_orders()[1].plus();
  const HalfField e1 = random_exponential_field(g, seed), e2 = random_exponential_field(g, seed + 1);
  const auto [f1, f2] = apply_chg_L(e1, e2);
  const BoundaryField g1 = traces(e1, 2)[1], g2 = traces(e2, 2)[1];
  const ChgSolve s = solve_half_chg_system(f1, f2, g1, g2);
  RecoveryReport r;
  r.norm = "E";
  r.error = (halfspace_norm(s.u1 - e1, t1) + halfspace_norm(s.u2 - e2, t2)) / (halfspace_norm(e1, t1) + halfspace_norm(e2, t2));
  r.residual = s.residual;
  r.boundary_residual = s.diag.boundary_residual;
  return r;
}

double EnsembleReport::median_change() const {
  if (levels.empty()) return 0.0;
  double lo = INFINITY, hi = 0.0;
  for (const auto& l : levels) {
    lo = std::min(lo, l.median);
    hi = std::max(hi, l.median);
  }
  return lo > 0 ? hi / lo : INFINITY;
}

json EnsembleReport::to_json() const {
  json ls = json::array();
  for (const auto& l : levels)
    ls.push_back({{"K", l.K}, {"Nn", l.Nn}, {"median", l.median}, {"ratios", l.ratios}, {"max_residual", l.max_residual},
                  {"max_boundary_residual", l.max_boundary_residual}, {"max_cond", l.max_cond}});
  return {{"samples", samples}, {"seed", seed}, {"levels", ls}, {"median_change", median_change()}};
}

std::string EnsembleReport::csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "K,Nn,median,max_residual,max_boundary_residual,max_cond\n";
  for (const auto& l : levels)
    os << l.K << ',' << l.Nn << ',' << l.median << ',' << l.max_residual << ',' << l.max_boundary_residual << ',' << l.max_cond << '\n';
  return os.str();
}

EnsembleReport chg_ensemble(const HalfGrid& base, int samples, std::uint64_t seed, int levels) {
  if (samples < 1 || levels < 1) throw InvalidInput("ensemble needs at least one sample and one level");
  EnsembleReport rep;
  rep.samples = samples;
  rep.seed = seed;
  for (int lv = 0; lv < levels; ++lv) {
    HalfGrid g = base;
    g.K = base.K << lv;
    g.xn.Nn = base.xn.Nn << lv;
    EnsembleLevel out;
    out.K = g.K;
    out.Nn = g.xn.Nn;
    for (int s = 0; s < samples; ++s) {
      const HalfField f1 = random_half_field(g, sample_seed(seed, s, 0));
      const HalfField f2 = random_half_field(g, sample_seed(seed, s, 1));
      const BoundaryField g1 = random_boundary_field(g, sample_seed(seed, s, 2));
      const BoundaryField g2 = random_boundary_field(g, sample_seed(seed, s, 3));
      const ChgSolve cs = solve_half_chg_system(f1, f2, g1, g2);
      out.ratios.push_back(chg_norms(cs.u1, cs.u2, f1, f2, g1, g2).ratio());
      out.max_residual = std::max(out.max_residual, cs.residual);
      out.max_boundary_residual = std::max(out.max_boundary_residual, cs.diag.boundary_residual);
      out.max_cond = std::max(out.max_cond, cs.diag.max_cond);
    }
    out.median = median_of(out.ratios);
    rep.levels.push_back(std::move(out));
  }
  return rep;
}

}  // namespace maxreg
