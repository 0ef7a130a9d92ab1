#include "maxreg/halfspace.hpp"

#include "maxreg/errors.hpp"
#include "maxreg/parallel.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

namespace maxreg {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr cplx I{0.0, 1.0};

double bracket(double x) { return std::sqrt(1.0 + x * x); }

void same_grid(const HalfGrid& a, const HalfGrid& b) {
  if (a.K != b.K || a.n != b.n || a.N != b.N || a.T != b.T || a.Lx != b.Lx || a.xn.Ln != b.xn.Ln || a.xn.Nn != b.xn.Nn)
    throw InvalidInput("half fields live on different grids");
}

bool column_is_zero(const Column& c) {
  for (const auto& t : c.exps)
    if (t.coeff != cplx(0.0)) return false;
  for (const auto& row : c.jet)
    for (const auto& v : row)
      if (v != cplx(0.0)) return false;
  return true;
}

// Per-column map over live columns; k = 0 columns must be zero and stay zero.
template <class Fn>
HalfField map_columns(const HalfField& f, const char* op, Fn fn) {
  HalfField out(f.grid);
  parallel_for(f.grid.columns(), [&](std::size_t c) {
    const int k = f.grid.k_of(c);
    if (k == 0) {
      if (!column_is_zero(f.cols[c])) throw InvalidInput(std::string(op) + ": k = 0 column is live (field not oscillatory)");
      return;
    }
    out.cols[c] = fn(c, f.cols[c]);
  });
  return out;
}

std::string column_text(const HalfGrid& g, std::size_t c) {
  return "column k=" + std::to_string(g.k_of(c)) + " xi'=" + std::to_string(g.xi_prime(g.j_of(c)));
}

// prod (a_j - d/dx)^{e_j} as coefficients of d^d/dx^d.
std::vector<cplx> omega_minus_poly(const std::vector<ElementaryTerm>& terms, double tau, double xp) {
  std::vector<cplx> p = {1.0};
  for (const auto& t : terms) {
    const double a = std::pow(bracket(tau), to_double(t.y)) + bracket(xp);
    if (t.e.denominator() != 1) throw UnsupportedShape("half-space norm needs integer vertex abscissae");
    for (std::int64_t r = 0; r < t.e.numerator(); ++r) {
      std::vector<cplx> q(p.size() + 1, 0.0);
      for (std::size_t d = 0; d < p.size(); ++d) {
        q[d] += a * p[d];
        q[d + 1] -= p[d];
      }
      p = std::move(q);
    }
  }
  return p;
}

std::vector<ElementaryTerm> norm_terms(const OrderFunctionDiff& mu) {
  const OrderFunctionDiff r = mu.reduced();
  if (r.minus() != OrderFunction()) throw UnsupportedShape("half-space norm needs a nonnegative order function");
  const OrderFunction m = r.plus();
  if (m == OrderFunction()) return {};
  if (!shape_queries(m).is_regular_in_time) throw UnsupportedShape("half-space norm needs an order function regular in time");
  return elementary_decomposition(m);
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mode_seed(std::uint64_t seed, int k, int m, std::uint64_t salt) {
  return mix(mix(mix(seed ^ salt) + static_cast<std::uint64_t>(k + 100000)) + static_cast<std::uint64_t>(m + 100000));
}

int signed_mode(const HalfGrid& g, int j) { return g.n == 1 ? 0 : (j < g.N / 2 ? j : j - g.N); }

double envelope(const HalfGrid& g, int k, int j) {
  const double xp = g.xi_prime(j);
  return std::exp(-0.3 * std::abs(k)) * std::exp(-0.5 * xp * xp);
}

}  // namespace

void HalfGrid::validate() const {
  if (K < 1) throw InvalidInput("HalfGrid: K must be >= 1");
  if (n != 1 && n != 2) throw InvalidInput("HalfGrid: n must be 1 or 2");
  if (n == 2 && (N < 2 || !std::has_single_bit(static_cast<unsigned>(N)))) throw InvalidInput("HalfGrid: N must be a power of two");
  if (xn.Nn < 64) throw InvalidInput("HalfGrid: Nn must be >= 64");
  if (!(xn.Ln > 0.0) || !(T > 0.0) || !(Lx > 0.0)) throw InvalidInput("HalfGrid: lengths must be positive");
}

double HalfGrid::omega(int k) const { return 2.0 * kPi * k / T; }

double HalfGrid::xi_prime(int j) const {
  if (n == 1) return 0.0;
  return 2.0 * kPi * signed_mode(*this, j) / Lx;
}

double HalfGrid::measure() const { return n == 1 ? T : T * Lx; }

double HalfGrid::default_length(double T, double decay_lengths) {
  const double tau = 2.0 * kPi / T;
  double slow = INFINITY;
  for (double t : {tau, -tau}) {
    const auto r = chg::roots(t, 0.0);
    slow = std::min({slow, r.rho1_plus.imag(), r.rho2_plus.imag()});
  }
  return decay_lengths / std::min(slow, 1.0);
}

HalfField::HalfField(const HalfGrid& g) : grid(g) {
  g.validate();
  cols.resize(g.columns());
}

bool HalfField::oscillatory() const {
  for (int j = 0; j < grid.tangential(); ++j)
    if (!column_is_zero(cols[grid.column(0, j)])) return false;
  return true;
}

HalfField operator+(const HalfField& a, const HalfField& b) {
  same_grid(a.grid, b.grid);
  HalfField out(a.grid);
  for (std::size_t c = 0; c < a.cols.size(); ++c) out.cols[c] = a.cols[c] + b.cols[c];
  return out;
}

HalfField operator-(const HalfField& a, const HalfField& b) {
  same_grid(a.grid, b.grid);
  HalfField out(a.grid);
  for (std::size_t c = 0; c < a.cols.size(); ++c) out.cols[c] = a.cols[c] - b.cols[c];
  return out;
}

HalfField dminus_inverse_plus(const HalfField& f) {
  const auto& g = f.grid;
  return map_columns(f, "dminus_inverse_plus", [&](std::size_t c, const Column& col) {
    const auto r = chg::roots(g.omega(g.k_of(c)), std::abs(g.xi_prime(g.j_of(c))));
    return causal_resolvent(g.xn, r.rho2_minus, causal_resolvent(g.xn, r.rho1_minus, col));
  });
}

HalfField dplus_inverse_dotted(const HalfField& f) {
  const auto& g = f.grid;
  return map_columns(f, "dplus_inverse_dotted", [&](std::size_t c, const Column& col) {
    const auto r = chg::roots(g.omega(g.k_of(c)), std::abs(g.xi_prime(g.j_of(c))));
    return anticausal_resolvent(g.xn, r.rho2_plus, anticausal_resolvent(g.xn, r.rho1_plus, col));
  });
}

HalfField apply_dminus(const HalfField& u) {
  const auto& g = u.grid;
  return map_columns(u, "apply_dminus", [&](std::size_t c, const Column& col) {
    const auto r = chg::roots(g.omega(g.k_of(c)), std::abs(g.xi_prime(g.j_of(c))));
    // (xi - r1)(xi - r2) with xi = -i d/dx
    const std::vector<cplx> poly = {r.rho1_minus * r.rho2_minus, I * (r.rho1_minus + r.rho2_minus), -1.0};
    return apply_derivative_poly(g.xn, col, poly);
  });
}

HalfField apply_D(const HalfField& u) {
  const auto& g = u.grid;
  return map_columns(u, "apply_D", [&](std::size_t c, const Column& col) {
    const double tau = g.omega(g.k_of(c));
    const double xp = g.xi_prime(g.j_of(c));
    const double q = xp * xp;
    const cplx it = I * tau;
    const std::vector<cplx> poly = {q * q + it * q + it, 0.0, -(2.0 * q + it), 0.0, 1.0};
    return apply_derivative_poly(g.xn, col, poly);
  });
}

double halfspace_norm(const HalfField& u, const OrderFunctionDiff& mu) {
  const auto terms = norm_terms(mu);
  const auto& g = u.grid;
  std::vector<double> part(g.columns(), 0.0);
  parallel_for(g.columns(), [&](std::size_t c) {
    const int k = g.k_of(c);
    if (k == 0) return;
    const auto poly = omega_minus_poly(terms, g.omega(k), g.xi_prime(g.j_of(c)));
    part[c] = l2_norm_sq(g.xn, apply_derivative_poly(g.xn, u.cols[c], poly));
  });
  double s = 0.0;
  for (double v : part) s += v;
  return std::sqrt(s * g.measure());
}

double boundary_norm(const HalfGrid& g, const BoundaryField& b, const OrderFunctionDiff& chi) {
  if (b.size() != g.columns()) throw InvalidInput("boundary field size does not match the grid");
  double s = 0.0;
  for (std::size_t c = 0; c < b.size(); ++c) {
    const int k = g.k_of(c);
    if (k == 0) continue;
    const double w = smooth_weight_eval(chi, g.omega(k), std::abs(g.xi_prime(g.j_of(c))));
    s += std::norm(w * b[c]);
  }
  return std::sqrt(s * g.measure());
}

HalfField trace_extension(const HalfGrid& grid, const TraceTuple& g, const OrderFunction& mu) {
  const auto info = shape_queries(mu);
  if (!info.is_chg_shaped || !info.chg) throw UnsupportedShape("trace extension needs a CHG-shaped order function");
  const int r1 = static_cast<int>(info.chg->r1);
  const int r2 = static_cast<int>(info.chg->r2);
  if (static_cast<int>(g.size()) != r1) throw InvalidInput("trace tuple length must equal ord mu");
  for (const auto& b : g)
    if (b.size() != grid.columns()) throw InvalidInput("boundary field size does not match the grid");
  const double gp = to_double(info.chg->gamma_perp);

  // eta_j = sum_k C_{kj} e^{-(k+1) a_j x} a_j^{-j} g_j with V_{mk} = (-(k+1))^m
  Eigen::MatrixXd V(r1, r1);
  for (int m = 0; m < r1; ++m)
    for (int k = 0; k < r1; ++k) V(m, k) = std::pow(-(k + 1.0), m);
  const Eigen::MatrixXd C = V.inverse();

  HalfField out(grid);
  parallel_for(grid.columns(), [&](std::size_t c) {
    const int k = grid.k_of(c);
    if (k == 0) return;
    const double tau = grid.omega(k);
    const double xp = grid.xi_prime(grid.j_of(c));
    std::vector<ExpTerm> terms;
    for (int j = 0; j < r1; ++j) {
      const cplx sj = g[static_cast<std::size_t>(j)][c];
      if (sj == cplx(0.0)) continue;
      cplx a = bracket(xp);
      if (j >= r2) a += std::pow(cplx(1.0, tau), -gp);
      const cplx scaled = sj / std::pow(a, j);
      for (int m = 0; m < r1; ++m) terms.push_back({C(m, j) * scaled, I * (m + 1.0) * a});
    }
    out.cols[c] = simplified(Column::exponential(std::move(terms)));
  });
  return out;
}

TraceTuple traces(const HalfField& u, int count) {
  TraceTuple t(static_cast<std::size_t>(count), BoundaryField(u.grid.columns(), 0.0));
  for (std::size_t c = 0; c < u.grid.columns(); ++c)
    for (int j = 0; j < count; ++j) t[static_cast<std::size_t>(j)][c] = trace(u.grid.xn, u.cols[c], j);
  return t;
}

ColumnSolver::ColumnSolver(const BoundaryCondition& bc)
    : bc_(bc),
      row_order_{target_order(bc.ops[0], OrderFunction()), target_order(bc.ops[1], OrderFunction())},
      mu_terms_(norm_terms(OrderFunctionDiff(chg::symbols().mu_D))) {}

ColumnSolver::Result ColumnSolver::solve(const ColumnGrid& grid, double tau, double xp, const Column& f, cplx g1,
                                         cplx g2) const {
  const auto r = chg::roots(tau, xp);
  const Column w = causal_resolvent(grid, r.rho2_minus, causal_resolvent(grid, r.rho1_minus, f));
  const Column p = anticausal_resolvent(grid, r.rho2_plus, anticausal_resolvent(grid, r.rho1_plus, w));

  auto apply_b = [&](int i, const Column& col) {
    cplx s = 0.0;
    for (int j = 0; j < 4; ++j) {
      const cplx b = bc_.ops[static_cast<std::size_t>(i)].coeff(j, tau, xp);
      if (b != cplx(0.0)) s += b * trace(grid, col, j);
    }
    return s;
  };

  Eigen::Matrix2cd M;
  const cplx rho[2] = {r.rho1_plus, r.rho2_plus};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) M(i, j) = bc_.ops[static_cast<std::size_t>(i)].symbol(tau, xp, rho[j]);
  // conditioning in the natural scales: boundary rows in their target trace
  // norms, root columns in the mu_D half-space norm
  const auto poly = omega_minus_poly(mu_terms_, tau, xp);
  Eigen::Matrix2cd Ms = M;
  for (int j = 0; j < 2; ++j) {
    cplx pv = 0.0, z = 1.0;
    for (const cplx& a : poly) {
      pv += a * z;
      z *= I * rho[j];
    }
    const double norm = std::abs(pv) / std::sqrt(2.0 * rho[j].imag());
    for (int i = 0; i < 2; ++i) Ms(i, j) *= smooth_weight_eval(row_order_[i], tau, xp) / norm;
  }
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(Ms);
  const double smin = svd.singularValues()(1), smax = svd.singularValues()(0);
  Result out;
  if (!(smin > smax * 1e-15)) {
    out.singular = true;
    return out;
  }
  out.cond = smax / smin;
  const cplx g[2] = {g1, g2};
  Eigen::Vector2cd rhs(g[0] - apply_b(0, p), g[1] - apply_b(1, p));
  const Eigen::Vector2cd coef = M.partialPivLu().solve(rhs);
  out.u = p + Column::exponential({{coef(0), rho[0]}, {coef(1), rho[1]}});
  for (int i = 0; i < 2; ++i)
    out.boundary_residual = std::max(out.boundary_residual, std::abs(apply_b(i, out.u) - g[i]) / (1.0 + std::abs(g[i])));
  return out;
}

HalfSolve solve_half_scalar(const HalfField& f, const TraceTuple& g, const BoundaryCondition& bc) {
  const auto& grid = f.grid;
  if (g.size() != 2) throw InvalidInput("solve_half_scalar needs two boundary fields");
  for (const auto& b : g)
    if (b.size() != grid.columns()) throw InvalidInput("boundary field size does not match the grid");
  HalfSolve out;
  out.u = HalfField(grid);
  out.diag.cond.assign(grid.columns(), 0.0);
  const ColumnSolver solver(bc);
  std::vector<double> resid(grid.columns(), 0.0);
  std::vector<int> singular(grid.columns(), 0);

  parallel_for(grid.columns(), [&](std::size_t c) {
    const int k = grid.k_of(c);
    if (k == 0) {
      if (!column_is_zero(f.cols[c]) || g[0][c] != cplx(0.0) || g[1][c] != cplx(0.0))
        throw InvalidInput("solve_half_scalar: k = 0 column is live (data not oscillatory)");
      return;
    }
    auto r = solver.solve(grid.xn, grid.omega(k), std::abs(grid.xi_prime(grid.j_of(c))), f.cols[c], g[0][c], g[1][c]);
    if (r.singular) {
      singular[c] = 1;
      return;
    }
    out.diag.cond[c] = r.cond;
    resid[c] = r.boundary_residual;
    out.u.cols[c] = std::move(r.u);
  });
  for (std::size_t c = 0; c < grid.columns(); ++c) {
    if (singular[c]) throw LsViolation("boundary matrix singular at " + column_text(grid, c));
    out.diag.max_cond = std::max(out.diag.max_cond, out.diag.cond[c]);
    out.diag.boundary_residual = std::max(out.diag.boundary_residual, resid[c]);
  }
  return out;
}

namespace {

// |xi|^2 -> q - d^2/dx^2 and friends, as derivative polynomials
std::vector<cplx> xi_sq_poly(double q) { return {q, 0.0, -1.0}; }

}  // namespace

std::pair<HalfField, HalfField> apply_chg_L(const HalfField& u1, const HalfField& u2) {
  same_grid(u1.grid, u2.grid);
  const auto& g = u1.grid;
  HalfField a(g), b(g);
  parallel_for(g.columns(), [&](std::size_t c) {
    const int k = g.k_of(c);
    if (k == 0) return;
    const cplx it = I * g.omega(k);
    const double xp = g.xi_prime(g.j_of(c));
    const auto xi2 = xi_sq_poly(xp * xp);
    a.cols[c] = it * u1.cols[c] + apply_derivative_poly(g.xn, u2.cols[c], xi2);
    std::vector<cplx> m = xi2;
    m[0] += it;
    b.cols[c] = u2.cols[c] - apply_derivative_poly(g.xn, u1.cols[c], m);
  });
  return {a, b};
}

ChgSolve solve_half_chg_system(const HalfField& f1, const HalfField& f2, const BoundaryField& g1, const BoundaryField& g2) {
  same_grid(f1.grid, f2.grid);
  const auto& grid = f1.grid;
  const auto& cs = chg::symbols();
  const BoundaryField zero(grid.columns(), 0.0);

  // lift Tr_1 data, then solve L (adj L v) = D v = f - L lift with homogeneous Neumann data
  const HalfField l1 = trace_extension(grid, {zero, g1, zero, zero}, cs.mu_D);
  const HalfField l2 = trace_extension(grid, {zero, g2, zero, zero}, cs.mu_D);
  const auto [a1, a2] = apply_chg_L(l1, l2);
  const HalfField r1 = f1 - a1, r2 = f2 - a2;
  const auto bc = neumann_pair_13();
  const HalfSolve v1 = solve_half_scalar(r1, {zero, zero}, bc);
  const HalfSolve v2 = solve_half_scalar(r2, {zero, zero}, bc);

  ChgSolve out;
  out.u1 = HalfField(grid);
  out.u2 = HalfField(grid);
  parallel_for(grid.columns(), [&](std::size_t c) {
    const int k = grid.k_of(c);
    if (k == 0) return;
    const cplx it = I * grid.omega(k);
    const double xp = grid.xi_prime(grid.j_of(c));
    const auto xi2 = xi_sq_poly(xp * xp);
    std::vector<cplx> m = xi2;
    m[0] += it;
    const Column& p = v1.u.cols[c];
    const Column& q = v2.u.cols[c];
    out.u1.cols[c] = l1.cols[c] + p - apply_derivative_poly(grid.xn, q, xi2);
    out.u2.cols[c] = l2.cols[c] + apply_derivative_poly(grid.xn, p, m) + it * q;
  });
  out.diag = v1.diag;
  out.diag.max_cond = std::max(v1.diag.max_cond, v2.diag.max_cond);
  out.diag.boundary_residual = std::max(v1.diag.boundary_residual, v2.diag.boundary_residual);

  const auto tr1 = traces(out.u1, 2), tr2 = traces(out.u2, 2);
  for (std::size_t c = 0; c < grid.columns(); ++c) {
    out.diag.boundary_residual = std::max(out.diag.boundary_residual, std::abs(tr1[1][c] - g1[c]) / (1.0 + std::abs(g1[c])));
    out.diag.boundary_residual = std::max(out.diag.boundary_residual, std::abs(tr2[1][c] - g2[c]) / (1.0 + std::abs(g2[c])));
  }
  const auto [lu1, lu2] = apply_chg_L(out.u1, out.u2);
  const OrderFunctionDiff zero_order;
  const double fn = halfspace_norm(f1, zero_order) + halfspace_norm(f2, zero_order);
  const double rn = halfspace_norm(lu1 - f1, zero_order) + halfspace_norm(lu2 - f2, zero_order);
  out.residual = fn > 0 ? rn / fn : rn;
  return out;
}

double ChgNorms::ratio() const {
  const double den = f1 + f2 + g1 + g2;
  return den > 0 ? (e1 + e2) / den : 0.0;
}

ChgNorms chg_norms(const HalfField& u1, const HalfField& u2, const HalfField& f1, const HalfField& f2,
                   const BoundaryField& g1, const BoundaryField& g2) {
  const auto& cs = chg::symbols();
  const OrderFunction t1 = cs.L.col_orders()[0].plus();
  const OrderFunction t2 = cs.L.col_orders()[1].plus();
  ChgNorms n;
  n.e1 = halfspace_norm(u1, t1);
  n.e2 = halfspace_norm(u2, t2);
  n.f1 = halfspace_norm(f1, OrderFunctionDiff());
  n.f2 = halfspace_norm(f2, OrderFunctionDiff::constant(Rational(1)));
  n.g1 = boundary_norm(u1.grid, g1, trace_order_function(t1, 1));
  n.g2 = boundary_norm(u1.grid, g2, trace_order_function(t2, 1));
  return n;
}

HalfField random_half_field(const HalfGrid& g, std::uint64_t seed) {
  HalfField f(g);
  for (std::size_t c = 0; c < g.columns(); ++c) {
    const int k = g.k_of(c);
    if (k == 0) continue;
    std::mt19937_64 rng(mode_seed(seed, k, signed_mode(g, g.j_of(c)), 0x66));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double env = envelope(g, k, g.j_of(c));
    const cplx a(normal(rng), normal(rng)), b(normal(rng), normal(rng));
    const double d1 = 0.5 + unit(rng), d2 = 1.0 + unit(rng);
    std::vector<cplx> v(static_cast<std::size_t>(g.xn.points()));
    for (int i = 0; i < g.xn.points(); ++i) {
      const double x = g.xn.x(i);
      v[static_cast<std::size_t>(i)] = env * (a * std::exp(-d1 * x) + b * x * std::exp(-d2 * x));
    }
    f.cols[c] = Column::sampled(std::move(v));
  }
  return f;
}

BoundaryField random_boundary_field(const HalfGrid& g, std::uint64_t seed) {
  BoundaryField b(g.columns(), 0.0);
  for (std::size_t c = 0; c < g.columns(); ++c) {
    const int k = g.k_of(c);
    if (k == 0) continue;
    std::mt19937_64 rng(mode_seed(seed, k, signed_mode(g, g.j_of(c)), 0x67));
    std::normal_distribution<double> normal;
    b[c] = envelope(g, k, g.j_of(c)) * cplx(normal(rng), normal(rng));
  }
  return b;
}

namespace {

constexpr char kHalfMagic[4] = {'M', 'R', 'H', '1'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw ParseError("truncated half-field file");
  return v;
}

}  // namespace

void write_half_field(const std::string& path, const HalfField& f) {
  static_assert(std::endian::native == std::endian::little, "field I/O assumes a little-endian host");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidInput("cannot open " + path + " for writing");
  const auto& g = f.grid;
  os.write(kHalfMagic, 4);
  put<double>(os, g.T);
  put<std::int32_t>(os, g.K);
  put<std::int32_t>(os, g.n);
  put<std::int32_t>(os, g.N);
  put<double>(os, g.Lx);
  put<double>(os, g.xn.Ln);
  put<std::int32_t>(os, g.xn.Nn);
  for (const auto& col : f.cols)
    for (const cplx& v : samples(g.xn, col)) {
      put<float>(os, static_cast<float>(v.real()));
      put<float>(os, static_cast<float>(v.imag()));
    }
}

HalfField read_half_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidInput("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kHalfMagic, 4) != 0) throw ParseError(path + ": not a half-field file");
  HalfGrid g;
  g.T = get<double>(is);
  g.K = get<std::int32_t>(is);
  g.n = get<std::int32_t>(is);
  g.N = get<std::int32_t>(is);
  g.Lx = get<double>(is);
  g.xn.Ln = get<double>(is);
  g.xn.Nn = get<std::int32_t>(is);
  HalfField f(g);
  for (auto& col : f.cols) {
    std::vector<cplx> v(static_cast<std::size_t>(g.xn.points()));
    for (auto& x : v) {
      const float re = get<float>(is);
      const float im = get<float>(is);
      x = cplx(re, im);
    }
    col = Column::sampled(std::move(v));
  }
  return f;
}

}  // namespace maxreg
