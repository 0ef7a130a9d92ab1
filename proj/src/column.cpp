#include "maxreg/column.hpp"

#include "maxreg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace maxreg {

namespace {

constexpr cplx I{0.0, 1.0};

void check_exponent(const ExpTerm& t) {
  if (!(t.sigma.imag() > 0.0)) throw WrongHalfPlane("exponential term does not decay: Im sigma <= 0");
}

std::vector<std::vector<cplx>> add_jets(const std::vector<std::vector<cplx>>& a, const std::vector<std::vector<cplx>>& b,
                                        cplx sb) {
  if (a.empty()) {
    auto out = b;
    for (auto& row : out)
      for (auto& v : row) v *= sb;
    return out;
  }
  if (b.empty()) return a;
  const std::size_t d = std::min(a.size(), b.size());
  std::vector<std::vector<cplx>> out(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (a[k].size() != b[k].size()) throw InvalidInput("columns sampled on different grids");
    out[k].resize(a[k].size());
    for (std::size_t i = 0; i < a[k].size(); ++i) out[k][i] = a[k][i] + sb * b[k][i];
  }
  return out;
}

void require_grid(const ColumnGrid& g, const Column& c) {
  if (c.has_samples() && static_cast<int>(c.jet[0].size()) != g.points())
    throw InvalidInput("column samples do not match the x_n grid");
}

}  // namespace

Column Column::exponential(std::vector<ExpTerm> terms) {
  for (const auto& t : terms) check_exponent(t);
  Column c;
  c.exps = std::move(terms);
  return c;
}

Column Column::sampled(std::vector<cplx> values) {
  Column c;
  c.jet.push_back(std::move(values));
  return c;
}

Column operator+(const Column& a, const Column& b) {
  Column c;
  c.exps = a.exps;
  c.exps.insert(c.exps.end(), b.exps.begin(), b.exps.end());
  c.jet = add_jets(a.jet, b.jet, 1.0);
  return simplified(c);
}

Column operator-(const Column& a, const Column& b) { return a + (-1.0) * b; }

Column operator*(cplx s, const Column& a) {
  Column c = a;
  for (auto& t : c.exps) t.coeff *= s;
  for (auto& row : c.jet)
    for (auto& v : row) v *= s;
  return c;
}

Column simplified(const Column& a) {
  Column c;
  c.jet = a.jet;
  for (const auto& t : a.exps) {
    if (t.coeff == cplx(0.0)) continue;
    auto it = std::find_if(c.exps.begin(), c.exps.end(), [&](const ExpTerm& u) {
      return std::abs(u.sigma - t.sigma) <= 1e-14 * std::max(1.0, std::abs(t.sigma));
    });
    if (it == c.exps.end()) c.exps.push_back(t);
    else it->coeff += t.coeff;
  }
  std::erase_if(c.exps, [](const ExpTerm& t) { return t.coeff == cplx(0.0); });
  return c;
}

cplx value_at(const ColumnGrid& g, const Column& c, int i) {
  const double x = g.x(i);
  cplx s = c.has_samples() ? c.jet[0][static_cast<std::size_t>(i)] : cplx(0.0);
  for (const auto& t : c.exps) s += t.coeff * std::exp(I * t.sigma * x);
  return s;
}

std::vector<cplx> samples(const ColumnGrid& g, const Column& c) {
  require_grid(g, c);
  std::vector<cplx> v(static_cast<std::size_t>(g.points()));
  for (int i = 0; i < g.points(); ++i) v[static_cast<std::size_t>(i)] = value_at(g, c, i);
  return v;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
  // Fornberg's recursion; c[j][k] holds the weight of node j for derivative k.
  const int n = static_cast<int>(nodes.size());
  if (m >= n) throw InvalidInput("fd_weights needs more nodes than the derivative order");
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0, c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
              c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                    c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) / c2;
        c[static_cast<std::size_t>(i)][0] = -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
            (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] - k * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) / c3;
      c[static_cast<std::size_t>(j)][0] = c4 * c[static_cast<std::size_t>(j)][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
  return w;
}

std::vector<cplx> fd_derivative(const ColumnGrid& g, const std::vector<cplx>& v) {
  const int n = static_cast<int>(v.size());
  if (n < 5) throw InvalidInput("fd_derivative needs at least 5 samples");
  // five-point stencils for offsets 0..4 from the window start, in units of h
  std::vector<std::vector<double>> w(5);
  const std::vector<double> nodes = {0, 1, 2, 3, 4};
  for (int p = 0; p < 5; ++p) w[static_cast<std::size_t>(p)] = fd_weights(p, nodes, 1);
  const double ih = 1.0 / g.h();
  std::vector<cplx> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int start = std::clamp(i - 2, 0, n - 5);
    const auto& wt = w[static_cast<std::size_t>(i - start)];
    cplx s = 0.0;
    for (int k = 0; k < 5; ++k) s += wt[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(start + k)];
    d[static_cast<std::size_t>(i)] = s * ih;
  }
  return d;
}

std::vector<std::vector<cplx>> jet_upto(const ColumnGrid& g, const Column& c, int d) {
  require_grid(g, c);
  if (!c.has_samples()) return {};
  auto jet = c.jet;
  while (static_cast<int>(jet.size()) <= d) jet.push_back(fd_derivative(g, jet.back()));
  jet.resize(static_cast<std::size_t>(d + 1));
  return jet;
}

Column apply_derivative_poly(const ColumnGrid& g, const Column& c, const std::vector<cplx>& poly) {
  const int deg = static_cast<int>(poly.size()) - 1;
  Column out;
  for (const auto& t : c.exps) {
    cplx s = 0.0, p = 1.0;
    for (int d = 0; d <= deg; ++d) {
      s += poly[static_cast<std::size_t>(d)] * p;
      p *= I * t.sigma;
    }
    out.exps.push_back({t.coeff * s, t.sigma});
  }
  if (c.has_samples()) {
    // keep as many exact derivatives as the input jet supports
    const int keep = std::max(1, static_cast<int>(c.jet.size()) - deg);
    const auto jet = jet_upto(g, c, deg + keep - 1);
    out.jet.assign(static_cast<std::size_t>(keep), std::vector<cplx>(static_cast<std::size_t>(g.points()), 0.0));
    for (int k = 0; k < keep; ++k)
      for (int d = 0; d <= deg; ++d) {
        if (poly[static_cast<std::size_t>(d)] == cplx(0.0)) continue;
        const auto& row = jet[static_cast<std::size_t>(d + k)];
        for (std::size_t i = 0; i < row.size(); ++i) out.jet[static_cast<std::size_t>(k)][i] += poly[static_cast<std::size_t>(d)] * row[i];
      }
  }
  return simplified(out);
}

cplx trace(const ColumnGrid& g, const Column& c, int j) {
  if (j < 0) throw InvalidInput("trace index must be nonnegative");
  cplx s = 0.0;
  for (const auto& t : c.exps) s += t.coeff * std::pow(I * t.sigma, j);
  if (c.has_samples()) {
    if (j < static_cast<int>(c.jet.size())) {
      s += c.jet[static_cast<std::size_t>(j)][0];
    } else {
      const auto jet = jet_upto(g, c, j);
      s += jet[static_cast<std::size_t>(j)][0];
    }
  }
  return s;
}

cplx phi1(cplx z) {
  if (std::abs(z) < 0.5) {
    cplx s = 0.0, term = 1.0;
    for (int n = 0; n < 24; ++n) {
      s += term / static_cast<double>(n + 1);
      term *= z / static_cast<double>(n + 1);
    }
    return s;
  }
  return (std::exp(z) - 1.0) / z;
}

cplx phi2(cplx z) {
  if (std::abs(z) < 0.5) {
    // sum z^n / (n! (n + 2))
    cplx s = 0.0, term = 1.0;
    for (int n = 0; n < 24; ++n) {
      s += term / static_cast<double>(n + 2);
      term *= z / static_cast<double>(n + 1);
    }
    return s;
  }
  return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

namespace {

std::vector<std::vector<cplx>> extend_jet(cplx rho, const std::vector<std::vector<cplx>>& gjet, std::vector<cplx> v) {
  // v' = i (rho v + g), differentiated termwise
  std::vector<std::vector<cplx>> out;
  out.push_back(std::move(v));
  for (const auto& g : gjet) {
    const auto& prev = out.back();
    std::vector<cplx> next(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] = I * (rho * prev[i] + g[i]);
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

Column causal_resolvent(const ColumnGrid& g, cplx rho, const Column& c) {
  if (!(rho.imag() < 0.0)) throw WrongHalfPlane("causal resolvent needs Im rho < 0");
  require_grid(g, c);
  Column out;
  for (const auto& t : c.exps) out.exps.push_back({t.coeff / (t.sigma - rho), t.sigma});
  if (c.has_samples()) {
    const auto& f = c.jet[0];
    const double h = g.h();
    const cplx z = -I * rho * h;
    const cplx ez = std::exp(z), a = phi1(z), b = phi2(z);
    std::vector<cplx> v(f.size(), 0.0);
    for (int i = g.Nn - 1; i >= 0; --i) {
      const auto u = static_cast<std::size_t>(i);
      v[u] = ez * v[u + 1] - I * h * ((a - b) * f[u] + b * f[u + 1]);
    }
    out.jet = extend_jet(rho, c.jet, std::move(v));
  }
  return out;
}

Column anticausal_resolvent(const ColumnGrid& g, cplx rho, const Column& c) {
  if (!(rho.imag() > 0.0)) throw WrongHalfPlane("anticausal resolvent needs Im rho > 0");
  require_grid(g, c);
  Column out;
  cplx start = 0.0;
  for (const auto& t : c.exps) {
    const cplx d = t.sigma - rho;
    if (std::abs(d) < 1e-9 * std::max(1.0, std::abs(rho)))
      throw InvalidInput("data exponent coincides with a root; exponential sum cannot represent the resonance");
    out.exps.push_back({t.coeff / d, t.sigma});
    start -= t.coeff / d;
  }
  out.exps.push_back({start, rho});
  if (c.has_samples()) {
    const auto& f = c.jet[0];
    const double h = g.h();
    const cplx w = I * rho * h;
    const cplx ew = std::exp(w), a = phi1(w), b = phi2(w);
    std::vector<cplx> v(f.size(), 0.0);
    for (int i = 0; i < g.Nn; ++i) {
      const auto u = static_cast<std::size_t>(i);
      v[u + 1] = ew * v[u] + I * h * ((a - b) * f[u + 1] + b * f[u]);
    }
    out.jet = extend_jet(rho, c.jet, std::move(v));
  }
  return simplified(out);
}

double l2_norm_sq(const ColumnGrid& g, const Column& c) {
  require_grid(g, c);
  const double L = g.Ln;
  cplx gram = 0.0;
  for (const auto& a : c.exps)
    for (const auto& b : c.exps) {
      const cplx kappa = a.sigma - std::conj(b.sigma);
      // int_0^L e^{i kappa x} dx = L phi1(i kappa L)
      gram += a.coeff * std::conj(b.coeff) * L * phi1(I * kappa * L);
    }
  double total = gram.real();
  if (c.has_samples()) {
    if (g.Nn % 2 != 0) throw InvalidInput("Simpson quadrature needs an even Nn");
    const auto& s = c.jet[0];
    double acc = 0.0;
    for (int i = 0; i <= g.Nn; ++i) {
      cplx e = 0.0;
      for (const auto& t : c.exps) e += t.coeff * std::exp(I * t.sigma * g.x(i));
      const cplx v = s[static_cast<std::size_t>(i)];
      const double f = std::norm(v) + 2.0 * (std::conj(e) * v).real();
      const double w = (i == 0 || i == g.Nn) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * f;
    }
    total += acc * g.h() / 3.0;
  }
  return std::max(total, 0.0);
}

}  // namespace maxreg
