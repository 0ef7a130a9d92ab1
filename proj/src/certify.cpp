#include "maxreg/certify.hpp"

#include "maxreg/errors.hpp"
#include "maxreg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace maxreg {

namespace {

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v;
  if (n <= 0) return v;
  if (n == 1) return {lo};
  const double a = std::log(lo), b = std::log(hi);
  for (int k = 0; k < n; ++k) v.push_back(std::exp(a + (b - a) * k / (n - 1)));
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::vector<double> GridSpec::tau_magnitudes() const { return logspace(lambda, tau_max, n_tau); }

std::vector<double> GridSpec::taus() const {
  auto mags = tau_magnitudes();
  std::vector<double> out;
  if (both_signs) {
    for (auto it = mags.rbegin(); it != mags.rend(); ++it) out.push_back(-*it);
  }
  out.insert(out.end(), mags.begin(), mags.end());
  return out;
}

std::vector<double> GridSpec::xis() const {
  std::vector<double> out;
  if (include_zero_xi) out.push_back(0.0);
  auto rest = logspace(xi_min, xi_max, include_zero_xi ? n_xi - 1 : n_xi);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

GridSpec GridSpec::parse(const std::string& text) { return parse(text, GridSpec{}); }

GridSpec GridSpec::parse(const std::string& text, GridSpec g) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("grid option '" + item + "' lacks '='");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    try {
      if (key == "lambda") g.lambda = std::stod(val);
      else if (key == "taumax") g.tau_max = std::stod(val);
      else if (key == "ntau") g.n_tau = std::stoi(val);
      else if (key == "ximin") g.xi_min = std::stod(val);
      else if (key == "ximax") g.xi_max = std::stod(val);
      else if (key == "nxi") g.n_xi = std::stoi(val);
      else if (key == "dirs") g.directions = std::stoi(val);
      else if (key == "seed") g.seed = std::stoull(val);
      else if (key == "signs") g.both_signs = val == "both";
      else throw ParseError("unknown grid option '" + key + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad value for grid option '" + key + "'");
    }
  }
  if (g.lambda <= 0 || g.tau_max < g.lambda || g.n_tau < 1 || g.n_xi < 1) throw InvalidInput("empty or inverted grid");
  return g;
}

json GridSpec::to_json() const {
  return {{"lambda", lambda}, {"tau_max", tau_max}, {"n_tau", n_tau}, {"both_signs", both_signs},
          {"include_zero_xi", include_zero_xi}, {"xi_min", xi_min}, {"xi_max", xi_max}, {"n_xi", n_xi},
          {"directions", directions}, {"seed", seed}};
}

json CertReport::to_json() const {
  json j{{"kind", kind},
         {"subject", subject},
         {"grid", grid.to_json()},
         {"points", points},
         {"sup_ratio", sup_ratio},
         {"inf_ratio", inf_ratio},
         {"argsup", {argsup.tau, argsup.xi}},
         {"arginf", {arginf.tau, arginf.xi}},
         {"floor", floor},
         {"violations", violations},
         {"pass", pass}};
  if (witness.found) {
    j["witness"] = {{"ray", witness.ray}, {"exponent", witness.exponent}, {"end", {witness.end.tau, witness.end.xi}}};
  }
  return j;
}

json MixedOrderReport::to_json() const {
  json e = json::array();
  for (const auto& r : entries) e.push_back(r.to_json());
  return {{"entries", e}, {"determinant", determinant.to_json()}, {"delta", maxreg::to_json(delta)}, {"pass", pass}};
}

namespace {

enum class Mode { upper, lower };

/// |P|/W at one (tau, |xi|), aggregated over directions for non-radial symbols.
class RatioSampler {
 public:
  RatioSampler(const SymbolFn& p, const OrderFunctionDiff& mu, const GridSpec& g, Mode mode)
      : p_(p), mu_(mu), mode_(mode) {
    if (!p.is_radial()) {
      const int n = std::max(1, p.dimension());
      for (int d = 0; d < n; ++d) {
        std::vector<double> e(static_cast<std::size_t>(n), 0.0);
        e[static_cast<std::size_t>(d)] = 1.0;
        dirs_.push_back(e);
      }
      std::mt19937_64 rng(g.seed);
      std::normal_distribution<double> nd;
      for (int k = 0; k < g.directions && n > 1; ++k) {
        std::vector<double> v(static_cast<std::size_t>(n));
        double s = 0;
        for (auto& x : v) {
          x = nd(rng);
          s += x * x;
        }
        for (auto& x : v) x /= std::sqrt(s);
        dirs_.push_back(v);
      }
    }
  }

  double operator()(double tau, double xi) const {
    const double w = weight_eval(mu_, tau, xi);
    double best = mode_ == Mode::upper ? 0.0 : std::numeric_limits<double>::infinity();
    auto take = [&](cplx v) {
      const double r = std::abs(v) / w;
      if (!std::isfinite(r)) {
        throw EvaluationError("non-finite value of '" + p_.name() + "' at tau=" + fmt(tau) + ", |xi|=" + fmt(xi));
      }
      best = mode_ == Mode::upper ? std::max(best, r) : std::min(best, r);
    };
    if (p_.is_radial()) {
      take(p_.at(tau, xi));
    } else {
      for (const auto& d : dirs_) {
        std::vector<double> x(d.size());
        for (std::size_t k = 0; k < d.size(); ++k) x[k] = d[k] * xi;
        take(p_(tau, x));
      }
    }
    return best;
  }

 private:
  const SymbolFn& p_;
  const OrderFunctionDiff& mu_;
  Mode mode_;
  std::vector<std::vector<double>> dirs_;
};

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  const double den = n * sxx - sx * sx;
  return den == 0 ? 0.0 : (n * sxy - sx * sy) / den;
}

/// Tail slope of log ratio vs log parameter, confirmed decade by decade for three decades past the grid.
struct RayResult {
  bool valid = false;
  double tail = 0.0;
  double extension = 0.0;
};

template <class Eval>
RayResult analyse_ray(const std::vector<double>& params, const std::vector<double>& ratios, Eval&& eval) {
  RayResult r;
  std::vector<double> lx, ly;
  const std::size_t n = params.size();
  if (n < 4) return r;
  const std::size_t tail = std::max<std::size_t>(4, n / 4);
  for (std::size_t k = n - tail; k < n; ++k) {
    if (ratios[k] <= 0 || params[k] <= 0) return r;
    lx.push_back(std::log(params[k]));
    ly.push_back(std::log(ratios[k]));
  }
  r.tail = fit_slope(lx, ly);
  std::vector<double> ex{std::log(params.back())}, ey{std::log(ratios.back())};
  for (int d = 1; d <= 3; ++d) {
    const double p = params.back() * std::pow(10.0, d);
    const double v = eval(p);
    if (!(v > 0) || !std::isfinite(v)) return r;
    ex.push_back(std::log(p));
    ey.push_back(std::log(v));
  }
  // a real power law keeps its slope on every decade; saturation shows up as a flattening last decade
  r.extension = (ey[1] - ey[0]) / (ex[1] - ex[0]);
  for (std::size_t k = 2; k < ex.size(); ++k) {
    const double d = (ey[k] - ey[k - 1]) / (ex[k] - ex[k - 1]);
    if ((d > 0) != (r.extension > 0)) {
      r.extension = 0.0;
      break;
    }
    if (std::abs(d) < std::abs(r.extension)) r.extension = d;
  }
  r.valid = true;
  return r;
}

struct Sampled {
  std::vector<double> taus, xis, ratio;
  double at(std::size_t t, std::size_t x) const { return ratio[t * xis.size() + x]; }
};

Sampled sample(const RatioSampler& s, std::vector<double> taus, std::vector<double> xis) {
  Sampled out{std::move(taus), std::move(xis), {}};
  out.ratio.assign(out.taus.size() * out.xis.size(), 0.0);
  parallel_for(out.taus.size(), [&](std::size_t t) {
    for (std::size_t x = 0; x < out.xis.size(); ++x) out.ratio[t * out.xis.size() + x] = s(out.taus[t], out.xis[x]);
  });
  return out;
}

Witness find_witness(const Sampled& s, const RatioSampler& eval, Mode mode) {
  Witness best;
  auto better = [&](double slope) {
    if (mode == Mode::lower) return slope < -kWitnessSlope && (!best.found || slope < best.exponent);
    return slope > kWitnessSlope && (!best.found || slope > best.exponent);
  };
  // tau rays at fixed |xi|, one per sign
  for (int sign : {-1, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t t = 0; t < s.taus.size(); ++t)
      if ((s.taus[t] > 0) == (sign > 0)) idx.push_back(t);
    if (sign < 0) std::reverse(idx.begin(), idx.end());
    for (std::size_t x = 0; x < s.xis.size(); ++x) {
      std::vector<double> p, r;
      for (auto t : idx) {
        p.push_back(std::abs(s.taus[t]));
        r.push_back(s.at(t, x));
      }
      auto res = analyse_ray(p, r, [&](double mag) { return eval(sign * mag, s.xis[x]); });
      const bool trend = mode == Mode::lower ? res.tail < -kWitnessSlope : res.tail > kWitnessSlope;
      if (res.valid && trend && better(res.extension)) {
        best = {true, "|xi|=" + fmt(s.xis[x]) + ", tau->" + (sign > 0 ? "+inf" : "-inf"), res.extension,
                {sign * p.back(), s.xis[x]}};
      }
    }
  }
  // xi rays at fixed tau
  for (std::size_t t = 0; t < s.taus.size(); ++t) {
    std::vector<double> p, r;
    for (std::size_t x = 0; x < s.xis.size(); ++x) {
      if (s.xis[x] <= 0) continue;
      p.push_back(s.xis[x]);
      r.push_back(s.at(t, x));
    }
    auto res = analyse_ray(p, r, [&](double xi) { return eval(s.taus[t], xi); });
    const bool trend = mode == Mode::lower ? res.tail < -kWitnessSlope : res.tail > kWitnessSlope;
    if (res.valid && trend && better(res.extension)) {
      best = {true, "tau=" + fmt(s.taus[t]) + ", |xi|->inf", res.extension, {s.taus[t], p.back()}};
    }
  }
  return best;
}

void extrema(CertReport& rep, const Sampled& s) {
  rep.points = s.ratio.size();
  rep.sup_ratio = -1;
  rep.inf_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < s.taus.size(); ++t) {
    for (std::size_t x = 0; x < s.xis.size(); ++x) {
      const double r = s.at(t, x);
      if (r > rep.sup_ratio) {
        rep.sup_ratio = r;
        rep.argsup = {s.taus[t], s.xis[x]};
      }
      if (r < rep.inf_ratio) {
        rep.inf_ratio = r;
        rep.arginf = {s.taus[t], s.xis[x]};
      }
    }
  }
}

}  // namespace

CertReport upper_bound_certify(const SymbolFn& p, const OrderFunctionDiff& mu, const GridSpec& grid) {
  RatioSampler sampler(p, mu, grid, Mode::upper);
  auto s = sample(sampler, grid.taus(), grid.xis());
  if (s.ratio.empty()) throw InvalidInput("empty certification grid");
  CertReport rep;
  rep.kind = "upper";
  rep.subject = p.name() + " vs " + format_order(mu);
  rep.grid = grid;
  extrema(rep, s);
  rep.witness = find_witness(s, sampler, Mode::upper);
  rep.pass = std::isfinite(rep.sup_ratio) && !rep.witness.found;
  return rep;
}

CertReport ellipticity_certify(const SymbolFn& p, const OrderFunctionDiff& mu, double lambda, const GridSpec& grid,
                               double floor) {
  if (lambda <= 0) throw InvalidInput("lambda must be positive");
  RatioSampler sampler(p, mu, grid, Mode::lower);
  std::vector<double> taus;
  for (double t : grid.taus())
    if (std::abs(t) >= lambda) taus.push_back(t);
  auto s = sample(sampler, taus, grid.xis());
  if (s.ratio.empty()) throw InvalidInput("no grid points with |tau| >= lambda");
  CertReport rep;
  rep.kind = "ellipticity";
  rep.subject = p.name() + " vs " + format_order(mu);
  rep.grid = grid;
  rep.floor = floor;
  extrema(rep, s);
  for (double r : s.ratio)
    if (r < floor) ++rep.violations;
  rep.witness = find_witness(s, sampler, Mode::lower);
  const bool above = floor > 0 ? rep.inf_ratio >= floor : rep.inf_ratio > 0;
  rep.pass = above && !rep.witness.found;
  return rep;
}

MixedOrderReport mixed_order_certify(const MatrixSymbol& m, const GridSpec& grid) {
  if (!m.has_orders()) throw InvalidInput("mixed-order certification needs row and column order functions");
  MixedOrderReport rep;
  rep.pass = true;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      auto mu = of_add(m.row_orders()[static_cast<std::size_t>(i)], m.col_orders()[static_cast<std::size_t>(j)]);
      auto r = upper_bound_certify(m(i, j), mu, grid);
      r.subject = "entry(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") vs " + format_order(mu);
      rep.pass = rep.pass && r.pass;
      rep.entries.push_back(r);
    }
  }
  rep.delta = m.delta().reduced();
  rep.determinant = ellipticity_certify(det(m), rep.delta, grid.lambda, grid);
  rep.determinant.subject = "det vs " + format_order(rep.delta);
  rep.pass = rep.pass && rep.determinant.pass;
  return rep;
}

}  // namespace maxreg
