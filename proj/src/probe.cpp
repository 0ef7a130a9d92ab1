#include "maxreg/probe.hpp"

#include "maxreg/errors.hpp"

#include <cmath>
#include <sstream>

namespace maxreg {

namespace {

HalfGrid probe_grid(int K, int Nn) {
  HalfGrid g;
  g.K = K;
  g.n = 1;
  g.xn.Nn = Nn;
  g.xn.Ln = HalfGrid::default_length(g.T);
  return g;
}

OrderFunctionDiff t0_minus() { return trace_order_function(chg::symbols().mu_minus, 0); }
OrderFunctionDiff t2_D() { return trace_order_function(chg::symbols().mu_D, 2); }

}  // namespace

double ProbeTable::trace_growth() const { return rows.empty() ? 0.0 : rows.back().trace_norm / rows.front().trace_norm; }

double ProbeTable::ratio_growth() const { return rows.empty() ? 0.0 : rows.back().ratio / rows.front().ratio; }

bool ProbeTable::trace_monotone() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].trace_norm > rows[i - 1].trace_norm)) return false;
  return !rows.empty();
}

json ProbeTable::to_json() const {
  json r = json::array();
  for (const auto& row : rows)
    r.push_back({{"K", row.K}, {"Nn", row.Nn}, {"trace_norm", row.trace_norm}, {"expected", row.expected},
                 {"solution_trace", row.solution_trace},
                 {"solution_norm", row.solution_norm}, {"data_norm", row.data_norm}, {"ratio", row.ratio},
                 {"max_cond", row.max_cond}});
  return {{"bc", bc}, {"rows", r}, {"trace_growth", trace_growth()}, {"ratio_growth", ratio_growth()},
          {"trace_monotone", trace_monotone()}};
}

std::string ProbeTable::csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "bc,K,Nn,trace_norm,expected,solution_trace,solution_norm,data_norm,ratio,max_cond\n";
  for (const auto& r : rows)
    os << bc << ',' << r.K << ',' << r.Nn << ',' << r.trace_norm << ',' << r.expected << ',' << r.solution_trace << ',' << r.solution_norm << ','
       << r.data_norm << ',' << r.ratio << ',' << r.max_cond << '\n';
  return os.str();
}

BoundaryField borderline_datum(const HalfGrid& g, const ProbeDatum& d, int k_max) {
  if (g.n != 1) throw InvalidInput("the probe datum lives on the xi' = 0 line (n = 1)");
  if (d.onset < 1) throw InvalidInput("probe datum onset must be >= 1");
  const auto chi = t0_minus();
  BoundaryField b(g.columns(), 0.0);
  for (int k = -g.K; k <= g.K; ++k) {
    const int ak = std::abs(k);
    if (ak < d.onset || ak > k_max) continue;
    b[g.column(k, 0)] = std::pow(ak, -(1.0 + d.epsilon) / 2.0) / smooth_weight_eval(chi, g.omega(k), 0.0);
  }
  return b;
}

HalfField probe_forcing(const HalfGrid& g, const BoundaryField& datum) {
  const HalfField F = trace_extension(g, {datum, BoundaryField(g.columns(), 0.0)}, chg::symbols().mu_minus);
  return apply_dminus(F);
}

ProbeTable dirichlet_failure_probe(const std::vector<std::pair<int, int>>& resolutions, const BoundaryCondition& bc,
                                   const ProbeDatum& d) {
  ProbeTable t;
  t.bc = bc.name;
  const OrderFunctionDiff mu_D(chg::symbols().mu_D);
  for (const auto& [K, Nn] : resolutions) {
    const HalfGrid g = probe_grid(K, Nn);
    const BoundaryField datum = borderline_datum(g, d, K);
    const HalfField f = probe_forcing(g, datum);
    ProbeRow row;
    row.K = K;
    row.Nn = Nn;
    row.trace_norm = boundary_norm(g, traces(dminus_inverse_plus(f), 1)[0], t2_D());
    row.expected = boundary_norm(g, datum, t2_D());
    const BoundaryField zero(g.columns(), 0.0);
    const HalfSolve s = solve_half_scalar(f, {zero, zero}, bc);
    row.solution_trace = boundary_norm(g, traces(s.u, 3)[2], t2_D());
    row.solution_norm = halfspace_norm(s.u, mu_D);
    row.data_norm = halfspace_norm(f, OrderFunctionDiff());
    row.ratio = row.solution_norm / row.data_norm;
    row.max_cond = s.diag.max_cond;
    t.rows.push_back(row);
  }
  return t;
}

double band_limited_ratio(int K, int Nn, int k_max, const BoundaryCondition& bc, const ProbeDatum& d) {
  const HalfGrid g = probe_grid(K, Nn);
  const HalfField f = probe_forcing(g, borderline_datum(g, d, k_max));
  const BoundaryField zero(g.columns(), 0.0);
  const HalfSolve s = solve_half_scalar(f, {zero, zero}, bc);
  return halfspace_norm(s.u, OrderFunctionDiff(chg::symbols().mu_D)) / halfspace_norm(f, OrderFunctionDiff());
}

}  // namespace maxreg
