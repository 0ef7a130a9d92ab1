#include "maxreg/boundary.hpp"

#include "maxreg/errors.hpp"
#include "maxreg/symbol_io.hpp"

#include <cmath>

namespace maxreg {

int BoundaryOperator::leading() const {
  for (int j = 3; j >= 0; --j)
    if (coeffs[static_cast<std::size_t>(j)]) return j;
  return -1;
}

cplx BoundaryOperator::coeff(int j, double tau, double xi_prime) const {
  const auto& c = coeffs[static_cast<std::size_t>(j)];
  return c ? c->at(tau, xi_prime) : cplx(0.0);
}

cplx BoundaryOperator::symbol(double tau, double xi_prime, cplx z) const {
  const cplx iz = cplx(0.0, 1.0) * z;
  cplx p = 1.0, s = 0.0;
  for (int j = 0; j < 4; ++j) {
    if (coeffs[static_cast<std::size_t>(j)]) s += coeff(j, tau, xi_prime) * p;
    p *= iz;
  }
  return s;
}

BoundaryOperator BoundaryOperator::trace(int j) {
  if (j < 0 || j > 3) throw InvalidInput("trace index must be in 0..3");
  BoundaryOperator b;
  b.coeffs[static_cast<std::size_t>(j)] = sym::one();
  return b;
}

BoundaryCondition dirichlet_pair() { return {"dirichlet", {BoundaryOperator::trace(0), BoundaryOperator::trace(1)}}; }

BoundaryCondition neumann_pair_13() { return {"neumann13", {BoundaryOperator::trace(1), BoundaryOperator::trace(3)}}; }

std::vector<BoundaryCondition> builtin_boundary_conditions() {
  return {dirichlet_pair(), neumann_pair_13(),
          {"navier02", {BoundaryOperator::trace(0), BoundaryOperator::trace(2)}},
          {"mixed12", {BoundaryOperator::trace(1), BoundaryOperator::trace(2)}}};
}

BoundaryCondition boundary_condition(const std::string& name) {
  for (auto& bc : builtin_boundary_conditions())
    if (bc.name == name) return bc;
  if (name == "neumann") return neumann_pair_13();
  throw InvalidInput("unknown boundary condition '" + name + "'");
}

OrderFunctionDiff target_order(const BoundaryOperator& op, const OrderFunction& nu) {
  if (op.chi) return *op.chi;
  const int j = op.leading();
  if (j < 0) return OrderFunctionDiff();
  return OrderFunctionDiff(trace_order_function(chg::symbols().mu_D + nu, j));
}

ExtendedBoundaryMatrix build_extended_matrix(const BoundaryCondition& bc, int m, const OrderFunction& nu) {
  if (m < 0) throw InvalidInput("m must be nonnegative");
  const auto& cs = chg::symbols();
  const OrderFunction top = cs.mu_D + nu;
  const OrderFunction low = cs.mu_minus + nu;
  if (!shape_queries(top).is_chg_shaped) throw UnsupportedShape("mu_D + nu is not CHG-shaped");
  const int size = 4 + m;
  if (shape_queries(top).ord != Rational(size)) throw InvalidInput("ord(mu_D + nu) must equal 4 + m");

  std::vector<SymbolFn> entries(static_cast<std::size_t>(size * size));
  const SymbolFn d[3] = {chg::d0_plus_symbol(), chg::d1_plus_symbol(), SymbolFn::constant(-1.0).named("-1")};
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      SymbolFn e;
      if (i < 2) {
        if (j < 4 && bc.ops[static_cast<std::size_t>(i)].coeffs[static_cast<std::size_t>(j)]) {
          e = *bc.ops[static_cast<std::size_t>(i)].coeffs[static_cast<std::size_t>(j)];
        }
      } else {
        const int k = j + 2 - i;  // same offset in 0- and 1-based indices
        if (k >= 0 && k <= 2) e = d[k];
      }
      entries[static_cast<std::size_t>(i * size + j)] = e;
    }
  }
  std::vector<OrderFunctionDiff> rows, cols;
  for (int i = 0; i < size; ++i) {
    if (i < 2) rows.push_back(of_sub(OrderFunctionDiff(), target_order(bc.ops[static_cast<std::size_t>(i)], nu)));
    else rows.push_back(of_sub(OrderFunctionDiff(), OrderFunctionDiff(trace_order_function(low, i - 2))));
    cols.push_back(OrderFunctionDiff(trace_order_function(top, i)));
  }
  ExtendedBoundaryMatrix b;
  b.m = m;
  b.matrix = MatrixSymbol(size, entries);
  b.matrix.with_orders(rows, cols);
  return b;
}

json LsReport::to_json() const {
  return {{"pass", pass}, {"min_abs_det", min_abs_det}, {"argmin", {argmin.tau, argmin.xi}}};
}

LsReport lopatinskii_check(const ExtendedBoundaryMatrix& b, const GridSpec& grid) {
  const SymbolFn d = det(b.matrix);
  LsReport r;
  r.min_abs_det = INFINITY;
  for (double tau : grid.taus()) {
    for (double x : grid.xis()) {
      const double v = std::abs(d.at(tau, x));
      if (v < r.min_abs_det) {
        r.min_abs_det = v;
        r.argmin = {tau, x};
      }
    }
  }
  r.pass = r.min_abs_det > 0.0;
  return r;
}

json ComplementingReport::to_json() const {
  return {{"size", 4 + extended.m}, {"mixed_order", mixed.to_json()}, {"pass", mixed.pass}};
}

ComplementingReport complementing_check(const BoundaryCondition& bc, const OrderFunction& nu, const GridSpec& grid) {
  const int m = static_cast<int>(std::llround(to_double(shape_queries(nu).ord)));
  ComplementingReport r;
  r.extended = build_extended_matrix(bc, m, nu);
  r.mixed = mixed_order_certify(r.extended.matrix, grid);
  return r;
}

std::array<cplx, 4> boundary_root_matrix(const BoundaryCondition& bc, double tau, double xi_prime) {
  const auto rt = chg::roots(tau, xi_prime);
  const cplx rho[2] = {rt.rho1_plus, rt.rho2_plus};
  std::array<cplx, 4> m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[static_cast<std::size_t>(2 * i + j)] = bc.ops[static_cast<std::size_t>(i)].symbol(tau, xi_prime, rho[j]);
  return m;
}

BoundaryFile boundary_from_json(const json& j) {
  BoundaryFile f;
  f.bc.name = j.value("name", std::string("custom"));
  const auto& ops = j.at("ops");
  if (ops.size() != 2) throw ParseError("boundary file needs exactly two operators");
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& c = ops[i].at("coeffs");
    if (c.size() != 4) throw ParseError("boundary operator needs four coefficient references");
    for (std::size_t k = 0; k < 4; ++k) {
      if (c[k].is_number() && c[k].get<double>() == 0.0) continue;
      if (c[k].is_string() && c[k].get<std::string>() == "0") continue;
      f.bc.ops[i].coeffs[k] = symbol_ref(c[k]);
    }
    if (ops[i].contains("chi")) f.bc.ops[i].chi = order_diff_from_json(ops[i].at("chi"));
  }
  f.m = j.value("m", 0);
  if (j.contains("nu")) f.nu = order_function_from_json(j.at("nu"));
  return f;
}

}  // namespace maxreg
