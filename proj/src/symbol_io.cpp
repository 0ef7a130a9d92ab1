#include "maxreg/symbol_io.hpp"

#include "maxreg/chg.hpp"
#include "maxreg/errors.hpp"

namespace maxreg {

PolySymbol poly_from_json(const json& j) {
  try {
    const int n = j.value("n", 1);
    const bool radial = j.value("radial", true);
    if (!j.contains("monomials") || j.at("monomials").empty()) throw ParseError("no monomials");
    std::vector<Monomial> ms;
    for (const auto& m : j.at("monomials")) {
      Monomial x;
      x.coeff = cplx(m.value("re", 0.0), m.value("im", 0.0));
      x.tau_power = m.value("i", 0);
      if (radial) {
        x.radial_power = m.value("r", 0);
      } else {
        x.alpha = m.at("alpha").get<std::vector<int>>();
      }
      ms.push_back(x);
    }
    return PolySymbol(n, radial, ms);
  } catch (const json::exception& e) {
    throw ParseError(std::string("symbol file: ") + e.what());
  }
}

json to_json(const PolySymbol& p) {
  json ms = json::array();
  for (const auto& m : p.monomials()) {
    json x{{"re", m.coeff.real()}, {"im", m.coeff.imag()}, {"i", m.tau_power}};
    if (p.radial()) x["r"] = m.radial_power;
    else x["alpha"] = m.alpha;
    ms.push_back(x);
  }
  return {{"n", p.n()}, {"radial", p.radial()}, {"monomials", ms}};
}

SymbolFn symbol_ref(const json& j) {
  if (j.is_number()) return SymbolFn::constant(j.get<double>());
  if (j.is_object()) {
    if (j.contains("monomials")) return poly_from_json(j).to_fn();
    return SymbolFn::constant(cplx(j.value("re", 0.0), j.value("im", 0.0)));
  }
  if (!j.is_string()) throw ParseError("bad symbol reference");
  const std::string s = j.get<std::string>();
  if (s == "0") return sym::zero();
  if (s == "1") return sym::one();
  if (s == "-1") return SymbolFn::constant(-1.0).named("-1");
  if (s == "tau") return sym::tau();
  if (s == "i*tau" || s == "itau") return sym::i_tau();
  if (s == "|xi|^2" || s == "xi2") return sym::xi_sq();
  if (s == "D" || s == "chg-D") return chg::symbols().D;
  if (s == "d0+") return chg::d0_plus_symbol();
  if (s == "d1+") return chg::d1_plus_symbol();
  if (s == "rho1+") return SymbolFn::radial([](double t, double x) { return chg::roots(t, x).rho1_plus; }, "rho1+", true);
  if (s == "rho2+") return SymbolFn::radial([](double t, double x) { return chg::roots(t, x).rho2_plus; }, "rho2+", true);
  throw ParseError("unknown symbol '" + s + "'");
}

MatrixSymbol matrix_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "chg-L" || s == "L") return chg::symbols().L;
    if (s == "chg-adjL" || s == "adjL") return chg::symbols().adjL;
    throw ParseError("unknown matrix symbol '" + s + "'");
  }
  const int m = j.at("m").get<int>();
  const auto& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != m) throw ParseError("matrix file: wrong number of rows");
  std::vector<SymbolFn> e;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != m) throw ParseError("matrix file: wrong row length");
    for (const auto& x : r) e.push_back(symbol_ref(x));
  }
  MatrixSymbol out(m, e);
  if (j.contains("rows") && j.contains("cols")) {
    std::vector<OrderFunctionDiff> s, t;
    for (const auto& x : j.at("rows")) s.push_back(order_diff_from_json(x));
    for (const auto& x : j.at("cols")) t.push_back(order_diff_from_json(x));
    out.with_orders(s, t);
  }
  return out;
}

}  // namespace maxreg
