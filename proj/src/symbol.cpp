#include "maxreg/symbol.hpp"

#include "maxreg/errors.hpp"

#include <cmath>
#include <map>
#include <memory>

namespace maxreg {

namespace {

cplx int_pow(double x, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= x;
  return r;
}

double norm_of(std::span<const double> xi) {
  double s = 0.0;
  for (double v : xi) s += v * v;
  return std::sqrt(s);
}

}  // namespace

PolySymbol::PolySymbol(int n, bool radial, std::vector<Monomial> monomials)
    : n_(n), radial_(radial), monomials_(std::move(monomials)) {
  if (n < 1) throw InvalidInput("spatial dimension must be positive");
  for (const auto& m : monomials_) {
    if (m.tau_power < 0 || m.radial_power < 0) throw InvalidInput("negative exponent in polynomial symbol");
    if (!radial_ && static_cast<int>(m.alpha.size()) != n_) throw InvalidInput("multi-index length differs from n");
    for (int a : m.alpha) {
      if (a < 0) throw InvalidInput("negative multi-index entry");
    }
  }
  normalize();
}

void PolySymbol::normalize() {
  std::map<std::vector<int>, cplx> acc;
  for (const auto& m : monomials_) {
    std::vector<int> key{m.tau_power};
    if (radial_) key.push_back(m.radial_power);
    else key.insert(key.end(), m.alpha.begin(), m.alpha.end());
    acc[key] += m.coeff;
  }
  monomials_.clear();
  for (const auto& [key, c] : acc) {
    if (c == cplx(0.0)) continue;
    Monomial m;
    m.coeff = c;
    m.tau_power = key[0];
    if (radial_) m.radial_power = key[1];
    else m.alpha.assign(key.begin() + 1, key.end());
    monomials_.push_back(m);
  }
}

cplx PolySymbol::operator()(double tau, std::span<const double> xi) const {
  if (radial_) return eval_radial(tau, norm_of(xi));
  if (static_cast<int>(xi.size()) != n_) throw InvalidInput("xi has wrong dimension");
  cplx s = 0.0;
  for (const auto& m : monomials_) {
    cplx t = m.coeff * int_pow(tau, m.tau_power);
    for (int d = 0; d < n_; ++d) t *= int_pow(xi[static_cast<std::size_t>(d)], m.alpha[static_cast<std::size_t>(d)]);
    s += t;
  }
  return s;
}

cplx PolySymbol::eval_radial(double tau, double xi_norm) const {
  if (!radial_) {
    std::vector<double> xi(static_cast<std::size_t>(n_), 0.0);
    xi[0] = xi_norm;
    return (*this)(tau, xi);
  }
  cplx s = 0.0;
  for (const auto& m : monomials_) s += m.coeff * int_pow(tau, m.tau_power) * int_pow(xi_norm, m.radial_power);
  return s;
}

PolySymbol PolySymbol::operator*(const PolySymbol& o) const {
  if (radial_ != o.radial_ || n_ != o.n_) throw InvalidInput("cannot multiply radial and multi-index symbols");
  std::vector<Monomial> out;
  for (const auto& a : monomials_) {
    for (const auto& b : o.monomials_) {
      Monomial m;
      m.coeff = a.coeff * b.coeff;
      m.tau_power = a.tau_power + b.tau_power;
      m.radial_power = a.radial_power + b.radial_power;
      if (!radial_) {
        m.alpha.resize(a.alpha.size());
        for (std::size_t d = 0; d < a.alpha.size(); ++d) m.alpha[d] = a.alpha[d] + b.alpha[d];
      }
      out.push_back(m);
    }
  }
  return PolySymbol(n_, radial_, out);
}

SymbolFn PolySymbol::to_fn() const {
  auto self = std::make_shared<PolySymbol>(*this);
  if (radial_) return SymbolFn::radial([self](double t, double x) { return self->eval_radial(t, x); }, "poly");
  return SymbolFn::full([self](double t, std::span<const double> xi) { return (*self)(t, xi); }, n_, "poly");
}

std::vector<QPoint> exponent_set(const PolySymbol& p) {
  std::vector<QPoint> out;
  for (const auto& m : p.monomials()) {
    int deg = m.radial_power;
    if (!p.radial()) {
      deg = 0;
      for (int a : m.alpha) deg += a;
    }
    QPoint q{Rational(deg), Rational(m.tau_power)};
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
  if (out.empty()) out.push_back(QPoint{});
  return out;
}

// ---------------------------------------------------------------------------

SymbolFn::SymbolFn() : radial_([](double, double) { return cplx(0.0); }), name_("0") {}

SymbolFn SymbolFn::radial(RadialFn f, std::string name, bool oscillatory_only) {
  SymbolFn s;
  s.radial_ = std::move(f);
  s.name_ = std::move(name);
  s.oscillatory_only_ = oscillatory_only;
  return s;
}

SymbolFn SymbolFn::full(FullFn f, int n, std::string name, bool oscillatory_only) {
  SymbolFn s;
  s.radial_ = nullptr;
  s.full_ = std::move(f);
  s.n_ = n;
  s.name_ = std::move(name);
  s.oscillatory_only_ = oscillatory_only;
  return s;
}

SymbolFn SymbolFn::constant(cplx c) {
  return radial([c](double, double) { return c; }, "const");
}

cplx SymbolFn::operator()(double tau, std::span<const double> xi) const {
  if (oscillatory_only_ && tau == 0.0) throw DomainError("symbol '" + name_ + "' is undefined at tau = 0");
  if (radial_) return radial_(tau, norm_of(xi));
  return full_(tau, xi);
}

cplx SymbolFn::at(double tau, double xi_norm) const {
  if (oscillatory_only_ && tau == 0.0) throw DomainError("symbol '" + name_ + "' is undefined at tau = 0");
  if (radial_) return radial_(tau, xi_norm);
  std::vector<double> xi(static_cast<std::size_t>(std::max(n_, 1)), 0.0);
  xi[0] = xi_norm;
  return full_(tau, xi);
}

SymbolFn SymbolFn::with_order(OrderFunctionDiff mu) const {
  SymbolFn s = *this;
  s.order_ = std::move(mu);
  return s;
}

SymbolFn SymbolFn::named(std::string name) const {
  SymbolFn s = *this;
  s.name_ = std::move(name);
  return s;
}

namespace {

template <class Op>
SymbolFn combine(const SymbolFn& a, const SymbolFn& b, Op op, const char* sep) {
  const bool osc = a.oscillatory_only() || b.oscillatory_only();
  std::string name = "(" + a.name() + sep + b.name() + ")";
  if (a.is_radial() && b.is_radial()) {
    return SymbolFn::radial([a, b, op](double t, double x) { return op(a.at(t, x), b.at(t, x)); }, name, osc);
  }
  int n = std::max(a.dimension(), b.dimension());
  return SymbolFn::full([a, b, op](double t, std::span<const double> xi) { return op(a(t, xi), b(t, xi)); }, n,
                        name, osc);
}

}  // namespace

SymbolFn SymbolFn::operator+(const SymbolFn& o) const {
  return combine(*this, o, [](cplx x, cplx y) { return x + y; }, "+");
}
SymbolFn SymbolFn::operator-(const SymbolFn& o) const {
  return combine(*this, o, [](cplx x, cplx y) { return x - y; }, "-");
}
SymbolFn SymbolFn::operator*(const SymbolFn& o) const {
  return combine(*this, o, [](cplx x, cplx y) { return x * y; }, "*");
}
SymbolFn SymbolFn::operator*(cplx c) const { return combine(*this, constant(c), [](cplx x, cplx y) { return x * y; }, "*"); }

namespace sym {
SymbolFn tau() { return SymbolFn::radial([](double t, double) { return cplx(t); }, "tau"); }
SymbolFn i_tau() { return SymbolFn::radial([](double t, double) { return cplx(0.0, t); }, "i*tau"); }
SymbolFn xi_sq() { return SymbolFn::radial([](double, double x) { return cplx(x * x); }, "|xi|^2"); }
SymbolFn one() { return SymbolFn::constant(1.0).named("1"); }
SymbolFn zero() { return SymbolFn(); }
}  // namespace sym

// ---------------------------------------------------------------------------

MatrixSymbol::MatrixSymbol(int m, std::vector<SymbolFn> entries) : m_(m), entries_(std::move(entries)) {
  if (m < 1 || static_cast<int>(entries_.size()) != m * m) throw InvalidInput("matrix symbol must be square");
}

MatrixSymbol& MatrixSymbol::with_orders(std::vector<OrderFunctionDiff> rows, std::vector<OrderFunctionDiff> cols) {
  if (static_cast<int>(rows.size()) != m_ || static_cast<int>(cols.size()) != m_) {
    throw InvalidInput("need one row and one column order function per index");
  }
  rows_ = std::move(rows);
  cols_ = std::move(cols);
  return *this;
}

OrderFunctionDiff MatrixSymbol::delta() const {
  if (!has_orders()) throw InvalidInput("matrix symbol has no order functions");
  OrderFunctionDiff d;
  for (int k = 0; k < m_; ++k) d = of_add(d, of_add(rows_[static_cast<std::size_t>(k)], cols_[static_cast<std::size_t>(k)]));
  return d;
}

std::vector<cplx> MatrixSymbol::eval(double tau, std::span<const double> xi) const {
  std::vector<cplx> v(entries_.size());
  for (std::size_t k = 0; k < entries_.size(); ++k) v[k] = entries_[k](tau, xi);
  return v;
}

std::vector<cplx> MatrixSymbol::eval_at(double tau, double xi_norm) const {
  std::vector<cplx> v(entries_.size());
  for (std::size_t k = 0; k < entries_.size(); ++k) v[k] = entries_[k].at(tau, xi_norm);
  return v;
}

MatrixSymbol MatrixSymbol::identity(int m) {
  std::vector<SymbolFn> e(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i) e[static_cast<std::size_t>(i * m + i)] = sym::one();
  return MatrixSymbol(m, e);
}

cplx laplace_det(const std::vector<cplx>& a, int m) {
  if (m == 1) return a[0];
  if (m == 2) return a[0] * a[3] - a[1] * a[2];
  cplx d = 0.0;
  std::vector<cplx> minor(static_cast<std::size_t>((m - 1) * (m - 1)));
  for (int c = 0; c < m; ++c) {
    if (a[static_cast<std::size_t>(c)] == cplx(0.0)) continue;
    std::size_t k = 0;
    for (int i = 1; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (j != c) minor[k++] = a[static_cast<std::size_t>(i * m + j)];
      }
    }
    cplx term = a[static_cast<std::size_t>(c)] * laplace_det(minor, m - 1);
    d += (c % 2 == 0) ? term : -term;
  }
  return d;
}

namespace {

bool all_radial(const MatrixSymbol& m) {
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (!m(i, j).is_radial()) return false;
  return true;
}

bool any_oscillatory(const MatrixSymbol& m) {
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (m(i, j).oscillatory_only()) return true;
  return false;
}

std::vector<cplx> minor_of(const std::vector<cplx>& a, int m, int row, int col) {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>((m - 1) * (m - 1)));
  for (int i = 0; i < m; ++i) {
    if (i == row) continue;
    for (int j = 0; j < m; ++j) {
      if (j != col) out.push_back(a[static_cast<std::size_t>(i * m + j)]);
    }
  }
  return out;
}

}  // namespace

SymbolFn det(const MatrixSymbol& m) {
  auto mat = std::make_shared<MatrixSymbol>(m);
  const bool osc = any_oscillatory(m);
  SymbolFn d;
  if (all_radial(m)) {
    d = SymbolFn::radial([mat](double t, double x) { return laplace_det(mat->eval_at(t, x), mat->size()); }, "det", osc);
  } else {
    d = SymbolFn::full([mat](double t, std::span<const double> xi) { return laplace_det(mat->eval(t, xi), mat->size()); },
                       m(0, 0).dimension(), "det", osc);
  }
  if (m.has_orders()) d = d.with_order(m.delta());
  return d;
}

MatrixSymbol adjugate(const MatrixSymbol& m) {
  const int n = m.size();
  auto mat = std::make_shared<MatrixSymbol>(m);
  const bool radial = all_radial(m);
  const bool osc = any_oscillatory(m);
  std::vector<SymbolFn> entries;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      if (n == 1) {
        entries.push_back(sym::one());
        continue;
      }
      std::string name = "adj" + std::to_string(i + 1) + std::to_string(j + 1);
      if (radial) {
        entries.push_back(SymbolFn::radial(
            [mat, i, j, n, sign](double t, double x) { return sign * laplace_det(minor_of(mat->eval_at(t, x), n, j, i), n - 1); },
            name, osc));
      } else {
        entries.push_back(SymbolFn::full(
            [mat, i, j, n, sign](double t, std::span<const double> xi) {
              return sign * laplace_det(minor_of(mat->eval(t, xi), n, j, i), n - 1);
            },
            m(0, 0).dimension(), name, osc));
      }
    }
  }
  MatrixSymbol adj(n, entries);
  if (m.has_orders()) {
    const OrderFunctionDiff delta = m.delta();
    std::vector<OrderFunctionDiff> rows, cols;
    for (int k = 0; k < n; ++k) {
      rows.push_back(of_sub(OrderFunctionDiff(), m.col_orders()[static_cast<std::size_t>(k)]));
      cols.push_back(of_sub(delta, m.row_orders()[static_cast<std::size_t>(k)]));
    }
    adj.with_orders(rows, cols);
  }
  return adj;
}

}  // namespace maxreg
