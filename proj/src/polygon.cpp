#include "maxreg/polygon.hpp"

#include "maxreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace maxreg {

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw ParseError("not a rational: '" + text + "'");
    }
    if (used != s.size()) throw ParseError("not a rational: '" + text + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Slope& g) { return g.infinite ? "inf" : to_string(g.value); }

bool operator<(const QPoint& a, const QPoint& b) {
  if (a.r != b.r) return a.r < b.r;
  return a.s < b.s;
}

namespace {

Rational cross(const QPoint& o, const QPoint& a, const QPoint& b) {
  return (a.r - o.r) * (b.s - o.s) - (a.s - o.s) * (b.r - o.r);
}

Slope edge_slope(const QPoint& a, const QPoint& b) {
  if (a.s == b.s) return Slope::inf();
  return Slope{(a.r - b.r) / (b.s - a.s), false};
}

}  // namespace

NewtonPolygon::NewtonPolygon() : vertices_{QPoint{}} {}

Rational NewtonPolygon::ord() const {
  Rational m(0);
  for (const auto& v : vertices_) m = std::max(m, v.r);
  return m;
}

Rational NewtonPolygon::height() const {
  Rational m(0);
  for (const auto& v : vertices_) m = std::max(m, v.s);
  return m;
}

std::vector<QPoint> NewtonPolygon::chain() const {
  std::vector<QPoint> c(vertices_.begin() + 1, vertices_.end());
  if (c.empty()) return {QPoint{}};
  if (c.front().r == Rational(0)) c.insert(c.begin(), QPoint{});
  if (c.back().s == Rational(0)) c.push_back(QPoint{});
  return c;
}

NewtonPolygon polygon_from_exponents(const std::vector<QPoint>& points) {
  std::vector<QPoint> pts{QPoint{}};
  for (const auto& p : points) {
    if (p.r < 0 || p.s < 0) {
      throw InvalidInput("exponent (" + to_string(p.r) + ", " + to_string(p.s) +
                         ") outside the first quadrant");
    }
    pts.push_back(p);
    pts.push_back({p.r, Rational(0)});
    pts.push_back({Rational(0), p.s});
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return NewtonPolygon(pts);

  // Andrew's monotone chain; starts at the lexicographic minimum, the origin.
  std::vector<QPoint> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const QPoint& p = pass == 0 ? pts[i] : pts[pts.size() - 1 - i];
      while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) {
        hull.pop_back();
      }
      hull.push_back(p);
    }
    hull.pop_back();
  }
  return NewtonPolygon(hull);
}

bool contains(const NewtonPolygon& p, const QPoint& q) {
  const auto& v = p.vertices();
  if (v.size() == 1) return q == v[0];
  if (v.size() == 2) {
    if (cross(v[0], v[1], q) != Rational(0)) return false;
    return std::min(v[0].r, v[1].r) <= q.r && q.r <= std::max(v[0].r, v[1].r) &&
           std::min(v[0].s, v[1].s) <= q.s && q.s <= std::max(v[0].s, v[1].s);
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (cross(v[i], v[(i + 1) % v.size()], q) < 0) return false;
  }
  return true;
}

std::vector<Slope> normal_slopes(const NewtonPolygon& p) {
  if (p.is_point()) throw InvalidInput("normal slopes of the point polygon");
  auto c = p.chain();
  std::vector<Slope> out;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) out.push_back(edge_slope(c[i], c[i + 1]));
  return out;
}

// ---------------------------------------------------------------------------

OrderFunction::OrderFunction() : segments_{{Slope::inf(), Rational(0), Rational(0)}} {}

OrderFunction::OrderFunction(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty() || !segments_.back().end.infinite) {
    throw InvalidInput("order function must extend to infinity");
  }
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    if (segments_[i + 1].end < segments_[i].end) throw InvalidInput("breakpoints not sorted");
    const auto& a = segments_[i];
    const auto& b = segments_[i + 1];
    if (!a.end.infinite && a.b + a.end.value * a.m != b.b + a.end.value * b.m &&
        !(a.end == Slope{Rational(0), false})) {
      throw InvalidInput("order function not continuous at " + to_string(a.end));
    }
  }
  canonicalize();
}

void OrderFunction::canonicalize() {
  std::vector<Segment> out;
  Slope start{Rational(0), false};
  for (const auto& s : segments_) {
    if (!(start < s.end)) continue;  // empty interval
    if (!out.empty() && out.back().b == s.b && out.back().m == s.m) {
      out.back().end = s.end;
    } else {
      out.push_back(s);
    }
    start = s.end;
  }
  segments_ = std::move(out);
}

OrderFunction OrderFunction::constant(const Rational& c) {
  return OrderFunction({{Slope::inf(), c, Rational(0)}});
}

OrderFunction OrderFunction::elementary(const Rational& y) {
  if (y < 0) throw InvalidInput("elementary order function needs y >= 0");
  if (y == Rational(0)) return constant(Rational(1));
  return OrderFunction({{Slope{1 / y, false}, Rational(1), Rational(0)},
                        {Slope::inf(), Rational(0), y}});
}

OrderFunction OrderFunction::identity() {
  return OrderFunction({{Slope::inf(), Rational(0), Rational(1)}});
}

bool OrderFunction::strictly_positive() const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].b < 0 || segments_[i].m < 0) return false;
    if (i > 0 && segments_[i].m < segments_[i - 1].m) return false;
  }
  return true;
}

Rational OrderFunction::operator()(const Rational& gamma) const {
  for (const auto& s : segments_) {
    if (Slope{gamma, false} < s.end) return s.b + gamma * s.m;
  }
  return segments_.back().b + gamma * segments_.back().m;
}

double OrderFunction::operator()(double gamma) const {
  for (const auto& s : segments_) {
    if (s.end.infinite || gamma < to_double(s.end.value)) return to_double(s.b) + gamma * to_double(s.m);
  }
  return 0.0;
}

OrderFunction OrderFunction::operator+(const OrderFunction& o) const {
  std::vector<Segment> out;
  std::size_t i = 0, j = 0;
  while (i < segments_.size() && j < o.segments_.size()) {
    const auto& a = segments_[i];
    const auto& b = o.segments_[j];
    Slope end = a.end < b.end ? a.end : b.end;
    out.push_back({end, a.b + b.b, a.m + b.m});
    if (a.end == end) ++i;
    if (b.end == end) ++j;
  }
  OrderFunction r;
  r.segments_ = std::move(out);
  r.canonicalize();
  return r;
}

OrderFunction OrderFunction::operator*(const Rational& c) const {
  OrderFunction r = *this;
  for (auto& s : r.segments_) {
    s.b *= c;
    s.m *= c;
  }
  r.canonicalize();
  return r;
}

OrderFunction OrderFunction::operator-(const OrderFunction& o) const { return *this + o * Rational(-1); }

OrderFunction order_function_of(const NewtonPolygon& p) {
  auto c = p.chain();
  std::vector<OrderFunction::Segment> segs;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Slope end = i + 1 < c.size() ? edge_slope(c[i], c[i + 1]) : Slope::inf();
    segs.push_back({end, c[i].r, c[i].s});
    if (end.infinite) break;
  }
  return OrderFunction(segs);
}

NewtonPolygon polygon_of(const OrderFunction& mu) {
  if (!mu.strictly_positive()) throw InvalidInput("polygon_of needs a strictly positive order function");
  std::vector<QPoint> pts;
  for (const auto& s : mu.segments()) pts.push_back({s.b, s.m});
  return polygon_from_exponents(pts);
}

// ---------------------------------------------------------------------------

OrderFunctionDiff::OrderFunctionDiff(OrderFunction plus) : OrderFunctionDiff(std::move(plus), OrderFunction()) {}

OrderFunctionDiff::OrderFunctionDiff(OrderFunction plus, OrderFunction minus)
    : plus_(std::move(plus)), minus_(std::move(minus)) {
  if (!plus_.strictly_positive() || !minus_.strictly_positive()) {
    throw InvalidInput("both parts of an order function difference must be strictly positive");
  }
  plus_poly_ = polygon_of(plus_);
  minus_poly_ = polygon_of(minus_);
}

OrderFunctionDiff OrderFunctionDiff::constant(const Rational& c) {
  if (c >= 0) return OrderFunctionDiff(OrderFunction::constant(c));
  return OrderFunctionDiff(OrderFunction(), OrderFunction::constant(-c));
}

bool OrderFunctionDiff::is_positive() const { return pointwise().strictly_positive(); }

namespace {

std::map<Rational, Rational> elementary_map(const OrderFunction& f) {
  std::map<Rational, Rational> m;
  if (f == OrderFunction()) return m;
  for (const auto& t : elementary_decomposition(f)) m[t.y] += t.e;
  return m;
}

}  // namespace

OrderFunctionDiff OrderFunctionDiff::reduced() const {
  if (is_positive()) return OrderFunctionDiff(pointwise());
  auto regular = [](const OrderFunction& f) { return f == OrderFunction() || shape_queries(f).is_regular_in_time; };
  if (!regular(plus_) || !regular(minus_)) return *this;
  auto p = elementary_map(plus_);
  auto m = elementary_map(minus_);
  std::vector<ElementaryTerm> pt, mt;
  for (auto& [y, e] : p) {
    auto it = m.find(y);
    Rational common = it == m.end() ? Rational(0) : std::min(e, it->second);
    if (e - common > 0) pt.push_back({y, e - common});
    if (it != m.end()) it->second -= common;
  }
  for (auto& [y, e] : m) {
    if (e > 0) mt.push_back({y, e});
  }
  return OrderFunctionDiff(from_elementary(pt), from_elementary(mt));
}

OrderFunctionDiff of_add(const OrderFunctionDiff& a, const OrderFunctionDiff& b) {
  return OrderFunctionDiff(a.plus() + b.plus(), a.minus() + b.minus());
}

OrderFunctionDiff of_sub(const OrderFunctionDiff& a, const OrderFunctionDiff& b) {
  return OrderFunctionDiff(a.plus() + b.minus(), a.minus() + b.plus());
}

OrderFunctionDiff of_scale(const OrderFunctionDiff& a, const Rational& c) {
  if (c <= 0) throw InvalidInput("order function scale must be positive");
  return OrderFunctionDiff(a.plus() * c, a.minus() * c);
}

double weight_eval(const NewtonPolygon& p, double tau, double xi_norm) {
  double w = 1.0;
  const double at = std::abs(tau);
  for (std::size_t i = 1; i < p.vertices().size(); ++i) {
    const auto& v = p.vertices()[i];
    w += std::pow(at, to_double(v.s)) * std::pow(xi_norm, to_double(v.r));
  }
  return w;
}

double weight_eval(const OrderFunctionDiff& mu, double tau, double xi_norm) {
  return weight_eval(mu.plus_polygon(), tau, xi_norm) / weight_eval(mu.minus_polygon(), tau, xi_norm);
}

double smooth_weight_eval(const NewtonPolygon& p, double tau, double xi_norm) {
  if (p.is_point()) return 1.0;
  const double bt = std::sqrt(1.0 + tau * tau);
  const double bx = std::sqrt(1.0 + xi_norm * xi_norm);
  double w = 0.0;
  for (std::size_t i = 1; i < p.vertices().size(); ++i) {
    const auto& v = p.vertices()[i];
    w += std::pow(bt, to_double(v.s)) * std::pow(bx, to_double(v.r));
  }
  return w;
}

double smooth_weight_eval(const OrderFunctionDiff& mu, double tau, double xi_norm) {
  return smooth_weight_eval(mu.plus_polygon(), tau, xi_norm) / smooth_weight_eval(mu.minus_polygon(), tau, xi_norm);
}

std::vector<ElementaryTerm> elementary_decomposition(const OrderFunction& mu) {
  auto info = shape_queries(mu);
  if (!info.is_regular_in_time) throw UnsupportedShape("elementary decomposition needs a polygon regular in time");
  auto c = polygon_of(mu).chain();
  std::vector<ElementaryTerm> out;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    Slope g = edge_slope(c[i], c[i + 1]);
    out.push_back({g.infinite ? Rational(0) : 1 / g.value, c[i].r - c[i + 1].r});
  }
  return out;
}

OrderFunction from_elementary(const std::vector<ElementaryTerm>& terms) {
  OrderFunction f;
  for (const auto& t : terms) f = f + OrderFunction::elementary(t.y) * t.e;
  return f;
}

ShapeInfo shape_queries(const OrderFunction& mu) {
  if (!mu.strictly_positive()) throw InvalidInput("shape queries need a strictly positive order function");
  NewtonPolygon p = polygon_of(mu);
  ShapeInfo info;
  info.ord = p.ord();
  if (p.is_point()) return info;
  auto slopes = normal_slopes(p);
  info.is_regular_in_time = slopes.front().infinite || slopes.front().value > 0;

  const auto& v = p.vertices();
  auto integral = [](const Rational& q) { return q.denominator() == 1; };
  ChgShape s;
  if (v.size() == 2 && v[1].s == Rational(0)) {
    s.r1 = v[1].r.numerator();
  } else if (v.size() == 3 && v[1].s == Rational(0) && v[2].r == Rational(0)) {
    s.r1 = v[1].r.numerator();
    s.s2 = v[2].s;
  } else if (v.size() == 4 && v[1].s == Rational(0) && v[3].r == Rational(0) && v[2].s == v[3].s) {
    if (!integral(v[2].r)) return info;
    s.r1 = v[1].r.numerator();
    s.r2 = v[2].r.numerator();
    s.s2 = v[2].s;
  } else {
    return info;
  }
  // r2 = r1 is a rectangle: not regular in time, no perpendicular slope
  if (!integral(v[1].r) || s.r1 <= 0 || s.r2 >= s.r1) return info;
  s.gamma_perp = s.s2 / Rational(s.r2 - s.r1);
  info.is_chg_shaped = true;
  info.chg = s;
  return info;
}

OrderFunction trace_order_function(const OrderFunction& mu, int j) {
  auto info = shape_queries(mu);
  if (!info.is_chg_shaped) throw UnsupportedShape("trace order functions need a CHG-shaped polygon");
  const ChgShape& s = *info.chg;
  if (j < 0 || j >= s.r1) throw InvalidInput("trace index " + std::to_string(j) + " out of range");
  const Rational y = -s.gamma_perp;
  const Rational half(1, 2);
  if (j < s.r2) {
    return OrderFunction::elementary(y) * Rational(s.r1 - s.r2) +
           OrderFunction::constant(Rational(s.r2 - j) - half);
  }
  return OrderFunction::elementary(y) * (Rational(s.r1 - j) - half);
}

}  // namespace maxreg
