#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maxreg {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& q);
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// A point (r, s) of the (xi-degree, tau-degree) quadrant.
struct QPoint {
  Rational r;
  Rational s;

  friend bool operator==(const QPoint&, const QPoint&) = default;
};

bool operator<(const QPoint& a, const QPoint& b);

/// Positive rational or +infinity.
struct Slope {
  Rational value{0};
  bool infinite = false;

  static Slope inf() { return {Rational(0), true}; }
  friend bool operator==(const Slope& a, const Slope& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator<(const Slope& a, const Slope& b) {
    if (a.infinite) return false;
    return b.infinite || a.value < b.value;
  }
};

std::string to_string(const Slope& g);

/// Convex polygon in the closed first quadrant containing the origin and the
/// axis projections of its points. Vertices are kept counter-clockwise from
/// (0,0) with collinear points removed.
class NewtonPolygon {
 public:
  NewtonPolygon();

  const std::vector<QPoint>& vertices() const { return vertices_; }
  bool is_point() const { return vertices_.size() == 1; }
  Rational ord() const;
  Rational height() const;

  /// Boundary chain from (ord, 0) to (0, height); the origin is included as an
  /// endpoint when the polygon is a segment on an axis.
  std::vector<QPoint> chain() const;

  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

 private:
  explicit NewtonPolygon(std::vector<QPoint> v) : vertices_(std::move(v)) {}
  friend NewtonPolygon polygon_from_exponents(const std::vector<QPoint>&);

  std::vector<QPoint> vertices_;
};

NewtonPolygon polygon_from_exponents(const std::vector<QPoint>& points);

/// Closed-polygon membership test.
bool contains(const NewtonPolygon& p, const QPoint& q);

/// gamma_j of consecutive chain vertices, strictly increasing.
std::vector<Slope> normal_slopes(const NewtonPolygon& p);

/// Continuous piecewise-linear function on (0, inf): b_j + gamma m_j on
/// [previous end, end_j).
class OrderFunction {
 public:
  struct Segment {
    Slope end;
    Rational b;
    Rational m;
    friend bool operator==(const Segment&, const Segment&) = default;
  };

  OrderFunction();  // identically zero
  explicit OrderFunction(std::vector<Segment> segments);

  static OrderFunction constant(const Rational& c);
  /// o_y(gamma) = max{1, y gamma}
  static OrderFunction elementary(const Rational& y);
  /// gamma -> gamma
  static OrderFunction identity();

  const std::vector<Segment>& segments() const { return segments_; }
  bool strictly_positive() const;

  Rational operator()(const Rational& gamma) const;
  double operator()(double gamma) const;

  OrderFunction operator+(const OrderFunction& o) const;
  OrderFunction operator-(const OrderFunction& o) const;
  OrderFunction operator*(const Rational& c) const;

  friend bool operator==(const OrderFunction&, const OrderFunction&) = default;

 private:
  void canonicalize();
  std::vector<Segment> segments_;
};

OrderFunction order_function_of(const NewtonPolygon& p);
NewtonPolygon polygon_of(const OrderFunction& mu);

/// Formal difference plus - minus of strictly positive order functions.
class OrderFunctionDiff {
 public:
  OrderFunctionDiff() = default;
  OrderFunctionDiff(OrderFunction plus);  // NOLINT: implicit by design
  OrderFunctionDiff(OrderFunction plus, OrderFunction minus);

  static OrderFunctionDiff constant(const Rational& c);

  const OrderFunction& plus() const { return plus_; }
  const OrderFunction& minus() const { return minus_; }
  const NewtonPolygon& plus_polygon() const { return plus_poly_; }
  const NewtonPolygon& minus_polygon() const { return minus_poly_; }

  OrderFunction pointwise() const { return plus_ - minus_; }
  bool is_positive() const;

  /// Cancels common elementary terms so the pair is as small as possible.
  OrderFunctionDiff reduced() const;

  friend bool operator==(const OrderFunctionDiff& a, const OrderFunctionDiff& b) {
    return a.plus_ + b.minus_ == b.plus_ + a.minus_;
  }

 private:
  OrderFunction plus_, minus_;
  NewtonPolygon plus_poly_, minus_poly_;
};

OrderFunctionDiff of_add(const OrderFunctionDiff& a, const OrderFunctionDiff& b);
OrderFunctionDiff of_sub(const OrderFunctionDiff& a, const OrderFunctionDiff& b);
OrderFunctionDiff of_scale(const OrderFunctionDiff& a, const Rational& c);

/// W = 1 + sum over non-origin vertices of |tau|^s |xi|^r, divided for diffs.
double weight_eval(const OrderFunctionDiff& mu, double tau, double xi_norm);
double weight_eval(const NewtonPolygon& p, double tau, double xi_norm);
/// w = sum over non-origin vertices of <tau>^s <xi>^r (1 for the point polygon).
double smooth_weight_eval(const OrderFunctionDiff& mu, double tau, double xi_norm);
double smooth_weight_eval(const NewtonPolygon& p, double tau, double xi_norm);

struct ElementaryTerm {
  Rational y;
  Rational e;
  friend bool operator==(const ElementaryTerm&, const ElementaryTerm&) = default;
};

std::vector<ElementaryTerm> elementary_decomposition(const OrderFunction& mu);
OrderFunction from_elementary(const std::vector<ElementaryTerm>& terms);

struct ChgShape {
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  Rational s2{0};
  Rational gamma_perp{0};
};

struct ShapeInfo {
  bool is_chg_shaped = false;
  bool is_regular_in_time = false;
  Rational ord{0};
  std::optional<ChgShape> chg;
};

ShapeInfo shape_queries(const OrderFunction& mu);

/// T_j(mu) for a CHG-shaped mu, 0 <= j < r1.
OrderFunction trace_order_function(const OrderFunction& mu, int j);

}  // namespace maxreg
