#include "maxreg/order_io.hpp"

#include "maxreg/errors.hpp"

#include <cctype>

namespace maxreg {

json to_json(const QPoint& p) { return json::array({to_string(p.r), to_string(p.s)}); }

json to_json(const NewtonPolygon& p) {
  json v = json::array();
  for (const auto& q : p.vertices()) v.push_back(to_json(q));
  return v;
}

json to_json(const OrderFunction& mu) {
  json j;
  j["vertices"] = to_json(polygon_of(mu));
  auto info = shape_queries(mu);
  if (info.is_regular_in_time) {
    json e = json::array();
    for (const auto& t : elementary_decomposition(mu)) e.push_back({{"y", to_string(t.y)}, {"e", to_string(t.e)}});
    j["elementary"] = e;
  }
  j["text"] = format_order(mu);
  return j;
}

json to_json(const OrderFunctionDiff& mu) {
  if (mu.is_positive()) return to_json(mu.pointwise());
  return {{"plus", to_json(mu.plus())}, {"minus", to_json(mu.minus())}, {"text", format_order(mu)}};
}

OrderFunction order_function_from_json(const json& j) {
  if (j.is_string()) {
    auto d = parse_order_expr(j.get<std::string>());
    if (!d.is_positive()) throw ParseError("expected a strictly positive order function");
    return d.pointwise();
  }
  if (j.contains("vertices")) {
    std::vector<QPoint> pts;
    for (const auto& v : j.at("vertices")) {
      pts.push_back({parse_rational(v.at(0).get<std::string>()), parse_rational(v.at(1).get<std::string>())});
    }
    return order_function_of(polygon_from_exponents(pts));
  }
  if (j.contains("elementary")) {
    std::vector<ElementaryTerm> terms;
    for (const auto& t : j.at("elementary")) {
      terms.push_back({parse_rational(t.at("y").get<std::string>()), parse_rational(t.at("e").get<std::string>())});
    }
    return from_elementary(terms);
  }
  throw ParseError("order function needs 'vertices' or 'elementary'");
}

OrderFunctionDiff order_diff_from_json(const json& j) {
  if (j.is_object() && j.contains("plus")) {
    OrderFunction minus = j.contains("minus") ? order_function_from_json(j.at("minus")) : OrderFunction();
    return OrderFunctionDiff(order_function_from_json(j.at("plus")), minus);
  }
  if (j.is_string()) return parse_order_expr(j.get<std::string>());
  return OrderFunctionDiff(order_function_from_json(j));
}

namespace {

std::string format_positive(const OrderFunction& mu) {
  if (mu == OrderFunction()) return "0";
  auto info = shape_queries(mu);
  if (!info.is_regular_in_time) {
    // pure-time shapes: list vertices
    std::string s = "N{";
    bool first = true;
    for (const auto& v : polygon_of(mu).vertices()) {
      s += (first ? "(" : ", (") + to_string(v.r) + "," + to_string(v.s) + ")";
      first = false;
    }
    return s + "}";
  }
  std::string out;
  Rational constant(0);
  for (const auto& t : elementary_decomposition(mu)) {
    if (t.y == Rational(0)) {
      constant += t.e;
      continue;
    }
    if (!out.empty()) out += " + ";
    if (t.e != Rational(1)) out += to_string(t.e) + "*";
    out += "o(" + to_string(t.y) + ")";
  }
  if (constant != Rational(0) || out.empty()) {
    if (!out.empty()) out += " + ";
    out += to_string(constant);
  }
  return out;
}

class ExprParser {
 public:
  explicit ExprParser(std::string s) : s_(std::move(s)) {}

  OrderFunctionDiff parse() {
    OrderFunction plus, minus;
    bool negative = false;
    skip();
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    while (true) {
      OrderFunction t = term();
      (negative ? minus : plus) = (negative ? minus : plus) + t;
      skip();
      if (pos_ >= s_.size()) break;
      char c = s_[pos_++];
      if (c == '+') negative = false;
      else if (c == '-') negative = true;
      else fail("expected '+' or '-'");
    }
    return OrderFunctionDiff(plus, minus);
  }

 private:
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("order expression '" + s_ + "' column " + std::to_string(pos_ + 1) + ": " + what);
  }
  Rational number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    if (start == pos_) fail("expected a number");
    return parse_rational(s_.substr(start, pos_ - start));
  }
  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  OrderFunction atom() {
    std::string w = word();
    if (w == "o") {
      if (peek() != '(') fail("expected '(' after o");
      ++pos_;
      Rational y = number();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return OrderFunction::elementary(y);
    }
    if (w == "gamma") return OrderFunction::identity();
    if (w == "mu_D") return OrderFunction::elementary(Rational(1, 2)) * Rational(2) + OrderFunction::constant(Rational(2));
    if (w == "mu_pm" || w == "mu_plus" || w == "mu_minus") {
      return OrderFunction::elementary(Rational(1, 2)) + OrderFunction::constant(Rational(1));
    }
    fail("unknown name '" + w + "'");
  }
  OrderFunction term() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational k = number();
      char n = peek();
      if (n == '*') {
        ++pos_;
        return atom() * k;
      }
      if (std::isalpha(static_cast<unsigned char>(n))) return atom() * k;
      return OrderFunction::constant(k);
    }
    return atom();
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_order(const OrderFunction& mu) {
  if (mu.strictly_positive()) return format_positive(mu);
  std::string s;
  for (const auto& seg : mu.segments()) {
    s += "[" + to_string(seg.b) + " + " + to_string(seg.m) + "*gamma until " + to_string(seg.end) + "]";
  }
  return s;
}

std::string format_order(const OrderFunctionDiff& mu) {
  if (mu.is_positive()) return format_positive(mu.pointwise());
  auto r = mu.reduced();
  std::string minus = format_positive(r.minus());
  if (minus.find('+') != std::string::npos) minus = "(" + minus + ")";
  return format_positive(r.plus()) + " - " + minus;
}

OrderFunctionDiff parse_order_expr(const std::string& text) { return ExprParser(text).parse(); }

}  // namespace maxreg
