#include "commands.hpp"

#include "maxreg/boundary.hpp"
#include "maxreg/certify.hpp"
#include "maxreg/chg.hpp"
#include "maxreg/errors.hpp"
#include "maxreg/experiments.hpp"
#include "maxreg/probe.hpp"
#include "maxreg/symbol_io.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>
#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace maxreg::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kVersion = "1.0.0";

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool is_file(const std::string& s) { return std::filesystem::is_regular_file(s); }

GridSpec grid_of(const Options& o) {
  GridSpec g;
  g.lambda = o.effective_lambda();
  g.seed = o.seed;
  return o.grid.empty() ? g : GridSpec::parse(o.grid, g);
}

SymbolFn symbol_of(const std::string& s) {
  if (is_file(s)) return symbol_ref(load_json_file(s));
  return symbol_ref(json(s));
}

MatrixSymbol matrix_of(const std::string& s) {
  if (is_file(s)) return matrix_from_json(load_json_file(s));
  return matrix_from_json(json(s));
}

BoundaryFile boundary_of(const std::string& s) {
  if (is_file(s)) return boundary_from_json(load_json_file(s));
  BoundaryFile f;
  f.bc = boundary_condition(s);
  return f;
}

HalfGrid half_grid(const Options& o, int K, int Nn) {
  HalfGrid g;
  g.T = o.period;
  g.n = o.n;
  g.K = o.K > 0 ? o.K : K;
  g.N = o.N > 0 ? o.N : (o.n == 2 ? 16 : 32);
  g.xn.Nn = o.Nn > 0 ? o.Nn : Nn;
  g.xn.Ln = HalfGrid::default_length(g.T);
  g.validate();
  return g;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << csv_escape(prefix) << ',' << csv_escape(j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw InvalidInput("cannot write " + p.string());
  os << text;
}

}  // namespace

double Options::effective_lambda() const { return lambda ? *lambda : 2.0 * kPi / period; }

json Options::to_json() const {
  json j{{"grid", grid},     {"lambda", effective_lambda()}, {"seed", seed},       {"format", format},  {"kind", kind},
         {"subject", subject}, {"mu", mu},                  {"tau", tau},         {"xi", xi},          {"bc", bc},
         {"system", system}, {"probe", probe},              {"samples", samples}, {"levels", levels},  {"K", K},
         {"Nn", Nn},         {"n", n},                      {"N", N},             {"period", period},  {"ks", ks},
         {"onset", onset},   {"epsilon", epsilon}};
  if (floor) j["floor"] = *floor;
  return j;
}

void Options::apply_config(const json& j) {
  if (!j.is_object()) throw ParseError("config file must hold an object");
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  take("grid", grid);
  take("seed", seed);
  take("out", out);
  take("format", format);
  take("mu", mu);
  take("tau", tau);
  take("xi", xi);
  take("bc", bc);
  take("system", system);
  take("probe", probe);
  take("samples", samples);
  take("levels", levels);
  take("K", K);
  take("Nn", Nn);
  take("n", n);
  take("N", N);
  take("period", period);
  take("ks", ks);
  take("onset", onset);
  take("epsilon", epsilon);
  take("field_out", field_out);
  if (j.contains("lambda")) lambda = j.at("lambda").get<double>();
  if (j.contains("floor")) floor = j.at("floor").get<double>();
}

json load_json_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

Report cmd_polygon(const Options& o) {
  Report r;
  r.command = "polygon";
  const std::string& src = o.subject;
  if (src.empty()) throw InvalidInput("polygon needs a symbol file or builtin name");

  std::vector<QPoint> exps;
  if (is_file(src)) {
    exps = exponent_set(poly_from_json(load_json_file(src)));
  } else if (src == "chg-D" || src == "D") {
    exps = exponent_set(chg::determinant_poly(1));
  } else {
    throw InvalidInput("'" + src + "' is neither a file nor a builtin polynomial (chg-D)");
  }
  const NewtonPolygon poly = polygon_from_exponents(exps);
  const OrderFunction mu = order_function_of(poly);
  const ShapeInfo info = shape_queries(mu);

  json e = json::array();
  for (const auto& p : exps) e.push_back(to_json(p));
  json slopes = json::array();
  if (!poly.is_point())
    for (const auto& g : normal_slopes(poly)) slopes.push_back(to_string(g));
  r.results["exponents"] = e;
  r.results["polygon"] = to_json(poly);
  r.results["order_function"] = to_json(mu);
  r.results["order_function_text"] = format_order(mu);
  r.results["slopes"] = slopes;
  r.results["shape"] = {{"chg_shaped", info.is_chg_shaped}, {"regular_in_time", info.is_regular_in_time}, {"ord", to_string(info.ord)}};

  std::ostringstream csv;
  csv << "kind,j,r,s\n";
  for (const auto& v : poly.vertices()) csv << "polygon,," << to_string(v.r) << ',' << to_string(v.s) << '\n';
  json tr = json::array();
  if (info.is_chg_shaped) {
    const auto ord = info.ord.numerator() / info.ord.denominator();
    for (int j = 0; j < ord; ++j) {
      const OrderFunction t = trace_order_function(mu, j);
      tr.push_back({{"j", j}, {"order", to_json(t)}, {"text", format_order(t)}});
      for (const auto& v : polygon_of(t).vertices()) csv << "trace," << j << ',' << to_string(v.r) << ',' << to_string(v.s) << '\n';
    }
  }
  r.results["traces"] = tr;
  r.csv = csv.str();
  r.summary = "polygon with " + std::to_string(poly.vertices().size()) + " vertices, order " + format_order(mu) + ", ord " +
              to_string(info.ord) + (info.is_chg_shaped ? ", CHG-shaped" : "");
  return r;
}

Report cmd_check(const Options& o) {
  Report r;
  r.command = "check " + o.kind;
  const GridSpec grid = grid_of(o);
  const double lambda = o.effective_lambda();

  if (o.kind == "ellipticity" || o.kind == "upper") {
    const SymbolFn p = symbol_of(o.subject);
    OrderFunctionDiff mu;
    if (!o.mu.empty()) mu = parse_order_expr(o.mu);
    else if (p.order()) mu = *p.order();
    else throw InvalidInput("no order function: pass --mu");
    CertReport c;
    if (o.kind == "upper") {
      c = upper_bound_certify(p, mu, grid);
    } else {
      // the determinant carries its analytic floor min{1, lambda}/(2 sqrt 3)
      double floor = o.floor.value_or(0.0);
      if (!o.floor && (o.subject == "chg-D" || o.subject == "D")) floor = std::min(1.0, lambda) / (2.0 * std::sqrt(3.0));
      c = ellipticity_certify(p, mu, lambda, grid, floor);
    }
    r.results = c.to_json();
    r.pass = c.pass;
    r.summary = o.kind + " of " + o.subject + " against " + format_order(mu) + ": sup " + fmt(c.sup_ratio) + ", inf " +
                fmt(c.inf_ratio) + ", violations " + std::to_string(c.violations) + (c.pass ? ", pass" : ", FAIL");
  } else if (o.kind == "mixed-order") {
    const MixedOrderReport m = mixed_order_certify(matrix_of(o.subject), grid);
    r.results = m.to_json();
    r.pass = m.pass;
    r.summary = "mixed-order " + o.subject + ": delta " + format_order(m.delta) + ", det inf " + fmt(m.determinant.inf_ratio) +
                (m.pass ? ", pass" : ", FAIL");
  } else if (o.kind == "boundary") {
    const BoundaryFile bf = boundary_of(o.subject);
    const LsReport ls = lopatinskii_check(build_extended_matrix(bf.bc, bf.m, bf.nu), grid);
    const ComplementingReport cc = complementing_check(bf.bc, bf.nu, grid);
    r.results = {{"bc", bf.bc.name}, {"m", bf.m}, {"lopatinskii", ls.to_json()}, {"complementing", cc.to_json()}};
    r.pass = ls.pass && cc.mixed.pass;
    const Witness& w = cc.mixed.determinant.witness;
    r.summary = "boundary " + bf.bc.name + ": LS " + (ls.pass ? "pass" : "FAIL") + " (min |det| " + fmt(ls.min_abs_det) +
                "), complementing " + (cc.mixed.pass ? "pass" : "FAIL") + ", delta " + format_order(cc.mixed.delta) +
                (w.found ? ", witness " + w.ray + " exponent " + fmt(w.exponent) : "");
  } else if (o.kind == "roots") {
    const auto rb = chg::root_bounds_check(lambda, grid);
    r.results = rb.to_json();
    r.pass = rb.pass;
    r.summary = std::string("root bounds: ") + (rb.pass ? "pass" : "FAIL") + ", |Re Z(tau_max)| " + fmt(rb.re_z_at_tau_max);
  } else if (o.kind == "factor") {
    std::vector<double> xs;
    for (double x = -50.0; x <= 50.0; x += 2.5) xs.push_back(x);
    const double res = chg::factor_residual(grid, xs);
    r.results = {{"factor_residual", res}, {"tolerance", 1e-10}, {"grid", grid.to_json()}};
    r.pass = res < 1e-10;
    r.summary = "factor residual " + fmt(res) + (r.pass ? ", pass" : ", FAIL");
  } else {
    throw InvalidInput("unknown check '" + o.kind + "' (ellipticity, upper, mixed-order, boundary, roots, factor)");
  }
  return r;
}

Report cmd_chg(const Options& o) {
  Report r;
  r.command = "chg " + o.kind;
  if (o.kind == "roots") {
    const auto q = chg::roots(o.tau, o.xi);
    const auto c = chg::dplus_coeffs(o.tau, o.xi);
    const OrderFunctionDiff mu_D(chg::symbols().mu_D);
    json rs = json::object();
    const std::pair<const char*, cplx> named[] = {
        {"rho1_plus", q.rho1_plus}, {"rho2_plus", q.rho2_plus}, {"rho1_minus", q.rho1_minus}, {"rho2_minus", q.rho2_minus}};
    double worst = 0.0;
    for (const auto& [name, z] : named) {
      const double res = std::abs(chg::eval_D(o.tau, o.xi * o.xi, z)) /
                         weight_eval(mu_D, o.tau, std::sqrt(o.xi * o.xi + std::norm(z)));
      worst = std::max(worst, res);
      rs[name] = {{"value", complex_json(z)}, {"residual", res}};
    }
    r.results = {{"tau", o.tau}, {"xi", o.xi}, {"roots", rs}, {"d0_plus", complex_json(c.d0_plus)},
                 {"d1_plus", complex_json(c.d1_plus)}, {"max_residual", worst}};
    r.pass = worst < 1e-9;
    r.summary = "roots at tau " + fmt(o.tau) + ", |xi'| " + fmt(o.xi) + ": max residual " + fmt(worst);
  } else if (o.kind == "factor-check") {
    Options c = o;
    c.kind = "factor";
    r = cmd_check(c);
    r.command = "chg factor-check";
  } else if (o.kind == "symbols") {
    const auto& s = chg::symbols();
    r.results = {{"mu_D", to_json(s.mu_D)}, {"mu_plus", to_json(s.mu_plus)}, {"mu_minus", to_json(s.mu_minus)},
                 {"L_rows", json::array({format_order(s.L.row_orders()[0]), format_order(s.L.row_orders()[1])})},
                 {"L_cols", json::array({format_order(s.L.col_orders()[0]), format_order(s.L.col_orders()[1])})}};
    r.summary = "mu_D = " + format_order(s.mu_D) + ", mu_pm = " + format_order(s.mu_plus);
  } else {
    throw InvalidInput("unknown chg action '" + o.kind + "' (roots, factor-check, symbols)");
  }
  return r;
}

namespace {

Report probe_report(const Options& o, const std::string& command) {
  Report r;
  r.command = command;
  const BoundaryCondition bc = boundary_condition(o.bc);
  std::vector<std::pair<int, int>> res;
  for (int K : o.ks) res.push_back({K, o.Nn > 0 ? o.Nn * K / o.ks.front() : 8 * K});
  const ProbeDatum datum{o.onset, o.epsilon};
  const ProbeTable t = dirichlet_failure_probe(res, bc, datum);
  const double band = band_limited_ratio(o.ks.front(), 8 * o.ks.front(), 4, bc, {1, o.epsilon});
  r.results = t.to_json();
  r.results["band_limited_ratio"] = band;
  r.results["datum"] = {{"onset", datum.onset}, {"epsilon", datum.epsilon}};
  r.csv = t.csv();
  r.summary = "probe " + t.bc + ": trace growth " + fmt(t.trace_growth()) + (t.trace_monotone() ? " (monotone)" : " (not monotone)") +
              ", ratio growth " + fmt(t.ratio_growth()) + ", band-limited ratio " + fmt(band);
  return r;
}

}  // namespace

Report cmd_solve(const Options& o) {
  Report r;
  if (o.kind == "whole") {
    r.command = "solve whole";
    TorusGrid g;
    g.T = o.period;
    g.n = o.n;
    if (o.K > 0) g.K = o.K;
    if (o.N > 0) g.N = o.N;
    g.validate();
    const RecoveryReport rec = o.system ? whole_system_manufactured(g, o.seed) : whole_scalar_manufactured(g, o.seed);
    r.results = rec.to_json();
    r.results["problem"] = o.system ? "chg-L" : "chg-D";
    r.results["tolerance"] = 1e-9;
    r.pass = rec.error < 1e-9 && rec.residual < 1e-9;
    r.summary = std::string("whole-space ") + (o.system ? "system" : "scalar") + " manufactured: error " + fmt(rec.error) +
                ", residual " + fmt(rec.residual) + (r.pass ? ", pass" : ", FAIL");
    return r;
  }
  if (o.kind == "half") {
    if (o.probe) return probe_report(o, "solve half --probe");
    r.command = "solve half";
    const HalfGrid g = half_grid(o, 8, 256);
    const BoundaryCondition bc = boundary_condition(o.bc);
    const RecoveryReport rec = half_scalar_manufactured(g, bc, o.seed);
    r.results = rec.to_json();
    r.results["bc"] = bc.name;
    r.results["tolerance"] = 1e-7;
    r.pass = rec.error < 1e-7;
    r.summary = "half-space " + bc.name + " manufactured: error " + fmt(rec.error) + ", residual " + fmt(rec.residual) +
                (r.pass ? ", pass" : ", FAIL");
    if (!o.field_out.empty()) {
      const HalfField exact = random_exponential_field(g, o.seed);
      write_half_field(o.field_out, exact);
    }
    return r;
  }
  if (o.kind == "half-chg") {
    r.command = "solve half-chg";
    const HalfGrid g = half_grid(o, 8, 128);
    const RecoveryReport rec = half_chg_manufactured(g, o.seed);
    r.results["manufactured"] = rec.to_json();
    r.pass = rec.error < 1e-7 && rec.residual < 1e-7;
    r.summary = "CHG half-space manufactured: error " + fmt(rec.error) + ", residual " + fmt(rec.residual);
    if (o.samples > 0) {
      const EnsembleReport ens = chg_ensemble(g, o.samples, o.seed, o.levels);
      r.results["ensemble"] = ens.to_json();
      r.csv = ens.csv();
      r.pass = r.pass && std::isfinite(ens.median_change()) && ens.median_change() < 2.0;
      r.summary += ", ensemble median change " + fmt(ens.median_change());
      for (const auto& l : ens.levels) r.summary += ", median(K=" + std::to_string(l.K) + ") " + fmt(l.median);
    }
    r.summary += r.pass ? ", pass" : ", FAIL";
    return r;
  }
  throw InvalidInput("unknown solve problem '" + o.kind + "' (whole, half, half-chg)");
}

Report cmd_probe(const Options& o) { return probe_report(o, "probe"); }

Report cmd_export(const Options& o) {
  Report r;
  r.command = "export";
  if (o.out.empty()) throw InvalidInput("export needs --out DIR");
  const json rep = o.subject.empty() ? json::object() : load_json_file(o.subject);
  const json res = rep.contains("results") ? rep.at("results") : json::object();

  std::ostringstream vertices, trace_poly, curves;
  vertices << "j,r,s\n";
  trace_poly << "trace,j,r,s\n";
  curves << "series,K,Nn,value\n";
  std::size_t rows = 0;
  if (res.contains("polygon"))
    for (std::size_t j = 0; j < res.at("polygon").size(); ++j, ++rows)
      vertices << j << ',' << res.at("polygon")[j][0].get<std::string>() << ',' << res.at("polygon")[j][1].get<std::string>() << '\n';
  if (res.contains("traces"))
    for (const auto& t : res.at("traces")) {
      const auto& v = t.at("order").at("vertices");
      for (std::size_t j = 0; j < v.size(); ++j, ++rows)
        trace_poly << t.at("j").get<int>() << ',' << j << ',' << v[j][0].get<std::string>() << ',' << v[j][1].get<std::string>() << '\n';
    }
  if (res.contains("rows"))
    for (const auto& row : res.at("rows"))
      for (const char* key : {"trace_norm", "ratio"}) {
        curves << key << ',' << row.at("K").get<int>() << ',' << row.at("Nn").get<int>() << ',' << fmt(row.at(key).get<double>()) << '\n';
        ++rows;
      }
  if (res.contains("ensemble"))
    for (const auto& l : res.at("ensemble").at("levels")) {
      curves << "median_ratio," << l.at("K").get<int>() << ',' << l.at("Nn").get<int>() << ',' << fmt(l.at("median").get<double>()) << '\n';
      ++rows;
    }

  const std::filesystem::path dir(o.out);
  std::filesystem::create_directories(dir);
  write_text(dir / "polygon_vertices.csv", vertices.str());
  write_text(dir / "trace_polygons.csv", trace_poly.str());
  write_text(dir / "ratio_vs_resolution.csv", curves.str());
  r.results = {{"directory", dir.string()},
               {"files", json::array({"polygon_vertices.csv", "trace_polygons.csv", "ratio_vs_resolution.csv"})},
               {"rows", rows}};
  r.summary = "exported " + std::to_string(rows) + " rows to " + dir.string();
  return r;
}

std::string render(const Report& r, const Options& o) {
  const json config = o.to_json();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  if (o.format == "csv") {
    if (!r.csv.empty()) return r.csv;
    std::ostringstream os;
    os << "key,value\n";
    flatten(r.results, "", os);
    os << "pass," << (r.pass ? "true" : "false") << '\n';
    return os.str();
  }
  if (o.format != "json") throw InvalidInput("--format must be json or csv");
  json prov;
  prov["config_hash"] = std::string(hash);
  prov["version"] = std::string(kVersion);
  prov["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION);
  prov["boost"] = std::string(BOOST_LIB_VERSION);
  prov["fftw"] = std::string(fftw_version);
  json j;
  j["command"] = r.command;
  j["config"] = config;
  j["provenance"] = prov;
  j["results"] = r.results;
  j["summary"] = r.summary;
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

}  // namespace maxreg::cli
