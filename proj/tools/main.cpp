#include "commands.hpp"

#include "maxreg/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace maxreg::cli;

namespace {

// Output goes to a temporary first so a failing run leaves nothing behind.
void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const std::string tmp = out + ".partial";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw maxreg::InvalidInput("cannot write " + out);
    os << text;
  }
  std::filesystem::rename(tmp, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton-polygon symbol calculus and CHG half-space solvers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--grid", o.grid, "certification grid overrides: key=value,... (lambda, taumax, ntau, ximin, ximax, nxi, dirs, seed, signs)");
  app.add_option("--lambda", o.lambda, "lower time-frequency bound (default 2 pi / T)");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--out", o.out, "output file (export: directory)");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", o.config, "JSON config; its keys override flags")->check(CLI::ExistingFile);
  app.add_option("--period", o.period, "time period T");

  auto* polygon = app.add_subcommand("polygon", "Newton polygon, order function and trace table of a polynomial symbol");
  polygon->add_option("source", o.subject, "symbol file or builtin (chg-D)")->required();

  auto* check = app.add_subcommand("check", "grid certification; exit 0 pass, 2 fail");
  check->add_option("kind", o.kind, "ellipticity | upper | mixed-order | boundary | roots | factor")->required();
  check->add_option("subject", o.subject, "symbol, matrix or boundary reference (builtin name or file)");
  check->add_option("--mu", o.mu, "order function expression, e.g. '2*o(1/2) + 2'");
  check->add_option("--floor", o.floor, "required lower constant for ellipticity");

  auto* chg = app.add_subcommand("chg", "roots and factorization of the CHG determinant");
  chg->add_option("action", o.kind, "roots | factor-check | symbols")->required();
  chg->add_option("--tau", o.tau, "time frequency");
  chg->add_option("--xi", o.xi, "tangential frequency |xi'|");

  auto* solve = app.add_subcommand("solve", "whole-space and half-space solves with norm tables");
  solve->add_option("problem", o.kind, "whole | half | half-chg")->required();
  solve->add_flag("--system", o.system, "whole space: the 2x2 CHG system instead of the determinant");
  solve->add_option("--bc", o.bc, "boundary pair for half-space problems");
  solve->add_flag("--probe", o.probe, "half: run the Dirichlet divergence probe");
  solve->add_option("--samples", o.samples, "half-chg: random ensemble size");
  solve->add_option("--levels", o.levels, "half-chg: resolutions in the ensemble (K and Nn doubled each level)");
  solve->add_option("--field-out", o.field_out, "half: write the manufactured solution as a field file");

  auto* probe = app.add_subcommand("probe", "growth table of the borderline-datum probe");
  std::string probe_bc = "dirichlet";
  probe->add_option("--bc", probe_bc, "boundary pair (default dirichlet)");

  for (auto* sub : {solve, probe}) {
    sub->add_option("--K", o.K, "time modes |k| <= K");
    sub->add_option("--Nn", o.Nn, "x_n cells");
    sub->add_option("--n", o.n, "spatial dimension (1 or 2)");
    sub->add_option("--N", o.N, "tangential samples (n = 2)");
    sub->add_option("--ks", o.ks, "probe resolutions K");
    sub->add_option("--onset", o.onset, "probe datum: first live |k|");
    sub->add_option("--epsilon", o.epsilon, "probe datum: tail exponent margin");
  }

  auto* exp = app.add_subcommand("export", "CSV bundle (polygon vertices, trace polygons, ratio curves) from a report");
  exp->add_option("report", o.subject, "JSON report written by another command (omit for an empty bundle)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kError;
  }

  try {
    if (probe->parsed()) o.bc = probe_bc;
    if (!o.config.empty()) o.apply_config(load_json_file(o.config));
    Report r;
    if (polygon->parsed()) r = cmd_polygon(o);
    else if (check->parsed()) r = cmd_check(o);
    else if (chg->parsed()) r = cmd_chg(o);
    else if (solve->parsed()) r = cmd_solve(o);
    else if (probe->parsed()) r = cmd_probe(o);
    else if (exp->parsed()) {
      r = cmd_export(o);
      Options shown = o;
      shown.out.clear();
      emit(render(r, shown), "");
      return kPass;
    }
    emit(render(r, o), o.out);
    if (!o.out.empty()) std::cerr << r.summary << '\n';
    return r.pass ? kPass : kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
}
