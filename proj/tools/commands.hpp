#pragma once

#include "maxreg/order_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maxreg::cli {

enum ExitCode : int { kPass = 0, kError = 1, kFail = 2 };

struct Options {
  // global
  std::string grid;
  std::optional<double> lambda;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string config;

  // command-specific
  std::string kind;
  std::string subject;
  std::string mu;
  std::optional<double> floor;
  double tau = 1.0;
  double xi = 0.0;
  std::string bc = "neumann13";
  bool system = false;
  bool probe = false;
  int samples = 0;
  int levels = 2;
  int K = 0;
  int Nn = 0;
  int n = 1;
  int N = 0;
  double period = 2.0 * 3.14159265358979323846;
  std::vector<int> ks{16, 32, 64, 128};
  int onset = 16;
  double epsilon = 0.05;
  std::string field_out;

  double effective_lambda() const;
  json to_json() const;
  /// Values present in the config object replace the parsed flags.
  void apply_config(const json& j);
};

struct Report {
  std::string command;
  json results = json::object();
  std::string summary;
  std::string csv;  // main table; empty means the results are flattened
  bool pass = true;
};

/// Reads a JSON file, turning parse errors into "path:line:col: message".
json load_json_file(const std::string& path);

Report cmd_polygon(const Options& o);
Report cmd_check(const Options& o);
Report cmd_chg(const Options& o);
Report cmd_solve(const Options& o);
Report cmd_probe(const Options& o);
/// Writes the CSV bundle for a stored report into o.out (a directory).
Report cmd_export(const Options& o);

/// Serializes report + config + provenance in the requested format.
std::string render(const Report& r, const Options& o);

}  // namespace maxreg::cli
