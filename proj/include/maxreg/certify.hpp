#pragma once

#include "maxreg/order_io.hpp"
#include "maxreg/symbol.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace maxreg {

/// Log-spaced certification grid over (tau, |xi|).
struct GridSpec {
  double lambda = 1.0;
  double tau_max = 1e6;
  int n_tau = 64;
  bool both_signs = true;
  bool include_zero_xi = true;
  double xi_min = 1e-3;
  double xi_max = 1e3;
  int n_xi = 64;  // counts the zero value when included
  int directions = 8;
  std::uint64_t seed = 1;

  std::vector<double> tau_magnitudes() const;
  std::vector<double> taus() const;  // signed, ascending within each sign
  std::vector<double> xis() const;

  /// "key=value,..." overrides with keys lambda, taumax, ntau, ximin, ximax, nxi, dirs, seed, signs.
  static GridSpec parse(const std::string& text);
  static GridSpec parse(const std::string& text, GridSpec base);
  json to_json() const;
};

struct GridPoint {
  double tau = 0.0;
  double xi = 0.0;
};

/// Ray along which |P|/W decays (or grows) with a fitted power-law exponent.
struct Witness {
  bool found = false;
  std::string ray;
  double exponent = 0.0;
  GridPoint end;
};

struct CertReport {
  std::string kind;
  std::string subject;
  GridSpec grid;
  std::size_t points = 0;
  double sup_ratio = 0.0;
  double inf_ratio = 0.0;
  GridPoint argsup, arginf;
  double floor = 0.0;
  std::size_t violations = 0;
  Witness witness;
  bool pass = false;

  json to_json() const;
};

inline constexpr double kWitnessSlope = 0.05;

/// C = max |P|/W_mu; passes when finite and no growth ray is confirmed.
CertReport upper_bound_certify(const SymbolFn& p, const OrderFunctionDiff& mu, const GridSpec& grid);

/// C_lambda = min |P|/W_mu over |tau| >= lambda; passes when C_lambda >= floor
/// (strictly positive for floor 0) and no decay ray is confirmed.
CertReport ellipticity_certify(const SymbolFn& p, const OrderFunctionDiff& mu, double lambda, const GridSpec& grid,
                               double floor = 0.0);

struct MixedOrderReport {
  std::vector<CertReport> entries;  // row-major
  CertReport determinant;
  OrderFunctionDiff delta;
  bool pass = false;

  json to_json() const;
};

MixedOrderReport mixed_order_certify(const MatrixSymbol& m, const GridSpec& grid);

}  // namespace maxreg
