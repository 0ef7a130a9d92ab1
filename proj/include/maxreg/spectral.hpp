#pragma once

#include "maxreg/polygon.hpp"
#include "maxreg/symbol.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace maxreg {

/// Time frequencies (2 pi / T) k for |k| <= K, times a periodic box [-Lx/2, Lx/2)^n with N samples per side.
struct TorusGrid {
  double T = 2.0 * 3.14159265358979323846;
  int K = 32;
  int n = 1;
  double Lx = 2.0 * 3.14159265358979323846 * 16.0;
  int N = 128;

  void validate() const;
  int modes() const { return 2 * K + 1; }
  std::size_t slab() const;  // N^n
  double omega(int k) const;
  /// Wavenumber of DFT index j along one axis.
  double wavenumber(int j) const;
  /// Spatial frequency vector of flat slab index.
  std::vector<double> xi_of(std::size_t flat) const;
  double xi_norm_of(std::size_t flat) const;
  double x_of(int j) const { return -Lx / 2 + j * Lx / N; }
  /// L2 measure factor: T (Lx/N)^n.
  double cell() const;
};

/// Time-Fourier coefficients (k = -K..K) of spatial samples, k-major.
class Field {
 public:
  Field() = default;
  explicit Field(const TorusGrid& g);

  const TorusGrid& grid() const { return grid_; }
  cplx* slab(int k) { return data_.data() + static_cast<std::size_t>(k + grid_.K) * grid_.slab(); }
  const cplx* slab(int k) const { return data_.data() + static_cast<std::size_t>(k + grid_.K) * grid_.slab(); }
  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }
  bool oscillatory() const;

  /// f(t, x_j) by direct summation over time modes.
  cplx at_time(double t, std::size_t point) const;

 private:
  TorusGrid grid_;
  std::vector<cplx> data_;
};

Field project_oscillatory(const Field& f);

/// Spatial DFT of each slab (unnormalised forward); inverse divides by N^n.
Field to_spectral(const Field& f);
Field from_spectral(const Field& f);

Field apply_multiplier(const Field& f, const SymbolFn& m);

/// ||op[w_mu] f||_{L2}, discrete Plancherel with the smooth weight.
double norm_weighted(const Field& f, const OrderFunctionDiff& mu);
/// Direct quadrature of int_0^T int |f|^2 via time samples, for cross-checks.
double l2_quadrature(const Field& f, int time_samples);

Field solve_whole_scalar(const SymbolFn& p, const Field& f);
std::vector<Field> solve_whole_system(const MatrixSymbol& l, const std::vector<Field>& f);
/// Applies an m x m matrix symbol to a tuple of fields.
std::vector<Field> apply_matrix(const MatrixSymbol& l, const std::vector<Field>& u);

/// Random oscillatory trig-polynomial in time with Gaussian bumps in space.
Field random_field(const TorusGrid& g, std::uint64_t seed, int time_modes = 6);

void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);

}  // namespace maxreg
