#include "maxreg/spectral.hpp"

#include "maxreg/errors.hpp"
#include "maxreg/parallel.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <random>

namespace maxreg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Plans are created once per (n, N, sign) under a lock; fftw_execute_dft is
// thread-safe on distinct arrays.
fftw_plan plan_for(int n, int N, int sign) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, N, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const std::size_t size = n == 1 ? static_cast<std::size_t>(N) : static_cast<std::size_t>(N) * N;
  std::vector<cplx> scratch(size);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int dims[2] = {N, N};
  fftw_plan p = fftw_plan_dft(n, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

void transform(const TorusGrid& g, cplx* data, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan_for(g.n, g.N, sign), buf, buf);
}

void require_oscillatory(const Field& f, const char* op) {
  if (!f.oscillatory()) throw InvalidInput(std::string(op) + ": field has a nonzero k=0 slab");
}

void check_same_grid(const Field& a, const Field& b) {
  const auto &x = a.grid(), &y = b.grid();
  if (x.K != y.K || x.n != y.n || x.N != y.N || x.T != y.T || x.Lx != y.Lx) throw InvalidInput("fields live on different grids");
}

std::string frequency_text(const TorusGrid& g, int k, std::size_t flat) {
  std::string s = "k=" + std::to_string(k) + " xi=(";
  const auto xi = g.xi_of(flat);
  for (std::size_t d = 0; d < xi.size(); ++d) s += (d ? "," : "") + std::to_string(xi[d]);
  return s + ")";
}

// Visits every live (k != 0) spectral slab in parallel.
template <class Body>
void for_live_modes(const TorusGrid& g, Body body) {
  const int K = g.K;
  parallel_for(static_cast<std::size_t>(2 * K), [&](std::size_t i) {
    const int k = static_cast<int>(i) < K ? static_cast<int>(i) - K : static_cast<int>(i) - K + 1;
    body(k);
  });
}

}  // namespace

void TorusGrid::validate() const {
  if (K < 1) throw InvalidInput("TorusGrid: K must be >= 1");
  if (n != 1 && n != 2) throw InvalidInput("TorusGrid: n must be 1 or 2");
  if (N < 2 || !std::has_single_bit(static_cast<unsigned>(N))) throw InvalidInput("TorusGrid: N must be a power of two");
  if (!(Lx > 0.0) || !(T > 0.0)) throw InvalidInput("TorusGrid: T and Lx must be positive");
}

std::size_t TorusGrid::slab() const {
  return n == 1 ? static_cast<std::size_t>(N) : static_cast<std::size_t>(N) * static_cast<std::size_t>(N);
}

double TorusGrid::omega(int k) const { return 2.0 * kPi * k / T; }

double TorusGrid::wavenumber(int j) const {
  const int m = j < N / 2 ? j : j - N;
  return 2.0 * kPi * m / Lx;
}

std::vector<double> TorusGrid::xi_of(std::size_t flat) const {
  if (n == 1) return {wavenumber(static_cast<int>(flat))};
  return {wavenumber(static_cast<int>(flat / static_cast<std::size_t>(N))), wavenumber(static_cast<int>(flat % static_cast<std::size_t>(N)))};
}

double TorusGrid::xi_norm_of(std::size_t flat) const {
  double s = 0.0;
  for (double v : xi_of(flat)) s += v * v;
  return std::sqrt(s);
}

double TorusGrid::cell() const { return T * std::pow(Lx / N, n); }

Field::Field(const TorusGrid& g) : grid_(g) {
  g.validate();
  data_.assign(static_cast<std::size_t>(g.modes()) * g.slab(), cplx(0.0));
}

bool Field::oscillatory() const {
  const cplx* s = slab(0);
  for (std::size_t i = 0; i < grid_.slab(); ++i)
    if (s[i] != cplx(0.0)) return false;
  return true;
}

cplx Field::at_time(double t, std::size_t point) const {
  cplx s = 0.0;
  for (int k = -grid_.K; k <= grid_.K; ++k) s += slab(k)[point] * std::exp(cplx(0.0, grid_.omega(k) * t));
  return s;
}

Field project_oscillatory(const Field& f) {
  Field out = f;
  std::fill(out.slab(0), out.slab(0) + f.grid().slab(), cplx(0.0));
  return out;
}

Field to_spectral(const Field& f) {
  Field out = f;
  parallel_for(static_cast<std::size_t>(f.grid().modes()),
               [&](std::size_t i) { transform(f.grid(), out.slab(static_cast<int>(i) - f.grid().K), FFTW_FORWARD); });
  return out;
}

Field from_spectral(const Field& f) {
  Field out = f;
  const double scale = 1.0 / static_cast<double>(f.grid().slab());
  parallel_for(static_cast<std::size_t>(f.grid().modes()), [&](std::size_t i) {
    cplx* s = out.slab(static_cast<int>(i) - f.grid().K);
    transform(f.grid(), s, FFTW_BACKWARD);
    for (std::size_t p = 0; p < f.grid().slab(); ++p) s[p] *= scale;
  });
  return out;
}

Field apply_multiplier(const Field& f, const SymbolFn& m) {
  require_oscillatory(f, "apply_multiplier");
  const auto& g = f.grid();
  Field spec = to_spectral(f);
  for_live_modes(g, [&](int k) {
    cplx* s = spec.slab(k);
    const double tau = g.omega(k);
    for (std::size_t p = 0; p < g.slab(); ++p) {
      const auto xi = g.xi_of(p);
      const cplx v = m(tau, xi);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvaluationError("multiplier not finite at " + frequency_text(g, k, p));
      s[p] *= v;
    }
  });
  return from_spectral(spec);
}

double norm_weighted(const Field& f, const OrderFunctionDiff& mu) {
  require_oscillatory(f, "norm_weighted");
  const auto& g = f.grid();
  const Field spec = to_spectral(f);
  std::vector<double> partial(static_cast<std::size_t>(g.modes()), 0.0);
  for_live_modes(g, [&](int k) {
    const cplx* s = spec.slab(k);
    double acc = 0.0;
    for (std::size_t p = 0; p < g.slab(); ++p) {
      const double w = smooth_weight_eval(mu, g.omega(k), g.xi_norm_of(p));
      acc += std::norm(w * s[p]);
    }
    partial[static_cast<std::size_t>(k + g.K)] = acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return std::sqrt(total * g.cell() / static_cast<double>(g.slab()));
}

double l2_quadrature(const Field& f, int time_samples) {
  const auto& g = f.grid();
  if (time_samples < g.modes()) throw InvalidInput("l2_quadrature needs at least 2K+1 time samples");
  double total = 0.0;
  for (int m = 0; m < time_samples; ++m) {
    const double t = g.T * m / time_samples;
    for (std::size_t p = 0; p < g.slab(); ++p) total += std::norm(f.at_time(t, p));
  }
  return std::sqrt(total * g.cell() / time_samples);
}

Field solve_whole_scalar(const SymbolFn& p, const Field& f) {
  require_oscillatory(f, "solve_whole_scalar");
  const auto& g = f.grid();
  Field spec = to_spectral(f);
  for_live_modes(g, [&](int k) {
    cplx* s = spec.slab(k);
    for (std::size_t q = 0; q < g.slab(); ++q) {
      const cplx v = p(g.omega(k), g.xi_of(q));
      if (v == cplx(0.0) || !std::isfinite(std::abs(v))) throw SingularSymbol("symbol vanishes at " + frequency_text(g, k, q));
      s[q] /= v;
    }
  });
  return from_spectral(spec);
}

namespace {

std::vector<Field> matrix_action(const MatrixSymbol& l, const std::vector<Field>& in, bool invert) {
  const int m = l.size();
  if (static_cast<int>(in.size()) != m) throw InvalidInput("tuple length does not match matrix size");
  for (const auto& f : in) {
    require_oscillatory(f, invert ? "solve_whole_system" : "apply_matrix");
    check_same_grid(f, in[0]);
  }
  const auto& g = in[0].grid();
  std::vector<Field> spec;
  for (const auto& f : in) spec.push_back(to_spectral(f));
  std::vector<Field> out(static_cast<std::size_t>(m), Field(g));
  for_live_modes(g, [&](int k) {
    std::vector<cplx> x(static_cast<std::size_t>(m));
    for (std::size_t q = 0; q < g.slab(); ++q) {
      const auto xi = g.xi_of(q);
      std::vector<cplx> a = l.eval(g.omega(k), xi);
      for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i)] = spec[static_cast<std::size_t>(i)].slab(k)[q];
      if (invert) {
        // Cramer with cofactors keeps the adjugate/determinant structure explicit.
        const cplx d = laplace_det(a, m);
        if (d == cplx(0.0) || !std::isfinite(std::abs(d))) throw SingularSymbol("determinant vanishes at " + frequency_text(g, k, q));
        for (int i = 0; i < m; ++i) {
          std::vector<cplx> b = a;
          for (int r = 0; r < m; ++r) b[static_cast<std::size_t>(r * m + i)] = x[static_cast<std::size_t>(r)];
          out[static_cast<std::size_t>(i)].slab(k)[q] = laplace_det(b, m) / d;
        }
      } else {
        for (int i = 0; i < m; ++i) {
          cplx s = 0.0;
          for (int j = 0; j < m; ++j) s += a[static_cast<std::size_t>(i * m + j)] * x[static_cast<std::size_t>(j)];
          out[static_cast<std::size_t>(i)].slab(k)[q] = s;
        }
      }
    }
  });
  for (auto& f : out) f = from_spectral(f);
  return out;
}

}  // namespace

std::vector<Field> solve_whole_system(const MatrixSymbol& l, const std::vector<Field>& f) { return matrix_action(l, f, true); }

std::vector<Field> apply_matrix(const MatrixSymbol& l, const std::vector<Field>& u) { return matrix_action(l, u, false); }

Field random_field(const TorusGrid& g, std::uint64_t seed, int time_modes) {
  Field f(g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int km = std::min(time_modes, g.K);
  // widths >= 2 keep the spatial spectrum below 1e-12 at the Nyquist shell of the default box
  for (int k = -km; k <= km; ++k) {
    if (k == 0) continue;
    const double amp = std::exp(-0.3 * std::abs(k));
    for (int b = 0; b < 3; ++b) {
      const cplx c = amp * cplx(normal(rng), normal(rng));
      const double width = 2.0 + unit(rng);
      double center[2];
      for (double& x : center) x = (unit(rng) - 0.5) * g.Lx * 0.4;
      cplx* s = f.slab(k);
      for (std::size_t p = 0; p < g.slab(); ++p) {
        double r2 = 0.0;
        if (g.n == 1) {
          const double d = g.x_of(static_cast<int>(p)) - center[0];
          r2 = d * d;
        } else {
          const double d0 = g.x_of(static_cast<int>(p / static_cast<std::size_t>(g.N))) - center[0];
          const double d1 = g.x_of(static_cast<int>(p % static_cast<std::size_t>(g.N))) - center[1];
          r2 = d0 * d0 + d1 * d1;
        }
        s[p] += c * std::exp(-r2 / (2.0 * width * width));
      }
    }
  }
  return f;
}

namespace {

constexpr char kFieldMagic[4] = {'M', 'R', 'F', '1'};

template <class T>
void put(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little, "field I/O assumes a little-endian host");
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw ParseError("truncated field file");
  return v;
}

}  // namespace

void write_field(const std::string& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidInput("cannot open " + path + " for writing");
  os.write(kFieldMagic, 4);
  const auto& g = f.grid();
  put<double>(os, g.T);
  put<std::int32_t>(os, g.K);
  put<std::int32_t>(os, g.n);
  put<std::int32_t>(os, g.N);
  put<double>(os, g.Lx);
  for (const cplx& v : f.data()) {
    put<float>(os, static_cast<float>(v.real()));
    put<float>(os, static_cast<float>(v.imag()));
  }
}

Field read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidInput("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kFieldMagic, 4) != 0) throw ParseError(path + ": not a field file");
  TorusGrid g;
  g.T = get<double>(is);
  g.K = get<std::int32_t>(is);
  g.n = get<std::int32_t>(is);
  g.N = get<std::int32_t>(is);
  g.Lx = get<double>(is);
  Field f(g);
  for (cplx& v : f.data()) {
    const float re = get<float>(is);
    const float im = get<float>(is);
    v = cplx(re, im);
  }
  return f;
}

}  // namespace maxreg
