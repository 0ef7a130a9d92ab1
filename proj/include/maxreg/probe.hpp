#pragma once

#include "maxreg/halfspace.hpp"
#include "maxreg/order_io.hpp"

#include <string>
#include <utility>
#include <vector>

namespace maxreg {

struct ProbeRow {
  int K = 0;
  int Nn = 0;
  double trace_norm = 0.0;     // ||Tr_0 (D^-)^{-1}_+ f|| in the T_2(mu_D) norm
  double expected = 0.0;       // the same quantity summed directly from the datum
  double solution_trace = 0.0; // ||Tr_2 u|| in the T_2(mu_D) norm for the computed solution
  double solution_norm = 0.0;  // ||u||_{mu_D,+}
  double data_norm = 0.0;      // ||f||_{0,+}
  double ratio = 0.0;          // solution_norm / data_norm
  double max_cond = 0.0;
};

struct ProbeTable {
  std::string bc;
  std::vector<ProbeRow> rows;

  /// last / first of a column; monotone means strictly increasing.
  double trace_growth() const;
  double ratio_growth() const;
  bool trace_monotone() const;
  json to_json() const;
  std::string csv() const;
};

/// Power-law datum on xi' = 0: |g_k| = |k|^{-(1+eps)/2} / w_{T_0(mu_-)}(k) for onset <= |k| <= k_max.
/// Its T_0(mu_-) series converges for eps > 0 while the T_2(mu_D) series diverges for eps < 1/2.
struct ProbeDatum {
  int onset = 16;
  double epsilon = 0.05;
};

BoundaryField borderline_datum(const HalfGrid& g, const ProbeDatum& d, int k_max);

/// f = D^- F for the exponential lifting F of (g, 0) with respect to mu_-.
HalfField probe_forcing(const HalfGrid& g, const BoundaryField& datum);

ProbeTable dirichlet_failure_probe(const std::vector<std::pair<int, int>>& resolutions, const BoundaryCondition& bc,
                                   const ProbeDatum& datum = {});

/// Solve with the probe forcing restricted to |k| <= k_max (band-limited); returns ||u||_{mu_D,+}/||f||_{0,+}.
double band_limited_ratio(int K, int Nn, int k_max, const BoundaryCondition& bc, const ProbeDatum& datum = {1, 0.05});

}  // namespace maxreg
