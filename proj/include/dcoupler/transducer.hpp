#pragma once

#include <optional>
#include <vector>

#include "dcoupler/hamiltonians.hpp"

namespace dcoupler {

/// Microwave-optical transducer sweep: the coupler frequency runs over
/// [omega_c_lo, omega_c_hi] (log-spaced, endpoints included) while the two
/// mode frequencies stay fixed. All rates in rad/us.
struct SweepSpec {
  double omega1 = 0.0, omega2 = 0.0;
  double omega_c_lo = 0.0, omega_c_hi = 0.0;
  int points = 2;
  double g1 = 0.0, g2 = 0.0;
  std::optional<double> marker;  ///< extra grid point (e.g. NV splitting)
};

struct SweepRow {
  double omega_c = 0.0;
  bool valid = false;  ///< false marks a gap (singular or unphysical N)
  double n_opt = 0.0;
  double g_eff = 0.0;        ///< rad/us
  double t_transfer = 0.0;   ///< us, k = 0
  double residual = 0.0;     ///< relative optimal-condition residual
};

/// Evaluates transducer_optimal_n across the grid. Singular points and
/// non-positive N become gaps, not errors. Deterministic and monotone in
/// omega_c; jobs > 1 parallelizes rows without changing the output.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs = 1);

}  // namespace dcoupler
