#pragma once

#include <string>

#include "dcoupler/evolve.hpp"
#include "dcoupler/hamiltonians.hpp"
#include "dcoupler/swap_fit.hpp"

namespace dcoupler {

/// How a dynamics run of a coupler model is driven and sampled.
struct DynamicsSetup {
  double horizon_us = 1.0;
  int samples = 401;
  double tolerance = 1e-9;
  std::string excite = "X1";  ///< "X1", "X2" or "none"
  bool effective_rwa = false;
  CouplerRepresentation representation = CouplerRepresentation::SpinLadder;
};

/// Per-run dynamics product: sampled observables plus the swap-rate fit
/// against the closed-form prediction.
struct DynamicsRun {
  SpacePtr space;
  TrajectoryRecord record;
  double closed_form_geff = 0.0;  ///< rad/us
  SwapFit fit;
  double truncation_top_max = 0.0;  ///< bosonized runs: max top-state pop
};

/// Standard observable set on a coupler space: P_Q1, P_Q2, Jz,
/// coupler_excitation, swap_corr (Im<x2^dag x1>), per-mode photon numbers,
/// and the truncation monitor for bosonized layers.
std::vector<Observable> standard_observables(const CouplerModel& model,
                                             const SpacePtr& space);

/// Product initial state: chosen circuit excited, coupler in the model
/// sector (SpinLadder) or vacuum (Bosonized/magnon).
cvec initial_state(const CouplerModel& model, const SpacePtr& space,
                   const std::string& excite);

DynamicsRun run_full_dynamics(const CouplerModel& model,
                              const DynamicsSetup& setup);

/// Evolves the effective Hamiltonian: Eq.-style single-layer form for one
/// layer (rwa per setup), the magnon-basis cascade form for several.
DynamicsRun run_effective_dynamics(const CouplerModel& model,
                                   const DynamicsSetup& setup);

struct CompareReport {
  DynamicsRun full;
  DynamicsRun effective;
  double max_population_deviation = 0.0;
  double coupler_ripple_full = 0.0;
  double coupler_ripple_effective = 0.0;
};

/// Runs both models on matched initial states and reports the maximum
/// absolute population deviation and the coupler-excitation ripple.
CompareReport compare_full_vs_effective(const CouplerModel& model,
                                        const DynamicsSetup& setup);

}  // namespace dcoupler
