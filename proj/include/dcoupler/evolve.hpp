#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dcoupler/sparse_op.hpp"
#include "dcoupler/states.hpp"

namespace dcoupler {

/// Integration failed to meet its error contract within the step budget, or
/// a numerical precondition (norm, hermiticity, dimension cap) was violated.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Observable {
  std::string name;
  SparseOperator op;
  bool imaginary_part = false;  ///< record Im<O> instead of Re<O>
};

/// Collapse channel (L, r): contributes r * D[L] rho to the master equation
/// with D[L] rho = 2 L rho L^dag - L^dag L rho - rho L^dag L. The paper's
/// gamma/2 D[J^-] term corresponds to r = gamma/2.
struct CollapseChannel {
  SparseOperator op;
  double rate = 0.0;
};

struct EvolutionSpec {
  SparseOperator hamiltonian;
  double t_final = 1.0;  ///< us
  int samples = 101;     ///< sampled points including t = 0
  double tolerance = 1e-9;
  std::vector<Observable> observables;
  std::vector<CollapseChannel> channels;  ///< Lindblad evolution only
  int density_dim_cap = 4096;
  long long max_matvecs = 400'000'000;  ///< step budget for the error contract
  int store_states_every = 0;  ///< keep every k-th sampled state (0 = none)
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<std::string> channel_names;
  std::vector<std::vector<double>> channels;

  double norm_drift = 0.0;        ///< max | ||psi|| - 1 | (or |Tr rho - 1|)
  double energy_drift_rel = 0.0;  ///< unitary runs: max relative <H> drift
  double error_estimate = 0.0;    ///< accumulated integrator tolerance
  double positivity_floor = 0.0;  ///< Lindblad runs: min sampled eigenvalue
  long long steps = 0;
  long long matvecs = 0;

  std::vector<double> snapshot_times;  ///< when store_states_every > 0
  std::vector<cvec> state_snapshots;   ///< unitary runs
  std::vector<DenseMatrix> density_snapshots;  ///< Lindblad runs

  bool has_channel(const std::string& name) const;
  const std::vector<double>& channel(const std::string& name) const;
};

/// Closed-system propagation of i d/dt psi = H psi by Chebyshev expansion of
/// the stepwise propagator exp(-iHh) over Gershgorin spectral bounds. Exact
/// to the requested tolerance per step; norm and energy are conserved to the
/// truncation error. Deterministic.
TrajectoryRecord evolve_unitary(const EvolutionSpec& spec, const cvec& psi0);

/// Open-system propagation of the Born-Markov master equation
/// d rho/dt = -i[H, rho] + sum_c r_c D[L_c] rho with a dense density matrix
/// and an adaptive Dormand-Prince 5(4) integrator. The trace is a linear
/// invariant of every Runge-Kutta step and is preserved to roundoff.
TrajectoryRecord evolve_lindblad(const EvolutionSpec& spec,
                                 const DenseMatrix& rho0);

/// J_0..J_k_max(z) by the Miller downward recurrence (Chebyshev propagator
/// coefficients); exposed for tests.
std::vector<double> bessel_j_sequence(double z, int k_max);

}  // namespace dcoupler
