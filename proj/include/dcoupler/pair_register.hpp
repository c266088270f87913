#pragma once

#include <string>
#include <vector>

#include "dcoupler/model.hpp"
#include "dcoupler/sparse_op.hpp"

namespace dcoupler {

enum class PairState { Ground, Singlet };
enum class PulseDirection { Raise, Lower };

/// Digital-coupler state: each adjacent qubit pair is either in the ground
/// state |g> = |00> or the singlet |s> = (|10> - |01>)/sqrt(2). With k
/// singlet pairs the register maps to the collective sector
/// j = N/2 - k, m = -j, so <J^z> = -(N - 2k).
struct PairRegister {
  std::vector<PairState> pairs;

  static PairRegister all_ground(int n_qubits);
  /// Parse a string of 'g'/'s' characters, one per pair.
  static PairRegister from_string(const std::string& s);

  int n_qubits() const { return 2 * static_cast<int>(pairs.size()); }
  int singlet_count() const;
  double j() const { return (n_qubits() - 2 * singlet_count()) / 2.0; }
  double m() const { return -j(); }
  double jz() const { return 2.0 * m(); }
  std::string to_string() const;
};

/// A parallel block of single-photon pi-pulses: each targeted pair toggles
/// Ground <-> Raise in one atomic step.
struct PulseCommand {
  std::vector<int> targets;
  PulseDirection direction = PulseDirection::Raise;
};

struct InvalidTransition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Applies the command atomically. A Raise on a Singlet pair or a Lower on a
/// Ground pair is an invalid transition (the physical pi-pulse would leave
/// the digital state space) and throws.
PairRegister apply_pulses(const PairRegister& reg, const PulseCommand& cmd);

/// g_eff (rad/us) of the single-layer model evaluated at the register's
/// <J^z>; lies on the discrete grid {-N, -N+2, ..., 0} times the exchange
/// coefficient.
double register_to_geff(const PairRegister& reg, const CouplerModel& model);

struct SubradianceReport {
  double j_lowering_norm = 0.0;   ///< || J^- |j,-j> ||
  double d_jminus_norm = 0.0;     ///< max-entry norm of D[J^-] rho
  double d_jz_norm = 0.0;         ///< max-entry norm of D[J^z] rho
  double weighted_norm = 0.0;     ///< (gamma/2) D[J^-] + (gamma_phi/2) D[J^z]
  double pair_lowering_norm = 0.0;  ///< || (sigma_1^- + sigma_2^-) |s> ||
};

/// Verifies that the register's collective state is annihilated by the
/// collective dissipators and that the two-qubit singlet is annihilated by
/// its pair lowering operator.
SubradianceReport verify_subradiance(const PairRegister& reg, double gamma,
                                     double gamma_phi);

}  // namespace dcoupler
