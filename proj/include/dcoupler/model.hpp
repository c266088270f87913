#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcoupler {

/// Raised when a model violates the dispersive-validity requirement
/// (|g_m / Delta_m| > 0.3) or a structural invariant.
struct DispersiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CircuitKind { Resonator, Qubit };

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// One of the two circuit elements being coupled. Frequencies are entered in
/// MHz (linear) and converted to angular rad/us internally.
struct CircuitElement {
  CircuitKind kind = CircuitKind::Qubit;
  double freq_mhz = 0.0;
  int n_max = 4;  ///< Fock truncation, resonators only.

  double omega() const { return kTwoPi * freq_mhz; }
  static CircuitElement qubit(double freq_mhz) {
    return {CircuitKind::Qubit, freq_mhz, 4};
  }
  static CircuitElement resonator(double freq_mhz, int n_max = 4) {
    return {CircuitKind::Resonator, freq_mhz, n_max};
  }
};

enum class LayerInteraction { XY, Ising };

/// Collective sector (j, m) of a coupler layer; m is the magnetic quantum
/// number, <J^z> = 2m.
struct SectorSpec {
  double j = 0.0;
  double m = 0.0;
};

/// Full parameter set of a D-coupler between two circuits: an ensemble of N
/// fixed-frequency qubits per layer, D layers, physical rates g1, g2 between
/// the circuits and the adjacent layers, and gc between/inside layers.
struct CouplerModel {
  CircuitElement x1, x2;
  double coupler_freq_mhz = 0.0;
  int qubits_per_layer = 2;  ///< N
  int layers = 1;            ///< D
  double g1_mhz = 0.0, g2_mhz = 0.0, gc_mhz = 0.0;
  LayerInteraction interaction = LayerInteraction::XY;
  SectorSpec sector{1.0, -1.0};
  int boson_n_max = 4;  ///< truncation for the bosonized representation

  double omega_c() const { return kTwoPi * coupler_freq_mhz; }
  double omega(int m) const { return m == 0 ? x1.omega() : x2.omega(); }
  double g(int m) const { return kTwoPi * (m == 0 ? g1_mhz : g2_mhz); }
  double gc() const { return kTwoPi * gc_mhz; }

  /// Model with the ensemble fully polarized down (all qubits ground).
  static CouplerModel all_ground(CircuitElement x1, CircuitElement x2,
                                 double coupler_freq_mhz, int n, double g1_mhz,
                                 double g2_mhz, double gc_mhz = 0.0,
                                 int layers = 1);
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  std::array<double, 2> g_over_delta{0.0, 0.0};
  std::array<double, 2> g_over_sigma{0.0, 0.0};
  std::array<double, 2> rwa_ratio{0.0, 0.0};  ///< chi_m^+ / omega_c
};

/// Computes the dispersive-validity ratios |g_m/Delta_m|, |g_m/Sigma_m| and
/// the RWA ratio chi_m^+/omega_c, collecting hard errors (ratio > 0.3,
/// malformed sector, non-positive frequencies) and warnings (odd N, RWA
/// ratio above 0.05).
ValidationReport validate(const CouplerModel& model);

/// Throws DispersiveError when validate() reports errors.
void ensure_valid(const CouplerModel& model);

}  // namespace dcoupler
