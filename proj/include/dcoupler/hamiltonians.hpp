#pragma once

#include <array>

#include "dcoupler/model.hpp"
#include "dcoupler/sparse_op.hpp"

namespace dcoupler {

/// A frequency denominator (Delta, Sigma, or a magnon variant) vanished.
struct SingularDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CouplerRepresentation { SpinLadder, Bosonized };
enum class CouplerCase { RR, RQ, QQ };

CouplerCase coupler_case(const CouplerModel& model);

/// Composite space [X1, L1..LD, X2]. SpinLadder representation uses the
/// model sector's j for a single layer and j = N/2 per layer for cascades;
/// Bosonized uses BosonMode(boson_n_max) per layer.
SpacePtr coupler_space(const CouplerModel& model, CouplerRepresentation rep);

/// Composite space [X1, K1..KD, X2] of the magnon normal modes.
SpacePtr magnon_space(const CouplerModel& model);

/// Lowering operator of a circuit factor (sigma^- or a).
SparseOperator circuit_lowering(const SpacePtr& space,
                                const std::string& label);
/// Excitation number of a circuit factor (sigma^+ sigma^- or a^dag a).
SparseOperator circuit_number(const SpacePtr& space, const std::string& label);
/// x + x^dagger of a circuit factor.
SparseOperator circuit_quadrature(const SpacePtr& space,
                                  const std::string& label);

/// The system Hamiltonian: circuits, coupler layers, circuit-coupler
/// coupling g_m (x_m^dag + x_m) J^x including counter-rotating parts, and
/// the XY or Ising layer coupling. A single layer carries the intra-ensemble
/// exchange gc [(J+J- + J-J+)/2 - N/2]; cascades couple adjacent layers only.
SparseOperator build_full_hamiltonian(
    const CouplerModel& model,
    CouplerRepresentation rep = CouplerRepresentation::SpinLadder);

/// Second-order effective Hamiltonian of the single-layer coupler, term by
/// term: shifted frequencies chi_m^- (x_m + x_m^dag)^2 J^z / 2, the
/// J^z-conditioned cross coupling summed over both circuit indices, the gc
/// exchange, and the counter-rotating (chi_m^+/2)[x_m, x_m^dag](J^x)^2.
/// With rwa=true, J^z is replaced by its eigenvalue 2m and the (J^x)^2 term
/// dropped, leaving an XX model with shifted frequencies.
SparseOperator build_effective_hamiltonian(const CouplerModel& model,
                                           bool rwa);

/// Closed-form coupling and magnon data for a model.
struct CouplingCoefficients {
  std::array<double, 2> chi_plus{};   ///< rad/us
  std::array<double, 2> chi_minus{};  ///< rad/us
  double g_eff = 0.0;                 ///< rad/us
  std::vector<double> omega_k;        ///< magnon frequencies, rad/us
  std::array<std::vector<double>, 2> g_mk;           ///< circuit-magnon rates
  std::array<std::vector<double>, 2> lambda_plus;    ///< dimensionless
  std::array<std::vector<double>, 2> lambda_minus;   ///< dimensionless
};

/// Magnon transform and dispersive coefficients:
/// omega_k = omega_c + 2 gc N cos(k pi / (D+1)),
/// g_mk = sqrt(N) g_m sin(d_m k pi / (D+1)) sqrt(2/(D+1)) with d_1 = 1,
/// d_2 = D, and the lambda_mk^+- generators for the XY or Ising variant.
CouplingCoefficients coupling_coefficients(const CouplerModel& model);

/// g_eff in rad/us. Single layer: -sum_m (g1 g2 / 2)(1/Delta_m - 1/Sigma_m)
/// <J^z> with <J^z> = 2m. Cascade: sum_k g_1k g_2k (1/2) sum_m
/// (1/Delta_mk - 1/Sigma_mk) with all layers near ground.
double effective_coupling_rate(const CouplerModel& model);

/// Dispersive effective Hamiltonian of the cascaded coupler in the magnon
/// basis, including the Ising-only squeezing term when selected.
SparseOperator build_cascade_effective_hamiltonian(const CouplerModel& model);

/// Transducer design point: the ensemble size solving the optimal condition
/// (omega_1 - omega_2)/N = g2^2 (1/Sigma_2 - 1/Delta_2)
///                        - g1^2 (1/Sigma_1 - 1/Delta_1),
/// the effective rate there, and the photon transfer time. All inputs in
/// rad/us.
struct TransducerDesign {
  double n_opt = 0.0;
  double g_eff = 0.0;      ///< rad/us, evaluated at <J^z> = +N
  double base_time = 0.0;  ///< us, k = 0
  double transfer_time(int k) const { return base_time * (1 + 2 * k); }
};

TransducerDesign transducer_optimal_n(double omega1, double omega2,
                                      double omega_c, double g1, double g2);

}  // namespace dcoupler
