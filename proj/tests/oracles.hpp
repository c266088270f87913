#pragma once

// Independent test oracles: dense eigensolves (Eigen) and brute-force
// Pauli-sum constructions on the full 2^N ensemble space. These provide the
// second route against which the collective-ladder implementation is
// checked; they must not reuse the ladder matrix elements.

#include <vector>

#include "dcoupler/model.hpp"
#include "dcoupler/sparse_op.hpp"

namespace dcoupler::test {

std::vector<double> dense_eigenvalues(const SparseOperator& op);

struct EigenSystem {
  std::vector<double> values;
  std::vector<cvec> vectors;  // one per eigenvalue, same order
};
EigenSystem dense_eigensystem(const SparseOperator& op);

/// Ensemble-only space q1..qN of two-level factors (dimension 2^N).
SpacePtr ensemble_space(int n_qubits);

/// sum_n sigma_n^op on an ensemble space.
SparseOperator pauli_collective(const SpacePtr& space, TwoLevelOp which);

/// Full-system space [X1, q1..qN, X2] with two-level circuits.
SpacePtr pauli_full_space(int n_qubits);

/// The system Hamiltonian assembled qubit by qubit (QQ case):
/// omega_1 n_1 + omega_2 n_2 + (omega_c/2) sum sigma^z
/// + g_m (x_m^dag + x_m) sum sigma^x + gc sum_pairs (s+s- + s-s+).
SparseOperator pauli_full_hamiltonian(const CouplerModel& model);

/// Columns of the symmetric-sector isometry: for k = 0..N the normalized
/// uniform superposition of all weight-k basis states of the ensemble space.
std::vector<cvec> symmetric_states(int n_qubits);

/// Multiplicity of the spin-j sector in (1/2)^(x)N.
int sector_multiplicity(int n_qubits, double j);

/// Product state of a pair register in the ensemble space
/// (|g> = |00>, |s> = (|10> - |01>)/sqrt(2) per adjacent pair).
cvec register_state(const SpacePtr& space, const std::string& pairs);

}  // namespace dcoupler::test
