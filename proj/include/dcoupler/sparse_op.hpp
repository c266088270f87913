#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dcoupler/hilbert.hpp"

namespace dcoupler {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

struct Triplet {
  int row = 0;
  int col = 0;
  cplx value{0.0, 0.0};
};

/// Immutable sparse operator on a shared composite space. Stored as CSR with
/// entries sorted by (row, col) and duplicates merged, so identical builds
/// produce bit-identical operators. Safe to share across threads.
class SparseOperator {
 public:
  SparseOperator() = default;  ///< empty placeholder; assign before use

  static SparseOperator zero(SpacePtr space);
  static SparseOperator identity(SpacePtr space);
  static SparseOperator from_triplets(SpacePtr space,
                                      std::vector<Triplet> entries);

  const SpacePtr& space() const { return space_; }
  int dim() const { return dim_; }
  std::size_t nnz() const { return vals_.size(); }

  SparseOperator scaled(cplx factor) const;
  SparseOperator adjoint() const;

  friend SparseOperator operator+(const SparseOperator& a,
                                  const SparseOperator& b);
  friend SparseOperator operator-(const SparseOperator& a,
                                  const SparseOperator& b);
  friend SparseOperator operator*(const SparseOperator& a,
                                  const SparseOperator& b);

  /// y = A x (kernels-dispatched CSR matvec).
  void apply(const cvec& x, cvec& y) const;
  cvec apply(const cvec& x) const;

  cplx expectation(const cvec& psi) const;
  cplx entry(int row, int col) const;

  double max_abs() const;
  /// max entrywise |A - A^dagger|.
  double hermiticity_error() const;
  bool is_hermitian(double tol = 1e-12) const;

  /// Gershgorin disc bounds on the (Hermitian) spectrum.
  void gershgorin_bounds(double& e_min, double& e_max) const;

  std::vector<Triplet> triplets() const;
  std::vector<cplx> to_dense() const;  // row-major, small spaces only

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& cols() const { return cols_; }
  const std::vector<cplx>& vals() const { return vals_; }

 private:
  SpacePtr space_;
  int dim_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> cols_;
  std::vector<cplx> vals_;
};

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

enum class SpinOp { Jplus, Jminus, Jz, Jx };
enum class BosonOp { Create, Annihilate, Number, TopState };
enum class TwoLevelOp { SigmaPlus, SigmaMinus, SigmaZ, SigmaX, Number };

/// Collective angular momentum operator on a SpinLadder factor, in the
/// J^alpha = sum_n sigma_n^alpha convention: Jz|j,m> = 2m|j,m>,
/// J+-|j,m> = sqrt(j(j+1) - m(m+-1)) |j,m+-1>, Jx = J+ + J-.
SparseOperator collective_operator(const SpacePtr& space,
                                   const std::string& label, SpinOp which);

/// Truncated ladder operators on a BosonMode factor; Create maps the top
/// state to zero (hard truncation). TopState is the |n_max><n_max|
/// projector used to monitor truncation quality.
SparseOperator boson_operator(const SpacePtr& space, const std::string& label,
                              BosonOp which);

SparseOperator two_level_operator(const SpacePtr& space,
                                  const std::string& label, TwoLevelOp which);

/// Embed a factor-local operator (triplets on the factor dimension) as
/// identity on every other factor.
SparseOperator embed_operator(const SpacePtr& space, const std::string& label,
                              const std::vector<Triplet>& factor_entries);

}  // namespace dcoupler
