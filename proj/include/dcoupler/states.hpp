#pragma once

#include <map>
#include <string>

#include "dcoupler/sparse_op.hpp"

namespace dcoupler {

/// Product basis state |i_0, i_1, ...> over the declared factor order.
cvec basis_state(const SpacePtr& space, const std::vector<int>& occupation);

/// Same, addressing factors by label; unlisted factors default to index 0.
cvec basis_state(const SpacePtr& space,
                 const std::map<std::string, int>& occupation);

double norm(const cvec& v);
void normalize(cvec& v);

/// Dense complex matrix (row-major), used for density-matrix evolution.
struct DenseMatrix {
  int dim = 0;
  std::vector<cplx> a;

  static DenseMatrix zero(int dim);
  static DenseMatrix pure(const cvec& psi);

  cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
  const cplx& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * dim + c];
  }
  cplx trace() const;
  double purity() const;  // Tr(rho^2), real for Hermitian rho
  double max_abs() const;
};

/// Tr(O rho).
cplx trace_product(const SparseOperator& op, const DenseMatrix& rho);

/// Smallest eigenvalue of a Hermitian matrix via cyclic Jacobi on the real
/// symmetric embedding; intended for small dimensions (positivity floor).
double min_eigenvalue_hermitian(const DenseMatrix& rho);

}  // namespace dcoupler
