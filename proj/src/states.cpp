#include "dcoupler/states.hpp"

#include <cmath>
#include <stdexcept>

#include "dcoupler/kernels.hpp"

namespace dcoupler {

cvec basis_state(const SpacePtr& space, const std::vector<int>& occupation) {
  cvec psi(space->dimension(), cplx(0.0, 0.0));
  psi[space->flatten(occupation)] = cplx(1.0, 0.0);
  return psi;
}

cvec basis_state(const SpacePtr& space,
                 const std::map<std::string, int>& occupation) {
  std::vector<int> multi(space->factor_count(), 0);
  for (const auto& [label, idx] : occupation)
    multi[space->factor_index(label)] = idx;
  return basis_state(space, multi);
}

double norm(const cvec& v) {
  return std::sqrt(kernels::active().nrm2_sq(
      reinterpret_cast<const double*>(v.data()), 2 * v.size()));
}

void normalize(cvec& v) {
  const double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  for (auto& c : v) c /= n;
}

DenseMatrix DenseMatrix::zero(int dim) {
  DenseMatrix m;
  m.dim = dim;
  m.a.assign(static_cast<std::size_t>(dim) * dim, cplx(0.0, 0.0));
  return m;
}

DenseMatrix DenseMatrix::pure(const cvec& psi) {
  DenseMatrix m = zero(static_cast<int>(psi.size()));
  for (int r = 0; r < m.dim; ++r)
    for (int c = 0; c < m.dim; ++c) m.at(r, c) = psi[r] * std::conj(psi[c]);
  return m;
}

cplx DenseMatrix::trace() const {
  cplx t(0.0, 0.0);
  for (int i = 0; i < dim; ++i) t += at(i, i);
  return t;
}

double DenseMatrix::purity() const {
  // Tr(rho^2) = sum_{rc} rho_rc * rho_cr = sum |rho_rc|^2 for Hermitian rho
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

cplx trace_product(const SparseOperator& op, const DenseMatrix& rho) {
  if (op.dim() != rho.dim)
    throw std::invalid_argument("operator/density dimension mismatch");
  // Tr(O rho) = sum_{r,c} O_rc rho_cr
  cplx t(0.0, 0.0);
  const auto& rp = op.row_ptr();
  const auto& cols = op.cols();
  const auto& vals = op.vals();
  for (int r = 0; r < op.dim(); ++r)
    for (int k = rp[r]; k < rp[r + 1]; ++k)
      t += vals[k] * rho.at(cols[k], r);
  return t;
}

double min_eigenvalue_hermitian(const DenseMatrix& rho) {
  // Real symmetric embedding [[Re, -Im], [Im, Re]]; eigenvalues come in
  // duplicated pairs equal to those of the Hermitian matrix.
  const int n = rho.dim;
  const int m = 2 * n;
  std::vector<double> s(static_cast<std::size_t>(m) * m, 0.0);
  auto S = [&](int r, int c) -> double& {
    return s[static_cast<std::size_t>(r) * m + c];
  };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const cplx v = rho.at(r, c);
      S(r, c) = v.real();
      S(r, c + n) = -v.imag();
      S(r + n, c) = v.imag();
      S(r + n, c + n) = v.real();
    }
  double scale = 0.0;
  for (const auto& v : s) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off = std::max(off, std::abs(S(p, q)));
    if (off < 1e-13 * scale) break;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const double apq = S(p, q);
        if (std::abs(apq) < 1e-15 * scale) continue;
        const double theta = 0.5 * (S(q, q) - S(p, p)) / apq;
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < m; ++k) {
          const double skp = S(k, p), skq = S(k, q);
          S(k, p) = c * skp - sn * skq;
          S(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < m; ++k) {
          const double spk = S(p, k), sqk = S(q, k);
          S(p, k) = c * spk - sn * sqk;
          S(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  double mn = S(0, 0);
  for (int i = 1; i < m; ++i) mn = std::min(mn, S(i, i));
  return mn;
}

}  // namespace dcoupler
