#include "dcoupler/sparse_op.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcoupler/kernels.hpp"

namespace dcoupler {

namespace {

void require_compatible(const SparseOperator& a, const SparseOperator& b) {
  if (!compatible(a.space(), b.space()))
    throw std::invalid_argument("operator space mismatch");
}

}  // namespace

SparseOperator SparseOperator::zero(SpacePtr space) {
  SparseOperator op;
  op.space_ = std::move(space);
  op.dim_ = op.space_->dimension();
  op.row_ptr_.assign(op.dim_ + 1, 0);
  return op;
}

SparseOperator SparseOperator::identity(SpacePtr space) {
  const int dim = space->dimension();
  std::vector<Triplet> t;
  t.reserve(dim);
  for (int i = 0; i < dim; ++i) t.push_back({i, i, cplx(1.0, 0.0)});
  return from_triplets(std::move(space), std::move(t));
}

SparseOperator SparseOperator::from_triplets(SpacePtr space,
                                             std::vector<Triplet> entries) {
  SparseOperator op;
  op.space_ = std::move(space);
  op.dim_ = op.space_->dimension();
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= op.dim_ || t.col < 0 || t.col >= op.dim_)
      throw std::out_of_range("triplet index outside space dimension");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  op.row_ptr_.assign(op.dim_ + 1, 0);
  op.cols_.reserve(entries.size());
  op.vals_.reserve(entries.size());
  std::size_t i = 0;
  while (i < entries.size()) {
    const int r = entries[i].row, c = entries[i].col;
    cplx v = entries[i].value;
    for (++i; i < entries.size() && entries[i].row == r && entries[i].col == c;
         ++i)
      v += entries[i].value;
    if (v != cplx(0.0, 0.0)) {
      op.cols_.push_back(c);
      op.vals_.push_back(v);
      ++op.row_ptr_[r + 1];
    }
  }
  for (int r = 0; r < op.dim_; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
  return op;
}

SparseOperator SparseOperator::scaled(cplx factor) const {
  SparseOperator out = *this;
  if (factor == cplx(0.0, 0.0)) return zero(space_);
  for (auto& v : out.vals_) v *= factor;
  return out;
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<Triplet> t;
  t.reserve(vals_.size());
  for (int r = 0; r < dim_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      t.push_back({cols_[k], r, std::conj(vals_[k])});
  return from_triplets(space_, std::move(t));
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  require_compatible(a, b);
  SparseOperator out;
  out.space_ = a.space_;
  out.dim_ = a.dim_;
  out.row_ptr_.assign(a.dim_ + 1, 0);
  out.cols_.reserve(a.nnz() + b.nnz());
  out.vals_.reserve(a.nnz() + b.nnz());
  for (int r = 0; r < a.dim_; ++r) {
    int ka = a.row_ptr_[r], kb = b.row_ptr_[r];
    const int ea = a.row_ptr_[r + 1], eb = b.row_ptr_[r + 1];
    while (ka < ea || kb < eb) {
      int c;
      cplx v;
      if (kb >= eb || (ka < ea && a.cols_[ka] < b.cols_[kb])) {
        c = a.cols_[ka];
        v = a.vals_[ka++];
      } else if (ka >= ea || b.cols_[kb] < a.cols_[ka]) {
        c = b.cols_[kb];
        v = b.vals_[kb++];
      } else {
        c = a.cols_[ka];
        v = a.vals_[ka++] + b.vals_[kb++];
      }
      if (v != cplx(0.0, 0.0)) {
        out.cols_.push_back(c);
        out.vals_.push_back(v);
        ++out.row_ptr_[r + 1];
      }
    }
  }
  for (int r = 0; r < a.dim_; ++r) out.row_ptr_[r + 1] += out.row_ptr_[r];
  return out;
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  return a + b.scaled(cplx(-1.0, 0.0));
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  require_compatible(a, b);
  SparseOperator out;
  out.space_ = a.space_;
  out.dim_ = a.dim_;
  out.row_ptr_.assign(a.dim_ + 1, 0);
  std::vector<cplx> acc(a.dim_, cplx(0.0, 0.0));
  std::vector<int> touched;
  touched.reserve(64);
  for (int r = 0; r < a.dim_; ++r) {
    touched.clear();
    for (int ka = a.row_ptr_[r]; ka < a.row_ptr_[r + 1]; ++ka) {
      const int k = a.cols_[ka];
      const cplx av = a.vals_[ka];
      for (int kb = b.row_ptr_[k]; kb < b.row_ptr_[k + 1]; ++kb) {
        const int c = b.cols_[kb];
        if (acc[c] == cplx(0.0, 0.0)) touched.push_back(c);
        acc[c] += av * b.vals_[kb];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int c : touched) {
      if (acc[c] != cplx(0.0, 0.0)) {
        out.cols_.push_back(c);
        out.vals_.push_back(acc[c]);
        ++out.row_ptr_[r + 1];
      }
      acc[c] = cplx(0.0, 0.0);
    }
  }
  for (int r = 0; r < a.dim_; ++r) out.row_ptr_[r + 1] += out.row_ptr_[r];
  return out;
}

void SparseOperator::apply(const cvec& x, cvec& y) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("vector length does not match space");
  y.resize(dim_);
  kernels::active().csr_apply(static_cast<std::size_t>(dim_), row_ptr_.data(),
                              cols_.data(), vals_.data(), x.data(), y.data());
}

cvec SparseOperator::apply(const cvec& x) const {
  cvec y;
  apply(x, y);
  return y;
}

cplx SparseOperator::expectation(const cvec& psi) const {
  cvec tmp;
  apply(psi, tmp);
  return kernels::active().zdotc(psi.data(), tmp.data(), psi.size());
}

cplx SparseOperator::entry(int row, int col) const {
  if (row < 0 || row >= dim_ || col < 0 || col >= dim_)
    throw std::out_of_range("entry index out of range");
  const int lo = row_ptr_[row], hi = row_ptr_[row + 1];
  const auto it = std::lower_bound(cols_.begin() + lo, cols_.begin() + hi, col);
  if (it != cols_.begin() + hi && *it == col)
    return vals_[static_cast<std::size_t>(it - cols_.begin())];
  return {0.0, 0.0};
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (const auto& v : vals_) m = std::max(m, std::abs(v));
  return m;
}

double SparseOperator::hermiticity_error() const {
  double m = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      m = std::max(m, std::abs(vals_[k] - std::conj(entry(cols_[k], r))));
  return m;
}

bool SparseOperator::is_hermitian(double tol) const {
  return hermiticity_error() <= tol;
}

void SparseOperator::gershgorin_bounds(double& e_min, double& e_max) const {
  e_min = 0.0;
  e_max = 0.0;
  bool first = true;
  for (int r = 0; r < dim_; ++r) {
    double diag = 0.0, radius = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (cols_[k] == r)
        diag = vals_[k].real();
      else
        radius += std::abs(vals_[k]);
    }
    if (first) {
      e_min = diag - radius;
      e_max = diag + radius;
      first = false;
    } else {
      e_min = std::min(e_min, diag - radius);
      e_max = std::max(e_max, diag + radius);
    }
  }
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> t;
  t.reserve(vals_.size());
  for (int r = 0; r < dim_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      t.push_back({r, cols_[k], vals_[k]});
  return t;
}

std::vector<cplx> SparseOperator::to_dense() const {
  std::vector<cplx> d(static_cast<std::size_t>(dim_) * dim_, cplx(0.0, 0.0));
  for (int r = 0; r < dim_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      d[static_cast<std::size_t>(r) * dim_ + cols_[k]] = vals_[k];
  return d;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

namespace {

std::vector<Triplet> spin_ladder_entries(double j, SpinOp which) {
  const int dim = static_cast<int>(std::lround(2.0 * j)) + 1;
  std::vector<Triplet> t;
  auto m_of = [j](int i) { return -j + i; };
  switch (which) {
    case SpinOp::Jz:
      for (int i = 0; i < dim; ++i) t.push_back({i, i, cplx(2.0 * m_of(i), 0)});
      break;
    case SpinOp::Jplus:
      for (int i = 0; i + 1 < dim; ++i) {
        const double m = m_of(i);
        t.push_back({i + 1, i, cplx(std::sqrt(j * (j + 1) - m * (m + 1)), 0)});
      }
      break;
    case SpinOp::Jminus:
      for (int i = 1; i < dim; ++i) {
        const double m = m_of(i);
        t.push_back({i - 1, i, cplx(std::sqrt(j * (j + 1) - m * (m - 1)), 0)});
      }
      break;
    case SpinOp::Jx: {
      auto up = spin_ladder_entries(j, SpinOp::Jplus);
      auto dn = spin_ladder_entries(j, SpinOp::Jminus);
      up.insert(up.end(), dn.begin(), dn.end());
      return up;
    }
  }
  return t;
}

std::vector<Triplet> boson_entries(int n_max, BosonOp which) {
  std::vector<Triplet> t;
  switch (which) {
    case BosonOp::Annihilate:
      for (int n = 1; n <= n_max; ++n)
        t.push_back({n - 1, n, cplx(std::sqrt(double(n)), 0)});
      break;
    case BosonOp::Create:
      // |n_max> -> 0 under a^dagger: hard truncation
      for (int n = 0; n < n_max; ++n)
        t.push_back({n + 1, n, cplx(std::sqrt(double(n + 1)), 0)});
      break;
    case BosonOp::Number:
      for (int n = 1; n <= n_max; ++n) t.push_back({n, n, cplx(double(n), 0)});
      break;
    case BosonOp::TopState:
      t.push_back({n_max, n_max, cplx(1.0, 0.0)});
      break;
  }
  return t;
}

std::vector<Triplet> two_level_entries(TwoLevelOp which) {
  switch (which) {
    case TwoLevelOp::SigmaMinus:
      return {{0, 1, cplx(1, 0)}};
    case TwoLevelOp::SigmaPlus:
      return {{1, 0, cplx(1, 0)}};
    case TwoLevelOp::SigmaZ:
      return {{0, 0, cplx(-1, 0)}, {1, 1, cplx(1, 0)}};
    case TwoLevelOp::SigmaX:
      return {{0, 1, cplx(1, 0)}, {1, 0, cplx(1, 0)}};
    case TwoLevelOp::Number:
      return {{1, 1, cplx(1, 0)}};
  }
  return {};
}

}  // namespace

SparseOperator collective_operator(const SpacePtr& space,
                                   const std::string& label, SpinOp which) {
  const auto& f = space->factor(label);
  if (f.kind != FactorKind::SpinLadder)
    throw std::invalid_argument("factor '" + label + "' is not a SpinLadder");
  return embed_operator(space, label, spin_ladder_entries(f.j, which));
}

SparseOperator boson_operator(const SpacePtr& space, const std::string& label,
                              BosonOp which) {
  const auto& f = space->factor(label);
  if (f.kind != FactorKind::BosonMode)
    throw std::invalid_argument("factor '" + label + "' is not a BosonMode");
  return embed_operator(space, label, boson_entries(f.n_max, which));
}

SparseOperator two_level_operator(const SpacePtr& space,
                                  const std::string& label, TwoLevelOp which) {
  const auto& f = space->factor(label);
  if (f.kind != FactorKind::TwoLevel)
    throw std::invalid_argument("factor '" + label + "' is not a TwoLevel");
  return embed_operator(space, label, two_level_entries(which));
}

SparseOperator embed_operator(const SpacePtr& space, const std::string& label,
                              const std::vector<Triplet>& factor_entries) {
  const std::size_t fi = space->factor_index(label);
  const int df = space->factor(fi).dimension();
  const int stride = space->stride(fi);
  const int block = df * stride;
  const int blocks = space->dimension() / block;
  std::vector<Triplet> global;
  global.reserve(factor_entries.size() * static_cast<std::size_t>(blocks) *
                 static_cast<std::size_t>(stride));
  for (const auto& e : factor_entries) {
    if (e.row < 0 || e.row >= df || e.col < 0 || e.col >= df)
      throw std::out_of_range("factor entry outside factor dimension");
    for (int b = 0; b < blocks; ++b) {
      const int base = b * block;
      for (int s = 0; s < stride; ++s)
        global.push_back(
            {base + e.row * stride + s, base + e.col * stride + s, e.value});
    }
  }
  return SparseOperator::from_triplets(space, std::move(global));
}

}  // namespace dcoupler
