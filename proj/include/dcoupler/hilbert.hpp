#pragma once

#include <memory>
#include <string>
#include <vector>

namespace dcoupler {

enum class FactorKind { TwoLevel, BosonMode, SpinLadder };

/// One tensor factor of a composite Hilbert space. A SpinLadder(j) factor is
/// the (2j+1)-dimensional |j,m> ladder of a homogeneous qubit ensemble,
/// a BosonMode(n_max) a hard-truncated Fock space, TwoLevel a qubit.
struct HilbertFactor {
  FactorKind kind = FactorKind::TwoLevel;
  std::string label;
  int n_max = 0;    ///< BosonMode only: highest retained Fock state.
  double j = 0.0;   ///< SpinLadder only: collective angular quantum number.

  static HilbertFactor two_level(std::string label);
  static HilbertFactor boson_mode(std::string label, int n_max);
  static HilbertFactor spin_ladder(std::string label, double j);

  int dimension() const;
};

/// Ordered tensor product of factors with row-major index layout.
/// Immutable after construction; shared between operators via SpacePtr.
class CompositeSpace {
 public:
  explicit CompositeSpace(std::vector<HilbertFactor> factors);

  int dimension() const { return dim_; }
  std::size_t factor_count() const { return factors_.size(); }
  const HilbertFactor& factor(std::size_t i) const { return factors_[i]; }
  const HilbertFactor& factor(const std::string& label) const;
  std::size_t factor_index(const std::string& label) const;
  bool has_factor(const std::string& label) const;
  int stride(std::size_t i) const { return strides_[i]; }

  int flatten(const std::vector<int>& multi_index) const;
  std::vector<int> unflatten(int index) const;

  bool operator==(const CompositeSpace& other) const;

 private:
  std::vector<HilbertFactor> factors_;
  std::vector<int> strides_;
  int dim_ = 1;
};

using SpacePtr = std::shared_ptr<const CompositeSpace>;

SpacePtr make_space(std::vector<HilbertFactor> factors);

/// True when operators built on the two spaces may be combined.
bool compatible(const SpacePtr& a, const SpacePtr& b);

}  // namespace dcoupler
