#include "dcoupler/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace dcoupler {

HilbertFactor HilbertFactor::two_level(std::string label) {
  HilbertFactor f;
  f.kind = FactorKind::TwoLevel;
  f.label = std::move(label);
  return f;
}

HilbertFactor HilbertFactor::boson_mode(std::string label, int n_max) {
  if (n_max < 1)
    throw std::invalid_argument("BosonMode requires n_max >= 1, got " +
                                std::to_string(n_max));
  HilbertFactor f;
  f.kind = FactorKind::BosonMode;
  f.label = std::move(label);
  f.n_max = n_max;
  return f;
}

HilbertFactor HilbertFactor::spin_ladder(std::string label, double j) {
  const double two_j = 2.0 * j;
  if (j < 0.0 || std::abs(two_j - std::round(two_j)) > 1e-9)
    throw std::invalid_argument("SpinLadder requires half-integer j >= 0");
  HilbertFactor f;
  f.kind = FactorKind::SpinLadder;
  f.label = std::move(label);
  f.j = std::round(two_j) / 2.0;
  return f;
}

int HilbertFactor::dimension() const {
  switch (kind) {
    case FactorKind::TwoLevel:
      return 2;
    case FactorKind::BosonMode:
      return n_max + 1;
    case FactorKind::SpinLadder:
      return static_cast<int>(std::lround(2.0 * j)) + 1;
  }
  return 0;
}

CompositeSpace::CompositeSpace(std::vector<HilbertFactor> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty())
    throw std::invalid_argument("composite space needs at least one factor");
  std::unordered_set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.label.empty())
      throw std::invalid_argument("factor labels must be non-empty");
    if (!seen.insert(f.label).second)
      throw std::invalid_argument("duplicate factor label '" + f.label + "'");
  }
  strides_.assign(factors_.size(), 1);
  for (std::size_t i = factors_.size(); i-- > 0;) {
    if (i + 1 < factors_.size())
      strides_[i] = strides_[i + 1] * factors_[i + 1].dimension();
  }
  dim_ = strides_[0] * factors_[0].dimension();
}

const HilbertFactor& CompositeSpace::factor(const std::string& label) const {
  return factors_[factor_index(label)];
}

std::size_t CompositeSpace::factor_index(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return i;
  throw std::invalid_argument("unknown factor label '" + label + "'");
}

bool CompositeSpace::has_factor(const std::string& label) const {
  for (const auto& f : factors_)
    if (f.label == label) return true;
  return false;
}

int CompositeSpace::flatten(const std::vector<int>& multi_index) const {
  if (multi_index.size() != factors_.size())
    throw std::invalid_argument("multi-index rank mismatch");
  int idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (multi_index[i] < 0 || multi_index[i] >= factors_[i].dimension())
      throw std::out_of_range("multi-index out of range for factor '" +
                              factors_[i].label + "'");
    idx += multi_index[i] * strides_[i];
  }
  return idx;
}

std::vector<int> CompositeSpace::unflatten(int index) const {
  if (index < 0 || index >= dim_)
    throw std::out_of_range("state index out of range");
  std::vector<int> multi(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    multi[i] = index / strides_[i];
    index -= multi[i] * strides_[i];
  }
  return multi;
}

bool CompositeSpace::operator==(const CompositeSpace& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& a = factors_[i];
    const auto& b = other.factors_[i];
    if (a.kind != b.kind || a.label != b.label || a.n_max != b.n_max ||
        a.j != b.j)
      return false;
  }
  return true;
}

SpacePtr make_space(std::vector<HilbertFactor> factors) {
  return std::make_shared<const CompositeSpace>(std::move(factors));
}

bool compatible(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace dcoupler
