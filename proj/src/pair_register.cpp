#include "dcoupler/pair_register.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dcoupler/hamiltonians.hpp"
#include "dcoupler/states.hpp"

namespace dcoupler {

PairRegister PairRegister::all_ground(int n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0)
    throw std::invalid_argument("register requires an even qubit count >= 2");
  PairRegister r;
  r.pairs.assign(n_qubits / 2, PairState::Ground);
  return r;
}

PairRegister PairRegister::from_string(const std::string& s) {
  PairRegister r;
  for (char c : s) {
    if (c == 'g')
      r.pairs.push_back(PairState::Ground);
    else if (c == 's')
      r.pairs.push_back(PairState::Singlet);
    else
      throw std::invalid_argument("register string may contain only 'g'/'s'");
  }
  if (r.pairs.empty())
    throw std::invalid_argument("register string must be non-empty");
  return r;
}

int PairRegister::singlet_count() const {
  return static_cast<int>(
      std::count(pairs.begin(), pairs.end(), PairState::Singlet));
}

std::string PairRegister::to_string() const {
  std::string s;
  for (PairState p : pairs) s += p == PairState::Ground ? 'g' : 's';
  return s;
}

PairRegister apply_pulses(const PairRegister& reg, const PulseCommand& cmd) {
  std::set<int> seen;
  for (int t : cmd.targets) {
    if (t < 0 || t >= static_cast<int>(reg.pairs.size()))
      throw std::invalid_argument("pulse target outside register");
    if (!seen.insert(t).second)
      throw std::invalid_argument("pulse targets must be disjoint");
  }
  PairRegister out = reg;
  for (int t : cmd.targets) {
    const PairState cur = out.pairs[t];
    if (cmd.direction == PulseDirection::Raise) {
      if (cur != PairState::Ground)
        throw InvalidTransition("Raise pulse on a pair already in the singlet");
      out.pairs[t] = PairState::Singlet;
    } else {
      if (cur != PairState::Singlet)
        throw InvalidTransition("Lower pulse on a pair already in the ground");
      out.pairs[t] = PairState::Ground;
    }
  }
  return out;
}

double register_to_geff(const PairRegister& reg, const CouplerModel& model) {
  if (model.layers != 1)
    throw std::invalid_argument("register control applies to a single layer");
  if (reg.n_qubits() != model.qubits_per_layer)
    throw std::invalid_argument("register size does not match the model");
  CouplerModel sectored = model;
  sectored.sector = {reg.j(), reg.m()};
  return effective_coupling_rate(sectored);
}

namespace {

/// max-entry norm of D[L] rho for pure rho = |psi><psi|:
/// D = 2 v v^dag - w psi^dag - psi w^dag with v = L psi, w = L^dag L psi.
double dissipator_image_norm(const SparseOperator& l, const cvec& psi) {
  const cvec v = l.apply(psi);
  const cvec w = l.adjoint().apply(v);
  double mx = 0.0;
  const std::size_t n = psi.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const cplx entry = 2.0 * v[r] * std::conj(v[c]) -
                         w[r] * std::conj(psi[c]) - psi[r] * std::conj(w[c]);
      mx = std::max(mx, std::abs(entry));
    }
  return mx;
}

}  // namespace

SubradianceReport verify_subradiance(const PairRegister& reg, double gamma,
                                     double gamma_phi) {
  SubradianceReport rep;
  const double j = reg.j();

  const SpacePtr ladder =
      make_space({HilbertFactor::spin_ladder("C", j)});
  const cvec psi = basis_state(ladder, std::vector<int>{0});  // m = -j
  const auto jm = collective_operator(ladder, "C", SpinOp::Jminus);
  const auto jz = collective_operator(ladder, "C", SpinOp::Jz);

  rep.j_lowering_norm = norm(jm.apply(psi));
  rep.d_jminus_norm = dissipator_image_norm(jm, psi);
  // Jz must act relative to its eigenvalue: D[Jz] rho vanishes for an
  // eigenstate, which the direct image computation confirms.
  rep.d_jz_norm = dissipator_image_norm(jz, psi);
  rep.weighted_norm =
      0.5 * gamma * rep.d_jminus_norm + 0.5 * gamma_phi * rep.d_jz_norm;

  // pairwise building block: the singlet is annihilated by sigma1- + sigma2-
  const SpacePtr pair = make_space(
      {HilbertFactor::two_level("q1"), HilbertFactor::two_level("q2")});
  cvec singlet(4, cplx(0.0, 0.0));
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  singlet[pair->flatten({1, 0})] = cplx(inv_rt2, 0.0);
  singlet[pair->flatten({0, 1})] = cplx(-inv_rt2, 0.0);
  const auto pair_lowering = two_level_operator(pair, "q1", TwoLevelOp::SigmaMinus) +
                             two_level_operator(pair, "q2", TwoLevelOp::SigmaMinus);
  rep.pair_lowering_norm = norm(pair_lowering.apply(singlet));
  return rep;
}

}  // namespace dcoupler
