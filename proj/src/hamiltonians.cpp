#include "dcoupler/hamiltonians.hpp"

#include <cmath>
#include <string>

namespace dcoupler {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

std::string layer_label(int d) { return "L" + std::to_string(d + 1); }
std::string magnon_label(int k) { return "K" + std::to_string(k + 1); }

HilbertFactor circuit_factor(const CircuitElement& el, const std::string& label) {
  if (el.kind == CircuitKind::Qubit) return HilbertFactor::two_level(label);
  return HilbertFactor::boson_mode(label, el.n_max);
}

void check_finite_inverse(double denom, const char* what) {
  if (denom == 0.0)
    throw SingularDenominator(std::string(what) + " vanishes");
}

}  // namespace

CouplerCase coupler_case(const CouplerModel& model) {
  const bool q1 = model.x1.kind == CircuitKind::Qubit;
  const bool q2 = model.x2.kind == CircuitKind::Qubit;
  if (q1 && q2) return CouplerCase::QQ;
  if (!q1 && !q2) return CouplerCase::RR;
  return CouplerCase::RQ;
}

SpacePtr coupler_space(const CouplerModel& model, CouplerRepresentation rep) {
  std::vector<HilbertFactor> factors;
  factors.push_back(circuit_factor(model.x1, "X1"));
  for (int d = 0; d < model.layers; ++d) {
    if (rep == CouplerRepresentation::SpinLadder) {
      const double j =
          model.layers == 1 ? model.sector.j : model.qubits_per_layer / 2.0;
      factors.push_back(HilbertFactor::spin_ladder(layer_label(d), j));
    } else {
      factors.push_back(
          HilbertFactor::boson_mode(layer_label(d), model.boson_n_max));
    }
  }
  factors.push_back(circuit_factor(model.x2, "X2"));
  return make_space(std::move(factors));
}

SpacePtr magnon_space(const CouplerModel& model) {
  std::vector<HilbertFactor> factors;
  factors.push_back(circuit_factor(model.x1, "X1"));
  for (int k = 0; k < model.layers; ++k)
    factors.push_back(
        HilbertFactor::boson_mode(magnon_label(k), model.boson_n_max));
  factors.push_back(circuit_factor(model.x2, "X2"));
  return make_space(std::move(factors));
}

SparseOperator circuit_lowering(const SpacePtr& space,
                                const std::string& label) {
  const auto& f = space->factor(label);
  if (f.kind == FactorKind::TwoLevel)
    return two_level_operator(space, label, TwoLevelOp::SigmaMinus);
  if (f.kind == FactorKind::BosonMode)
    return boson_operator(space, label, BosonOp::Annihilate);
  throw std::invalid_argument("factor '" + label + "' is not a circuit");
}

SparseOperator circuit_number(const SpacePtr& space, const std::string& label) {
  const auto& f = space->factor(label);
  if (f.kind == FactorKind::TwoLevel)
    return two_level_operator(space, label, TwoLevelOp::Number);
  if (f.kind == FactorKind::BosonMode)
    return boson_operator(space, label, BosonOp::Number);
  throw std::invalid_argument("factor '" + label + "' is not a circuit");
}

SparseOperator circuit_quadrature(const SpacePtr& space,
                                  const std::string& label) {
  const SparseOperator x = circuit_lowering(space, label);
  return x + x.adjoint();
}

SparseOperator build_full_hamiltonian(const CouplerModel& model,
                                      CouplerRepresentation rep) {
  ensure_valid(model);
  const SpacePtr space = coupler_space(model, rep);
  const int D = model.layers;
  const double n_qubits = model.qubits_per_layer;

  SparseOperator h = circuit_number(space, "X1").scaled(model.omega(0)) +
                     circuit_number(space, "X2").scaled(model.omega(1));
  const SparseOperator q1 = circuit_quadrature(space, "X1");
  const SparseOperator q2 = circuit_quadrature(space, "X2");

  if (rep == CouplerRepresentation::SpinLadder) {
    for (int d = 0; d < D; ++d)
      h = h + collective_operator(space, layer_label(d), SpinOp::Jz)
                  .scaled(model.omega_c() / 2.0);
    h = h + q1 * collective_operator(space, layer_label(0), SpinOp::Jx)
                     .scaled(model.g(0));
    h = h + q2 * collective_operator(space, layer_label(D - 1), SpinOp::Jx)
                     .scaled(model.g(1));
    if (model.gc() != 0.0) {
      if (D == 1) {
        // intra-ensemble pair exchange: sum over pairs of sigma+ sigma- =
        // (J+J- + J-J+)/2 - N/2 as an exact operator identity
        const auto jp = collective_operator(space, "L1", SpinOp::Jplus);
        const auto jm = collective_operator(space, "L1", SpinOp::Jminus);
        h = h + (jp * jm + jm * jp).scaled(model.gc() / 2.0) +
            SparseOperator::identity(space).scaled(-model.gc() * n_qubits / 2.0);
      } else {
        for (int d = 0; d + 1 < D; ++d) {
          if (model.interaction == LayerInteraction::XY) {
            const auto jp_d =
                collective_operator(space, layer_label(d), SpinOp::Jplus);
            const auto jm_d =
                collective_operator(space, layer_label(d), SpinOp::Jminus);
            const auto jp_n =
                collective_operator(space, layer_label(d + 1), SpinOp::Jplus);
            const auto jm_n =
                collective_operator(space, layer_label(d + 1), SpinOp::Jminus);
            h = h + (jp_d * jm_n + jm_d * jp_n).scaled(model.gc());
          } else {
            const auto jx_d =
                collective_operator(space, layer_label(d), SpinOp::Jx);
            const auto jx_n =
                collective_operator(space, layer_label(d + 1), SpinOp::Jx);
            h = h + (jx_d * jx_n).scaled(model.gc());
          }
        }
      }
    }
  } else {
    // Holstein-Primakoff bosonization near the fully polarized sector:
    // J+ ~ sqrt(N) a^dag, Jz = 2 a^dag a - N (constant dropped)
    const double root_n = std::sqrt(n_qubits);
    for (int d = 0; d < D; ++d)
      h = h + boson_operator(space, layer_label(d), BosonOp::Number)
                  .scaled(model.omega_c());
    auto layer_quad = [&](int d) {
      const auto a = boson_operator(space, layer_label(d), BosonOp::Annihilate);
      return a + a.adjoint();
    };
    h = h + (q1 * layer_quad(0)).scaled(root_n * model.g(0));
    h = h + (q2 * layer_quad(D - 1)).scaled(root_n * model.g(1));
    if (model.gc() != 0.0 && D >= 2) {
      for (int d = 0; d + 1 < D; ++d) {
        if (model.interaction == LayerInteraction::XY) {
          const auto a_d =
              boson_operator(space, layer_label(d), BosonOp::Annihilate);
          const auto a_n =
              boson_operator(space, layer_label(d + 1), BosonOp::Annihilate);
          h = h + (a_d.adjoint() * a_n + a_d * a_n.adjoint())
                      .scaled(n_qubits * model.gc());
        } else {
          h = h + (layer_quad(d) * layer_quad(d + 1))
                      .scaled(n_qubits * model.gc());
        }
      }
    }
  }
  return h;
}

SparseOperator build_effective_hamiltonian(const CouplerModel& model,
                                           bool rwa) {
  ensure_valid(model);
  if (model.layers != 1)
    throw std::invalid_argument(
        "single-layer effective form requires layers == 1; use the cascade "
        "effective Hamiltonian");
  const SpacePtr space =
      coupler_space(model, CouplerRepresentation::SpinLadder);
  const double n_qubits = model.qubits_per_layer;

  SparseOperator jz_eff =
      rwa ? SparseOperator::identity(space).scaled(2.0 * model.sector.m)
          : collective_operator(space, "L1", SpinOp::Jz);

  SparseOperator h = circuit_number(space, "X1").scaled(model.omega(0)) +
                     circuit_number(space, "X2").scaled(model.omega(1)) +
                     jz_eff.scaled(model.omega_c() / 2.0);

  double cross = 0.0;
  const std::array<SparseOperator, 2> quad = {circuit_quadrature(space, "X1"),
                                              circuit_quadrature(space, "X2")};
  const std::array<std::string, 2> labels = {"X1", "X2"};
  for (int m = 0; m < 2; ++m) {
    const double delta = model.omega(m) - model.omega_c();
    const double sigma = model.omega(m) + model.omega_c();
    check_finite_inverse(delta, "Delta_m");
    check_finite_inverse(sigma, "Sigma_m");
    const double chi_minus =
        -(model.g(m) * model.g(m)) * (1.0 / delta - 1.0 / sigma);
    h = h + (quad[m] * quad[m] * jz_eff).scaled(chi_minus / 2.0);
    cross += (model.g(0) * model.g(1) / 2.0) * (1.0 / sigma - 1.0 / delta);
    if (!rwa) {
      const double chi_plus =
          -(model.g(m) * model.g(m)) * (1.0 / delta + 1.0 / sigma);
      const SparseOperator x = circuit_lowering(space, labels[m]);
      const SparseOperator comm = commutator(x, x.adjoint());
      const SparseOperator jx = collective_operator(space, "L1", SpinOp::Jx);
      h = h + (comm * (jx * jx)).scaled(chi_plus / 2.0);
    }
  }
  h = h + (quad[0] * quad[1] * jz_eff).scaled(cross);

  if (model.gc() != 0.0) {
    const auto jp = collective_operator(space, "L1", SpinOp::Jplus);
    const auto jm = collective_operator(space, "L1", SpinOp::Jminus);
    h = h + (jp * jm + jm * jp).scaled(model.gc() / 2.0) +
        SparseOperator::identity(space).scaled(-model.gc() * n_qubits / 2.0);
  }
  return h;
}

CouplingCoefficients coupling_coefficients(const CouplerModel& model) {
  CouplingCoefficients cc;
  const int D = model.layers;
  const double n_qubits = model.qubits_per_layer;

  for (int m = 0; m < 2; ++m) {
    const double delta = model.omega(m) - model.omega_c();
    const double sigma = model.omega(m) + model.omega_c();
    check_finite_inverse(delta, "Delta_m");
    check_finite_inverse(sigma, "Sigma_m");
    const double g2 = model.g(m) * model.g(m);
    cc.chi_minus[m] = -g2 * (1.0 / delta - 1.0 / sigma);
    cc.chi_plus[m] = -g2 * (1.0 / delta + 1.0 / sigma);
  }

  cc.omega_k.resize(D);
  for (int m = 0; m < 2; ++m) {
    cc.g_mk[m].resize(D);
    cc.lambda_plus[m].resize(D);
    cc.lambda_minus[m].resize(D);
  }
  for (int k = 1; k <= D; ++k) {
    const double gk =
        n_qubits * model.gc() * std::cos(k * kPi / (D + 1));
    cc.omega_k[k - 1] = model.omega_c() + 2.0 * gk;
    for (int m = 0; m < 2; ++m) {
      const int d_m = m == 0 ? 1 : D;
      const double g_mk = std::sqrt(n_qubits) * model.g(m) *
                          std::sin(d_m * k * kPi / (D + 1)) *
                          std::sqrt(2.0 / (D + 1));
      cc.g_mk[m][k - 1] = g_mk;
      const double delta = model.omega(m) - model.omega_c();
      const double sigma = model.omega(m) + model.omega_c();
      if (model.interaction == LayerInteraction::XY) {
        const double dm = delta - 2.0 * gk;  // = Delta_{m,k}
        const double sm = sigma + 2.0 * gk;  // = Sigma_{m,k}
        check_finite_inverse(dm, "Delta_{m,k} - 2 g_k");
        check_finite_inverse(sm, "Sigma_{m,k} + 2 g_k");
        cc.lambda_minus[m][k - 1] = -g_mk / dm;
        cc.lambda_plus[m][k - 1] = -g_mk / sm;
      } else {
        // elimination conditions coupled by the squeezing term:
        //   (Delta - 2 g_k) lm + 2 g_k lp = -g_mk
        //   -2 g_k lm + (Sigma + 2 g_k) lp = -g_mk
        const double a11 = delta - 2.0 * gk, a12 = 2.0 * gk;
        const double a21 = -2.0 * gk, a22 = sigma + 2.0 * gk;
        const double det = a11 * a22 - a12 * a21;
        const double scale = std::abs(a11 * a22) + std::abs(a12 * a21);
        if (scale == 0.0 || std::abs(det) < 1e-14 * scale)
          throw SingularDenominator("Ising elimination system is singular");
        cc.lambda_minus[m][k - 1] = (-g_mk * a22 + g_mk * a12) / det;
        cc.lambda_plus[m][k - 1] = (a11 * -g_mk - a21 * -g_mk) / det;
      }
    }
  }

  if (D == 1) {
    double sum = 0.0;
    for (int m = 0; m < 2; ++m) {
      const double delta = model.omega(m) - model.omega_c();
      const double sigma = model.omega(m) + model.omega_c();
      sum += (model.g(0) * model.g(1) / 2.0) * (1.0 / delta - 1.0 / sigma);
    }
    cc.g_eff = -sum * (2.0 * model.sector.m);
  } else {
    double sum = 0.0;
    for (int k = 0; k < D; ++k) {
      double inner = 0.0;
      for (int m = 0; m < 2; ++m) {
        const double dm = model.omega(m) - cc.omega_k[k];
        const double sm = model.omega(m) + cc.omega_k[k];
        check_finite_inverse(dm, "Delta_{m,k}");
        check_finite_inverse(sm, "Sigma_{m,k}");
        inner += 1.0 / dm - 1.0 / sm;
      }
      sum += cc.g_mk[0][k] * cc.g_mk[1][k] * 0.5 * inner;
    }
    cc.g_eff = sum;
  }
  return cc;
}

double effective_coupling_rate(const CouplerModel& model) {
  ensure_valid(model);
  return coupling_coefficients(model).g_eff;
}

SparseOperator build_cascade_effective_hamiltonian(const CouplerModel& model) {
  ensure_valid(model);
  const CouplingCoefficients cc = coupling_coefficients(model);
  const SpacePtr space = magnon_space(model);
  const int D = model.layers;

  SparseOperator h = circuit_number(space, "X1").scaled(model.omega(0)) +
                     circuit_number(space, "X2").scaled(model.omega(1));
  std::vector<SparseOperator> quad_k;
  for (int k = 0; k < D; ++k) {
    h = h + boson_operator(space, magnon_label(k), BosonOp::Number)
                .scaled(cc.omega_k[k]);
    const auto a = boson_operator(space, magnon_label(k), BosonOp::Annihilate);
    quad_k.push_back(a + a.adjoint());
    if (model.interaction == LayerInteraction::Ising) {
      const double gk = (cc.omega_k[k] - model.omega_c()) / 2.0;
      const auto ad = a.adjoint();
      h = h + (ad * ad + a * a).scaled(gk);
    }
  }

  const std::array<SparseOperator, 2> quad = {circuit_quadrature(space, "X1"),
                                              circuit_quadrature(space, "X2")};
  const std::array<std::string, 2> labels = {"X1", "X2"};

  double cross = 0.0;
  for (int m = 0; m < 2; ++m)
    for (int k = 0; k < D; ++k)
      cross += 0.5 * (cc.lambda_plus[m][k] - cc.lambda_minus[m][k]) *
               cc.g_mk[1 - m][k];
  h = h + (quad[0] * quad[1]).scaled(cross);

  for (int m = 0; m < 2; ++m) {
    double self = 0.0;
    for (int k = 0; k < D; ++k)
      self += 0.5 * (cc.lambda_plus[m][k] - cc.lambda_minus[m][k]) *
              cc.g_mk[m][k];
    h = h + (quad[m] * quad[m]).scaled(self);

    const SparseOperator x = circuit_lowering(space, labels[m]);
    const SparseOperator comm = commutator(x, x.adjoint());
    for (int k = 0; k < D; ++k)
      for (int kp = 0; kp < D; ++kp) {
        const double coeff = 0.5 *
                             (cc.lambda_plus[m][k] + cc.lambda_minus[m][k]) *
                             cc.g_mk[m][kp];
        if (coeff == 0.0) continue;
        h = h + (quad_k[k] * quad_k[kp] * comm).scaled(coeff);
      }
  }
  return h;
}

TransducerDesign transducer_optimal_n(double omega1, double omega2,
                                      double omega_c, double g1, double g2) {
  if (omega1 == omega2)
    throw std::invalid_argument("transducer requires omega_1 != omega_2");
  const double d1 = omega1 - omega_c, s1 = omega1 + omega_c;
  const double d2 = omega2 - omega_c, s2 = omega2 + omega_c;
  check_finite_inverse(d1, "Delta_1");
  check_finite_inverse(s1, "Sigma_1");
  check_finite_inverse(d2, "Delta_2");
  check_finite_inverse(s2, "Sigma_2");
  const double term2 = g2 * g2 * (1.0 / s2 - 1.0 / d2);
  const double term1 = g1 * g1 * (1.0 / s1 - 1.0 / d1);
  const double denom = term2 - term1;
  const double scale = std::abs(term2) + std::abs(term1);
  if (scale == 0.0 || std::abs(denom) < 1e-14 * scale)
    throw SingularDenominator(
        "optimal-condition denominator vanishes (symmetric shifts)");
  TransducerDesign out;
  out.n_opt = (omega1 - omega2) / denom;
  const double exchange_sum =
      (1.0 / d1 - 1.0 / s1) + (1.0 / d2 - 1.0 / s2);
  // the printed optimal condition balances the <J^z> = +N shifted
  // frequencies, so the rate is evaluated in that sector
  out.g_eff = -(g1 * g2 / 2.0) * exchange_sum * out.n_opt;
  const double rate = std::abs(g1 * g2 * exchange_sum * out.n_opt);
  check_finite_inverse(rate, "transfer rate");
  out.base_time = kPi / rate;
  return out;
}

}  // namespace dcoupler
