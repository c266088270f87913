#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dcoupler/simulation.hpp"
#include "dcoupler/states.hpp"
#include "oracles.hpp"

using namespace dcoupler;

namespace {

CouplerModel qq_model(int n, double m, double fc = 4000.0, double g = 10.0) {
  CouplerModel model = CouplerModel::all_ground(
      CircuitElement::qubit(1000.0), CircuitElement::qubit(1000.0), fc, n, g, g);
  model.sector = {n / 2.0, m};
  return model;
}

}  // namespace

TEST_CASE("bessel sequence matches reference values") {
  struct Ref {
    double z;
    int k;
    double value;
  };
  for (const auto& r : {Ref{0.3, 0, 9.7762624653829611e-01},
                        Ref{0.3, 1, 1.4831881627310400e-01},
                        Ref{0.3, 3, 5.5934304774884645e-04},
                        Ref{5.0, 0, -1.7759677131433835e-01},
                        Ref{5.0, 2, 4.6565116277752290e-02},
                        Ref{5.0, 7, 5.3376410155890709e-02},
                        Ref{50.0, 0, 5.5812327669251802e-02},
                        Ref{50.0, 10, -1.1384784914946938e-01},
                        Ref{50.0, 55, 1.8222486377034233e-02},
                        Ref{258.0, 0, 4.5820656645903741e-02},
                        Ref{258.0, 100, 4.7892173825769782e-02},
                        Ref{258.0, 258, 7.0263417582060575e-02},
                        Ref{258.0, 280, 9.0898744580306112e-05}}) {
    const auto seq = bessel_j_sequence(r.z, r.k + 4);
    CHECK(seq[r.k] == doctest::Approx(r.value).epsilon(1e-11));
  }
  const auto at_zero = bessel_j_sequence(0.0, 4);
  CHECK(at_zero[0] == 1.0);
  CHECK(at_zero[1] == 0.0);
}

TEST_CASE("decoupled circuits keep constant populations") {
  CouplerModel model = qq_model(8, -4);
  model.g1_mhz = 0.0;
  model.g2_mhz = 0.0;
  const DynamicsSetup setup{0.5, 201, 1e-9, "X1", false,
                            CouplerRepresentation::SpinLadder};
  const DynamicsRun run = run_full_dynamics(model, setup);
  for (double v : run.record.channel("P_Q1"))
    CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  for (double v : run.record.channel("P_Q2"))
    CHECK(std::abs(v) < 1e-9);
  CHECK(run.fit.no_oscillation);
}

TEST_CASE("unitary invariants: norm, energy, fit against closed form") {
  const CouplerModel model = qq_model(8, -4);
  const DynamicsSetup setup{1.8, 601, 1e-9, "X1", false,
                            CouplerRepresentation::SpinLadder};
  const DynamicsRun run = run_full_dynamics(model, setup);
  CHECK(run.record.norm_drift < 1e-8);
  CHECK(run.record.energy_drift_rel < 1e-8);
  // populations stay physical
  for (double v : run.record.channel("P_Q2")) {
    CHECK(v >= -1e-9);
    CHECK(v <= 1.0 + 1e-9);
  }
  const double closed = std::abs(run.closed_form_geff);
  CHECK(std::abs(run.fit.g_eff) ==
        doctest::Approx(closed).epsilon(0.05));
  CHECK(run.fit.g_eff < 0.0);  // sign from the swap correlation
}

TEST_CASE("halving the tolerance changes observables within the estimate") {
  const CouplerModel model = qq_model(8, -4);
  DynamicsSetup setup{0.6, 201, 1e-9, "X1", false,
                      CouplerRepresentation::SpinLadder};
  const DynamicsRun coarse = run_full_dynamics(model, setup);
  setup.tolerance = 5e-10;
  const DynamicsRun fine = run_full_dynamics(model, setup);
  double max_change = 0.0;
  for (const char* name : {"P_Q1", "P_Q2"}) {
    const auto& a = coarse.record.channel(name);
    const auto& b = fine.record.channel(name);
    for (std::size_t i = 0; i < a.size(); ++i)
      max_change = std::max(max_change, std::abs(a[i] - b[i]));
  }
  CHECK(max_change < coarse.record.error_estimate);
}

TEST_CASE("excitation is conserved in the RWA effective model") {
  const CouplerModel model = qq_model(8, -4);
  DynamicsSetup setup{0.8, 201, 1e-9, "X1", true,
                      CouplerRepresentation::SpinLadder};
  const DynamicsRun run = run_effective_dynamics(model, setup);
  const auto& p1 = run.record.channel("P_Q1");
  const auto& p2 = run.record.channel("P_Q2");
  for (std::size_t i = 0; i < p1.size(); ++i)
    CHECK(p1[i] + p2[i] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("m = 0 sector of the full ladder leaks through (J^x)^2") {
  // at j = 40, m = 0 the counter-rotating term drives a fast P_Q2
  // oscillation of amplitude ~0.094: the off switch needs j = 0
  const CouplerModel model = qq_model(80, 0.0);
  const DynamicsSetup setup{0.1, 401, 1e-9, "X1", false,
                            CouplerRepresentation::SpinLadder};
  const DynamicsRun run = run_full_dynamics(model, setup);
  const auto& p2 = run.record.channel("P_Q2");
  const double max_p2 = *std::max_element(p2.begin(), p2.end());
  CHECK(max_p2 == doctest::Approx(0.0938).epsilon(0.12));

  // all-singlet register sector (j = 0): exactly off
  CouplerModel off = qq_model(80, 0.0);
  off.sector = {0.0, 0.0};
  const DynamicsRun off_run = run_full_dynamics(off, setup);
  const auto& p2_off = off_run.record.channel("P_Q2");
  CHECK(*std::max_element(p2_off.begin(), p2_off.end()) < 1e-12);
}

TEST_CASE("swap-rate extraction") {
  // synthetic sin^2 record: exact recovery
  TrajectoryRecord rec;
  const double g_true = kTwoPi * 3.0;
  rec.channel_names = {"P_Q2", "swap_corr"};
  rec.channels.assign(2, {});
  for (int i = 0; i <= 600; ++i) {
    const double t = i * 0.3 / 600.0;
    rec.times.push_back(t);
    rec.channels[0].push_back(std::pow(std::sin(g_true * t), 2));
    rec.channels[1].push_back(-std::sin(2.0 * g_true * t) / 2.0);
  }
  const SwapFit fit = extract_swap_rate(rec, "P_Q2", "swap_corr");
  CHECK_FALSE(fit.no_oscillation);
  CHECK(std::abs(fit.g_eff) == doctest::Approx(g_true).epsilon(1e-6));
  CHECK(fit.g_eff < 0.0);  // negative swap correlation flips the sign
  CHECK(fit.residual_rms < 1e-10);

  // constant channel: flagged, zero rate
  TrajectoryRecord flat;
  flat.channel_names = {"P_Q2"};
  flat.channels.assign(1, {});
  for (int i = 0; i <= 100; ++i) {
    flat.times.push_back(i * 0.01);
    flat.channels[0].push_back(0.5);
  }
  const SwapFit flat_fit = extract_swap_rate(flat, "P_Q2");
  CHECK(flat_fit.no_oscillation);
  CHECK(flat_fit.g_eff == 0.0);
}

TEST_CASE("compare: decoupled limit has zero deviation") {
  CouplerModel model = qq_model(6, -3);
  model.g1_mhz = 0.0;
  model.g2_mhz = 0.0;
  const DynamicsSetup setup{0.3, 101, 1e-9, "X1", false,
                            CouplerRepresentation::SpinLadder};
  const CompareReport rep = compare_full_vs_effective(model, setup);
  CHECK(rep.max_population_deviation < 1e-9);
  CHECK(rep.coupler_ripple_full < 1e-12);
}

TEST_CASE("lindblad: subradiant state is stationary over 10/gamma") {
  const double gamma = 1.0, gamma_phi = 0.5;
  const SpacePtr space = make_space({HilbertFactor::spin_ladder("C", 5.0)});
  const auto jz = collective_operator(space, "C", SpinOp::Jz);
  EvolutionSpec spec;
  spec.hamiltonian = jz.scaled(kTwoPi * 4000.0 / 2.0);
  spec.t_final = 10.0 / gamma;
  spec.samples = 101;
  spec.observables.push_back({"Jz", jz, false});
  spec.channels.push_back(
      {collective_operator(space, "C", SpinOp::Jminus), gamma / 2.0});
  spec.channels.push_back({jz, gamma_phi / 2.0});
  const cvec psi0 = basis_state(space, std::vector<int>{0});
  const TrajectoryRecord rec = evolve_lindblad(spec, DenseMatrix::pure(psi0));
  const auto& series = rec.channel("Jz");
  for (double v : series)
    CHECK(std::abs(v - series.front()) < 1e-8);
  CHECK(rec.norm_drift < 1e-8);
  CHECK(rec.positivity_floor > -1e-8);
}

TEST_CASE("lindblad: closed-system limit matches the unitary engine") {
  const CouplerModel model = qq_model(4, -2);
  const auto h = build_full_hamiltonian(model);
  const SpacePtr space = h.space();
  EvolutionSpec spec;
  spec.hamiltonian = h;
  spec.t_final = 0.05;
  spec.samples = 51;
  spec.tolerance = 1e-12;
  spec.observables = standard_observables(model, space);
  const cvec psi0 = initial_state(model, space, "X1");

  const TrajectoryRecord closed = evolve_lindblad(spec, DenseMatrix::pure(psi0));
  const TrajectoryRecord unitary = evolve_unitary(spec, psi0);
  for (const char* name : {"P_Q1", "P_Q2", "Jz"}) {
    const auto& a = closed.channel(name);
    const auto& b = unitary.channel(name);
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("lindblad: collapse-channel decay law") {
  // channel (J-, r) on a single spin-1/2: dP_e/dt = -2 r P_e from the stated
  // dissipator, so P_e(t) = exp(-2 r t); the paper's gamma/2 prefactor makes
  // this exp(-gamma t)
  const double r = 0.35;
  const SpacePtr space = make_space({HilbertFactor::spin_ladder("C", 0.5)});
  EvolutionSpec spec;
  spec.hamiltonian = SparseOperator::zero(space);
  spec.t_final = 2.0;
  spec.samples = 41;
  spec.tolerance = 1e-10;
  const auto jp = collective_operator(space, "C", SpinOp::Jplus);
  const auto jm = collective_operator(space, "C", SpinOp::Jminus);
  spec.observables.push_back({"P_e", jp * jm, false});
  spec.channels.push_back({jm, r});
  const cvec excited = basis_state(space, std::vector<int>{1});
  const TrajectoryRecord rec = evolve_lindblad(spec, DenseMatrix::pure(excited));
  const auto& pe = rec.channel("P_e");
  for (std::size_t i = 0; i < rec.times.size(); ++i)
    CHECK(pe[i] ==
          doctest::Approx(std::exp(-2.0 * r * rec.times[i])).epsilon(1e-6));
  CHECK(rec.norm_drift < 1e-8);
}

TEST_CASE("evolution guards") {
  const SpacePtr space = make_space({HilbertFactor::two_level("q")});
  const auto sp = two_level_operator(space, "q", TwoLevelOp::SigmaPlus);
  EvolutionSpec spec;
  spec.hamiltonian = sp;  // not Hermitian
  spec.t_final = 1.0;
  cvec psi = basis_state(space, std::vector<int>{0});
  CHECK_THROWS_AS(evolve_unitary(spec, psi), NumericalError);

  spec.hamiltonian = two_level_operator(space, "q", TwoLevelOp::SigmaZ);
  cvec unnormalized = psi;
  unnormalized[0] *= 2.0;
  CHECK_THROWS_AS(evolve_unitary(spec, unnormalized), std::invalid_argument);

  spec.channels.push_back({sp, 0.1});
  CHECK_THROWS_AS(evolve_unitary(spec, psi), std::invalid_argument);

  // density cap
  EvolutionSpec capped;
  capped.hamiltonian = two_level_operator(space, "q", TwoLevelOp::SigmaZ);
  capped.t_final = 1.0;
  capped.density_dim_cap = 1;
  CHECK_THROWS_AS(evolve_lindblad(capped, DenseMatrix::pure(psi)),
                  NumericalError);
}
