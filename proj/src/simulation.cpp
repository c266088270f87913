#include "dcoupler/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "dcoupler/states.hpp"

namespace dcoupler {

namespace {

bool is_layer_label(const std::string& label) {
  return !label.empty() && (label[0] == 'L' || label[0] == 'K');
}

}  // namespace

std::vector<Observable> standard_observables(const CouplerModel& model,
                                             const SpacePtr& space) {
  std::vector<Observable> obs;
  obs.push_back({"P_Q1", circuit_number(space, "X1"), false});
  obs.push_back({"P_Q2", circuit_number(space, "X2"), false});

  // total Jz over the coupler; bosonized layers carry Jz = 2 n - N
  SparseOperator jz = SparseOperator::zero(space);
  SparseOperator exc = SparseOperator::zero(space);
  int boson_layers = 0;
  for (std::size_t i = 0; i < space->factor_count(); ++i) {
    const auto& f = space->factor(i);
    if (!is_layer_label(f.label)) continue;
    if (f.kind == FactorKind::SpinLadder) {
      const auto layer_jz = collective_operator(space, f.label, SpinOp::Jz);
      jz = jz + layer_jz;
      exc = exc + layer_jz.scaled(0.5) +
            SparseOperator::identity(space).scaled(f.j);
    } else {
      const auto n_op = boson_operator(space, f.label, BosonOp::Number);
      jz = jz + n_op.scaled(2.0);
      exc = exc + n_op;
      ++boson_layers;
    }
  }
  if (boson_layers > 0)
    jz = jz + SparseOperator::identity(space).scaled(
                  -static_cast<double>(model.qubits_per_layer) * boson_layers);
  obs.push_back({"Jz", jz, false});
  obs.push_back({"coupler_excitation", exc, false});

  obs.push_back({"swap_corr",
                 circuit_lowering(space, "X2").adjoint() *
                     circuit_lowering(space, "X1"),
                 true});

  for (std::size_t i = 0; i < space->factor_count(); ++i) {
    const auto& f = space->factor(i);
    if (f.kind == FactorKind::BosonMode)
      obs.push_back(
          {"n_" + f.label, boson_operator(space, f.label, BosonOp::Number),
           false});
  }

  SparseOperator top = SparseOperator::zero(space);
  bool has_top = false;
  for (std::size_t i = 0; i < space->factor_count(); ++i) {
    const auto& f = space->factor(i);
    if (is_layer_label(f.label) && f.kind == FactorKind::BosonMode) {
      top = top + boson_operator(space, f.label, BosonOp::TopState);
      has_top = true;
    }
  }
  if (has_top) obs.push_back({"truncation_top", top, false});
  return obs;
}

cvec initial_state(const CouplerModel& model, const SpacePtr& space,
                   const std::string& excite) {
  std::vector<int> multi(space->factor_count(), 0);
  for (std::size_t i = 0; i < space->factor_count(); ++i) {
    const auto& f = space->factor(i);
    if (f.kind == FactorKind::SpinLadder && is_layer_label(f.label)) {
      const int idx = static_cast<int>(std::lround(model.sector.m + f.j));
      multi[i] = idx;
    }
  }
  if (excite == "X1" || excite == "X2") {
    multi[space->factor_index(excite)] = 1;
  } else if (excite != "none") {
    throw std::invalid_argument("initial excitation must be X1, X2 or none");
  }
  return basis_state(space, multi);
}

namespace {

DynamicsRun run_dynamics(const CouplerModel& model, const DynamicsSetup& setup,
                         const SparseOperator& hamiltonian) {
  DynamicsRun run;
  run.space = hamiltonian.space();
  run.closed_form_geff = effective_coupling_rate(model);

  EvolutionSpec spec;
  spec.hamiltonian = hamiltonian;
  spec.t_final = setup.horizon_us;
  spec.samples = setup.samples;
  spec.tolerance = setup.tolerance;
  spec.observables = standard_observables(model, run.space);

  run.record = evolve_unitary(spec, initial_state(model, run.space, setup.excite));
  run.fit = extract_swap_rate(run.record, "P_Q2", "swap_corr");
  if (run.record.has_channel("truncation_top")) {
    const auto& tt = run.record.channel("truncation_top");
    run.truncation_top_max = *std::max_element(tt.begin(), tt.end());
  }
  return run;
}

double ripple(const TrajectoryRecord& rec) {
  const auto& exc = rec.channel("coupler_excitation");
  double r = 0.0;
  for (double v : exc) r = std::max(r, std::abs(v - exc.front()));
  return r;
}

}  // namespace

DynamicsRun run_full_dynamics(const CouplerModel& model,
                              const DynamicsSetup& setup) {
  return run_dynamics(model, setup,
                      build_full_hamiltonian(model, setup.representation));
}

DynamicsRun run_effective_dynamics(const CouplerModel& model,
                                   const DynamicsSetup& setup) {
  const SparseOperator h =
      model.layers == 1 ? build_effective_hamiltonian(model, setup.effective_rwa)
                        : build_cascade_effective_hamiltonian(model);
  return run_dynamics(model, setup, h);
}

CompareReport compare_full_vs_effective(const CouplerModel& model,
                                        const DynamicsSetup& setup) {
  CompareReport rep;
  rep.full = run_full_dynamics(model, setup);
  rep.effective = run_effective_dynamics(model, setup);
  for (const char* name : {"P_Q1", "P_Q2"}) {
    const auto& a = rep.full.record.channel(name);
    const auto& b = rep.effective.record.channel(name);
    for (std::size_t i = 0; i < a.size(); ++i)
      rep.max_population_deviation =
          std::max(rep.max_population_deviation, std::abs(a[i] - b[i]));
  }
  rep.coupler_ripple_full = ripple(rep.full.record);
  rep.coupler_ripple_effective = ripple(rep.effective.record);
  return rep;
}

}  // namespace dcoupler
