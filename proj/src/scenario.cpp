#include "dcoupler/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "dcoupler/pair_register.hpp"
#include "dcoupler/simulation.hpp"
#include "dcoupler/states.hpp"
#include "dcoupler/transducer.hpp"

namespace dcoupler {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// schema validation

void fail(const std::string& path, const std::string& msg) {
  throw SchemaError("config error at " + path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(path, "unknown key '" + key + "'");
}

double get_num(const json& obj, const std::string& path, const std::string& key,
               double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail(path, "missing required key '" + key + "'");
    return fallback;
  }
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& path, const std::string& key,
            int fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail(path, "missing required key '" + key + "'");
    return fallback;
  }
  if (!obj[key].is_number_integer()) fail(path + "." + key, "expected an integer");
  return obj[key].get<int>();
}

std::string get_str(const json& obj, const std::string& path,
                    const std::string& key, const std::string& fallback,
                    bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail(path, "missing required key '" + key + "'");
    return fallback;
  }
  if (!obj[key].is_string()) fail(path + "." + key, "expected a string");
  return obj[key].get<std::string>();
}

const std::set<std::string> kKinds = {"FullDynamics", "EffectiveDynamics",
                                      "Compare",      "Lindblad",
                                      "Sweep",        "RegisterDemo"};

}  // namespace

void validate_config(const json& config) {
  check_keys(config, "$",
             {"kind", "name", "frequencies_mhz", "couplings_mhz", "circuits",
              "ensemble", "register", "layers", "interaction",
              "representation", "boson_n_max", "horizon_us", "samples",
              "tolerance", "initial_excitation", "effective_rwa", "lindblad",
              "sweep"});
  const std::string kind = get_str(config, "$", "kind", "", true);
  if (!kKinds.count(kind)) fail("$.kind", "unknown scenario kind '" + kind + "'");

  if (config.contains("frequencies_mhz")) {
    const auto& f = config["frequencies_mhz"];
    check_keys(f, "$.frequencies_mhz", {"x1", "x2", "coupler"});
    for (const auto& key : {"x1", "x2", "coupler"})
      if (f.contains(key) && (!f[key].is_number() || f[key].get<double>() <= 0))
        fail(std::string("$.frequencies_mhz.") + key, "expected a positive number");
  }
  if (config.contains("couplings_mhz")) {
    const auto& g = config["couplings_mhz"];
    check_keys(g, "$.couplings_mhz", {"g1", "g2", "gc"});
    for (const auto& key : {"g1", "g2", "gc"})
      if (g.contains(key) && !g[key].is_number())
        fail(std::string("$.couplings_mhz.") + key, "expected a number");
  }
  if (config.contains("circuits")) {
    const auto& c = config["circuits"];
    check_keys(c, "$.circuits", {"x1", "x2", "resonator_n_max"});
    for (const auto& key : {"x1", "x2"}) {
      if (!c.contains(key)) continue;
      const std::string v = get_str(c, "$.circuits", key, "");
      if (v != "Qubit" && v != "Resonator")
        fail(std::string("$.circuits.") + key, "expected 'Qubit' or 'Resonator'");
    }
    if (get_int(c, "$.circuits", "resonator_n_max", 4) < 1)
      fail("$.circuits.resonator_n_max", "must be >= 1");
  }
  if (config.contains("ensemble")) {
    const auto& e = config["ensemble"];
    check_keys(e, "$.ensemble", {"n", "j", "m"});
    if (get_int(e, "$.ensemble", "n", 0, true) < 2)
      fail("$.ensemble.n", "need at least 2 qubits");
    if (e.contains("j") && !e["j"].is_number()) fail("$.ensemble.j", "expected a number");
    if (e.contains("m") && !e["m"].is_number()) fail("$.ensemble.m", "expected a number");
  }
  if (config.contains("register")) {
    const std::string r = get_str(config, "$", "register", "");
    for (char c : r)
      if (c != 'g' && c != 's')
        fail("$.register", "register string may contain only 'g'/'s'");
    if (r.empty()) fail("$.register", "must be non-empty");
    if (config.contains("ensemble") && config["ensemble"].contains("n") &&
        config["ensemble"]["n"].get<int>() != 2 * static_cast<int>(r.size()))
      fail("$.register", "register length does not match ensemble.n/2");
  }
  if (get_int(config, "$", "layers", 1) < 1) fail("$.layers", "must be >= 1");
  if (config.contains("interaction")) {
    const std::string v = get_str(config, "$", "interaction", "XY");
    if (v != "XY" && v != "Ising") fail("$.interaction", "expected 'XY' or 'Ising'");
  }
  if (config.contains("representation")) {
    const std::string v = get_str(config, "$", "representation", "ladder");
    if (v != "ladder" && v != "bosonized")
      fail("$.representation", "expected 'ladder' or 'bosonized'");
  }
  if (get_int(config, "$", "boson_n_max", 4) < 1) fail("$.boson_n_max", "must be >= 1");
  if (config.contains("horizon_us") &&
      (!config["horizon_us"].is_number() || config["horizon_us"].get<double>() <= 0))
    fail("$.horizon_us", "expected a positive number");
  if (get_int(config, "$", "samples", 401) < 2) fail("$.samples", "need >= 2 samples");
  if (config.contains("tolerance") &&
      (!config["tolerance"].is_number() || config["tolerance"].get<double>() <= 0))
    fail("$.tolerance", "expected a positive number");
  if (config.contains("initial_excitation")) {
    const std::string v = get_str(config, "$", "initial_excitation", "X1");
    if (v != "X1" && v != "X2" && v != "none")
      fail("$.initial_excitation", "expected 'X1', 'X2' or 'none'");
  }
  if (config.contains("effective_rwa") && !config["effective_rwa"].is_boolean())
    fail("$.effective_rwa", "expected a boolean");
  if (config.contains("lindblad")) {
    const auto& l = config["lindblad"];
    check_keys(l, "$.lindblad", {"gamma_per_us", "gamma_phi_per_us"});
    for (const auto& key : {"gamma_per_us", "gamma_phi_per_us"})
      if (l.contains(key) && (!l[key].is_number() || l[key].get<double>() < 0))
        fail(std::string("$.lindblad.") + key, "expected a non-negative number");
  }
  if (config.contains("sweep")) {
    const auto& s = config["sweep"];
    check_keys(s, "$.sweep", {"fc_lo_mhz", "fc_hi_mhz", "points", "marker_mhz"});
    const double lo = get_num(s, "$.sweep", "fc_lo_mhz", 0, true);
    const double hi = get_num(s, "$.sweep", "fc_hi_mhz", 0, true);
    if (lo <= 0 || lo >= hi) fail("$.sweep", "requires 0 < fc_lo_mhz < fc_hi_mhz");
    if (get_int(s, "$.sweep", "points", 2) < 2) fail("$.sweep.points", "need >= 2 points");
    if (s.contains("marker_mhz") && !s["marker_mhz"].is_number())
      fail("$.sweep.marker_mhz", "expected a number");
  }

  // kind-specific requirements
  const bool dynamics = kind == "FullDynamics" || kind == "EffectiveDynamics" ||
                        kind == "Compare";
  if (dynamics) {
    if (!config.contains("frequencies_mhz") ||
        !config["frequencies_mhz"].contains("x1") ||
        !config["frequencies_mhz"].contains("x2") ||
        !config["frequencies_mhz"].contains("coupler"))
      fail("$.frequencies_mhz", "dynamics scenarios need x1, x2 and coupler");
    if (!config.contains("couplings_mhz"))
      fail("$.couplings_mhz", "dynamics scenarios need couplings");
    if (!config.contains("ensemble")) fail("$.ensemble", "dynamics scenarios need an ensemble");
    if (!config.contains("horizon_us")) fail("$.horizon_us", "dynamics scenarios need a horizon");
  } else if (kind == "Lindblad") {
    if (!config.contains("frequencies_mhz") ||
        !config["frequencies_mhz"].contains("coupler"))
      fail("$.frequencies_mhz.coupler", "Lindblad scenarios need the coupler frequency");
    if (!config.contains("ensemble")) fail("$.ensemble", "Lindblad scenarios need an ensemble");
    if (!config.contains("lindblad")) fail("$.lindblad", "Lindblad scenarios need rates");
    if (!config.contains("horizon_us")) fail("$.horizon_us", "Lindblad scenarios need a horizon");
  } else if (kind == "Sweep") {
    if (!config.contains("frequencies_mhz") ||
        !config["frequencies_mhz"].contains("x1") ||
        !config["frequencies_mhz"].contains("x2"))
      fail("$.frequencies_mhz", "sweeps need the two mode frequencies");
    if (!config.contains("couplings_mhz")) fail("$.couplings_mhz", "sweeps need g1/g2");
    if (!config.contains("sweep")) fail("$.sweep", "sweeps need a sweep block");
  } else if (kind == "RegisterDemo") {
    if (!config.contains("frequencies_mhz") || !config.contains("couplings_mhz") ||
        !config.contains("ensemble"))
      fail("$", "register demos need frequencies, couplings and an ensemble");
  }
}

CouplerModel model_from_config(const json& config) {
  const auto& f = config["frequencies_mhz"];
  const auto& g = config.contains("couplings_mhz") ? config["couplings_mhz"] : json::object();
  CouplerModel model;
  const json circuits = config.contains("circuits") ? config["circuits"] : json::object();
  const int res_n_max = get_int(circuits, "$.circuits", "resonator_n_max", 4);
  auto circuit = [&](const std::string& key, double freq) {
    const std::string kind = get_str(circuits, "$.circuits", key, "Qubit");
    return kind == "Qubit" ? CircuitElement::qubit(freq)
                           : CircuitElement::resonator(freq, res_n_max);
  };
  model.x1 = circuit("x1", get_num(f, "$.frequencies_mhz", "x1", 0, true));
  model.x2 = circuit("x2", get_num(f, "$.frequencies_mhz", "x2", 0, true));
  model.coupler_freq_mhz = get_num(f, "$.frequencies_mhz", "coupler", 0, true);
  model.g1_mhz = get_num(g, "$.couplings_mhz", "g1", 0.0);
  model.g2_mhz = get_num(g, "$.couplings_mhz", "g2", 0.0);
  model.gc_mhz = get_num(g, "$.couplings_mhz", "gc", 0.0);
  model.layers = get_int(config, "$", "layers", 1);
  model.interaction = get_str(config, "$", "interaction", "XY") == "XY"
                          ? LayerInteraction::XY
                          : LayerInteraction::Ising;
  model.boson_n_max = get_int(config, "$", "boson_n_max", 4);

  const auto& e = config["ensemble"];
  model.qubits_per_layer = get_int(e, "$.ensemble", "n", 0, true);
  if (config.contains("register")) {
    const PairRegister reg =
        PairRegister::from_string(config["register"].get<std::string>());
    model.qubits_per_layer = reg.n_qubits();
    model.sector = {reg.j(), reg.m()};
  } else {
    const double j = get_num(e, "$.ensemble", "j", model.qubits_per_layer / 2.0);
    const double m = get_num(e, "$.ensemble", "m", -j);
    model.sector = {j, m};
  }
  return model;
}

namespace {

std::string out_path(const RunOptions& opt, const std::string& name,
                     const std::string& suffix) {
  std::filesystem::create_directories(opt.output_dir);
  return (std::filesystem::path(opt.output_dir) / (name + suffix)).string();
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  for (const auto& l : lines) out << l << "\n";
}

/// Time-series CSV with the frozen column set: t_us, P_Q1, P_Q2,
/// Jz_deviation, coupler_excitation, then per-mode photon numbers.
std::vector<std::string> timeseries_csv(const TrajectoryRecord& rec) {
  std::vector<std::string> photon_cols;
  for (const auto& name : rec.channel_names)
    if (name.rfind("n_", 0) == 0) photon_cols.push_back(name);

  std::vector<std::string> lines;
  std::string header = "t_us,P_Q1,P_Q2,Jz_deviation,coupler_excitation";
  for (const auto& c : photon_cols) header += "," + c;
  lines.push_back(header);

  const auto& jz = rec.channel("Jz");
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    std::string line = fmt(rec.times[i]);
    line += "," + fmt(rec.channel("P_Q1")[i]);
    line += "," + fmt(rec.channel("P_Q2")[i]);
    line += "," + fmt(jz[i] - jz[0]);
    line += "," + fmt(rec.channel("coupler_excitation")[i]);
    for (const auto& c : photon_cols) line += "," + fmt(rec.channel(c)[i]);
    lines.push_back(line);
  }
  return lines;
}

void write_population_svg(const std::string& path,
                          const std::vector<double>& t,
                          const std::vector<std::pair<std::string, const std::vector<double>*>>& series) {
  const int width = 860, height = 420, ml = 60, mr = 20, mt = 20, mb = 45;
  double ymax = 1.0;
  for (const auto& [_, s] : series)
    for (double v : *s) ymax = std::max(ymax, v);
  const double t0 = t.front(), t1 = t.back();
  auto xm = [&](double tv) {
    return ml + (tv - t0) / (t1 - t0) * (width - ml - mr);
  };
  auto ym = [&](double v) { return height - mb - v / ymax * (height - mt - mb); };
  const char* colors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad"};
  std::ofstream out(path, std::ios::binary);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<line x1='" << ml << "' y1='" << height - mb << "' x2='"
      << width - mr << "' y2='" << height - mb << "' stroke='black'/>\n"
      << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
      << height - mb << "' stroke='black'/>\n"
      << "<text x='" << (width / 2) << "' y='" << height - 10
      << "' font-size='13' text-anchor='middle'>t (us)</text>\n";
  int ci = 0;
  for (const auto& [name, s] : series) {
    const bool dashed = name.find("effective") != std::string::npos;
    out << "<polyline fill='none' stroke='" << colors[ci % 4] << "'"
        << (dashed ? " stroke-dasharray='6 4'" : "") << " stroke-width='1.4' points='";
    for (std::size_t i = 0; i < t.size(); ++i)
      out << xm(t[i]) << "," << ym((*s)[i]) << " ";
    out << "'/>\n";
    out << "<text x='" << width - mr - 180 << "' y='" << mt + 16 + 16 * ci
        << "' font-size='12' fill='" << colors[ci % 4] << "'>" << name
        << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
}

void append_model_diagnostics(ScenarioResult& res, const CouplerModel& model) {
  const ValidationReport rep = validate(model);
  res.summary.emplace_back("g_over_delta_1", fmt(rep.g_over_delta[0]));
  res.summary.emplace_back("g_over_delta_2", fmt(rep.g_over_delta[1]));
  res.summary.emplace_back("rwa_ratio_1", fmt(rep.rwa_ratio[0]));
  res.summary.emplace_back("rwa_ratio_2", fmt(rep.rwa_ratio[1]));
  for (std::size_t i = 0; i < rep.warnings.size(); ++i)
    res.summary.emplace_back("warning_" + std::to_string(i + 1), rep.warnings[i]);
}

void append_run_summary(ScenarioResult& res, const std::string& prefix,
                        const DynamicsRun& run) {
  res.summary.emplace_back(prefix + "space_dimension",
                           std::to_string(run.space->dimension()));
  res.summary.emplace_back(prefix + "fitted_geff_mhz",
                           fmt(run.fit.g_eff / kTwoPi));
  res.summary.emplace_back(prefix + "fit_residual", fmt(run.fit.residual_rms));
  res.summary.emplace_back(prefix + "no_oscillation",
                           run.fit.no_oscillation ? "1" : "0");
  const auto& p2 = run.record.channel("P_Q2");
  res.summary.emplace_back(prefix + "max_p_q2",
                           fmt(*std::max_element(p2.begin(), p2.end())));
  res.summary.emplace_back(prefix + "norm_drift", fmt(run.record.norm_drift));
  res.summary.emplace_back(prefix + "energy_drift_rel",
                           fmt(run.record.energy_drift_rel));
  res.summary.emplace_back(prefix + "matvecs",
                           std::to_string(run.record.matvecs));
  if (run.record.has_channel("truncation_top"))
    res.summary.emplace_back(prefix + "truncation_top_max",
                             fmt(run.truncation_top_max));
}

DynamicsSetup setup_from_config(const json& config) {
  DynamicsSetup setup;
  setup.horizon_us = config["horizon_us"].get<double>();
  setup.samples = get_int(config, "$", "samples", 401);
  setup.tolerance = get_num(config, "$", "tolerance", 1e-9);
  setup.excite = get_str(config, "$", "initial_excitation", "X1");
  setup.effective_rwa =
      config.contains("effective_rwa") && config["effective_rwa"].get<bool>();
  setup.representation =
      get_str(config, "$", "representation", "ladder") == "bosonized"
          ? CouplerRepresentation::Bosonized
          : CouplerRepresentation::SpinLadder;
  return setup;
}

ScenarioResult run_dynamics_kind(const json& config, const RunOptions& opt,
                                 const std::string& kind,
                                 const std::string& name) {
  const CouplerModel model = model_from_config(config);
  const DynamicsSetup setup = setup_from_config(config);
  ScenarioResult res;
  res.summary.emplace_back("kind", kind);
  res.summary.emplace_back("name", name);
  res.summary.emplace_back("closed_form_geff_mhz",
                           fmt(effective_coupling_rate(model) / kTwoPi));
  append_model_diagnostics(res, model);

  if (kind == "Compare") {
    const CompareReport rep = compare_full_vs_effective(model, setup);
    append_run_summary(res, "full_", rep.full);
    append_run_summary(res, "effective_", rep.effective);
    res.summary.emplace_back("max_population_deviation",
                             fmt(rep.max_population_deviation));
    res.summary.emplace_back("coupler_ripple_full", fmt(rep.coupler_ripple_full));
    res.summary.emplace_back("coupler_ripple_effective",
                             fmt(rep.coupler_ripple_effective));
    const std::string full_csv = out_path(opt, name, "_full_timeseries.csv");
    write_lines(full_csv, timeseries_csv(rep.full.record));
    res.files.push_back(full_csv);
    const std::string eff_csv = out_path(opt, name, "_effective_timeseries.csv");
    write_lines(eff_csv, timeseries_csv(rep.effective.record));
    res.files.push_back(eff_csv);
    if (opt.plot) {
      const std::string svg = out_path(opt, name, "_populations.svg");
      write_population_svg(svg, rep.full.record.times,
                           {{"P_Q1", &rep.full.record.channel("P_Q1")},
                            {"P_Q2", &rep.full.record.channel("P_Q2")},
                            {"P_Q1 effective", &rep.effective.record.channel("P_Q1")},
                            {"P_Q2 effective", &rep.effective.record.channel("P_Q2")}});
      res.files.push_back(svg);
    }
  } else {
    const DynamicsRun run = kind == "FullDynamics"
                                ? run_full_dynamics(model, setup)
                                : run_effective_dynamics(model, setup);
    append_run_summary(res, "", run);
    const std::string csv = out_path(opt, name, "_timeseries.csv");
    write_lines(csv, timeseries_csv(run.record));
    res.files.push_back(csv);
    if (opt.plot) {
      const std::string svg = out_path(opt, name, "_populations.svg");
      write_population_svg(svg, run.record.times,
                           {{"P_Q1", &run.record.channel("P_Q1")},
                            {"P_Q2", &run.record.channel("P_Q2")}});
      res.files.push_back(svg);
    }
  }
  return res;
}

ScenarioResult run_lindblad_kind(const json& config, const RunOptions& opt,
                                 const std::string& name) {
  ScenarioResult res;
  res.summary.emplace_back("kind", "Lindblad");
  res.summary.emplace_back("name", name);

  const auto& e = config["ensemble"];
  int n_qubits = get_int(e, "$.ensemble", "n", 0, true);
  double j, m;
  if (config.contains("register")) {
    const PairRegister reg =
        PairRegister::from_string(config["register"].get<std::string>());
    n_qubits = reg.n_qubits();
    j = reg.j();
    m = reg.m();
  } else {
    j = get_num(e, "$.ensemble", "j", n_qubits / 2.0);
    m = get_num(e, "$.ensemble", "m", -j);
  }
  const double omega_c =
      kTwoPi * config["frequencies_mhz"]["coupler"].get<double>();
  const double gamma = get_num(config["lindblad"], "$.lindblad", "gamma_per_us", 0.0);
  const double gamma_phi =
      get_num(config["lindblad"], "$.lindblad", "gamma_phi_per_us", 0.0);

  const SpacePtr space = make_space({HilbertFactor::spin_ladder("C", j)});
  const auto jz = collective_operator(space, "C", SpinOp::Jz);
  const auto jm_op = collective_operator(space, "C", SpinOp::Jminus);
  SparseOperator h = jz.scaled(omega_c / 2.0);

  EvolutionSpec spec;
  spec.hamiltonian = h;
  spec.t_final = config["horizon_us"].get<double>();
  spec.samples = get_int(config, "$", "samples", 201);
  spec.tolerance = get_num(config, "$", "tolerance", 1e-9);
  spec.observables.push_back({"Jz", jz, false});
  spec.channels.push_back({jm_op, gamma / 2.0});
  spec.channels.push_back({jz, gamma_phi / 2.0});

  const int idx = static_cast<int>(std::lround(m + j));
  const cvec psi0 = basis_state(space, std::vector<int>{idx});
  const TrajectoryRecord rec = evolve_lindblad(spec, DenseMatrix::pure(psi0));

  const auto& jz_series = rec.channel("Jz");
  double stationarity = 0.0;
  for (double v : jz_series)
    stationarity = std::max(stationarity, std::abs(v - jz_series.front()));
  res.summary.emplace_back("space_dimension", std::to_string(space->dimension()));
  res.summary.emplace_back("j", fmt(j));
  res.summary.emplace_back("m", fmt(m));
  res.summary.emplace_back("gamma_per_us", fmt(gamma));
  res.summary.emplace_back("gamma_phi_per_us", fmt(gamma_phi));
  res.summary.emplace_back("jz_stationarity", fmt(stationarity));
  res.summary.emplace_back("trace_drift", fmt(rec.norm_drift));
  res.summary.emplace_back("positivity_floor", fmt(rec.positivity_floor));
  if (m == -j && n_qubits % 2 == 0) {
    PairRegister reg = PairRegister::all_ground(n_qubits);
    PulseCommand cmd;
    cmd.direction = PulseDirection::Raise;
    const int k_singlet = static_cast<int>(std::lround(n_qubits / 2.0 - j));
    for (int i = 0; i < k_singlet; ++i) cmd.targets.push_back(i);
    reg = apply_pulses(reg, cmd);
    const SubradianceReport sub = verify_subradiance(reg, gamma, gamma_phi);
    res.summary.emplace_back("dissipator_jminus_norm", fmt(sub.d_jminus_norm));
    res.summary.emplace_back("dissipator_jz_norm", fmt(sub.d_jz_norm));
    res.summary.emplace_back("pair_lowering_norm", fmt(sub.pair_lowering_norm));
  }

  std::vector<std::string> lines = {"t_us,Jz,Jz_deviation"};
  for (std::size_t i = 0; i < rec.times.size(); ++i)
    lines.push_back(fmt(rec.times[i]) + "," + fmt(jz_series[i]) + "," +
                    fmt(jz_series[i] - jz_series.front()));
  const std::string csv = out_path(opt, name, "_timeseries.csv");
  write_lines(csv, lines);
  res.files.push_back(csv);
  return res;
}

ScenarioResult run_sweep_kind(const json& config, const RunOptions& opt,
                              const std::string& name) {
  ScenarioResult res;
  res.summary.emplace_back("kind", "Sweep");
  res.summary.emplace_back("name", name);

  const auto& f = config["frequencies_mhz"];
  const auto& g = config["couplings_mhz"];
  const auto& s = config["sweep"];
  SweepSpec spec;
  spec.omega1 = kTwoPi * get_num(f, "$.frequencies_mhz", "x1", 0, true);
  spec.omega2 = kTwoPi * get_num(f, "$.frequencies_mhz", "x2", 0, true);
  spec.g1 = kTwoPi * get_num(g, "$.couplings_mhz", "g1", 0, true);
  spec.g2 = kTwoPi * get_num(g, "$.couplings_mhz", "g2", 0, true);
  spec.omega_c_lo = kTwoPi * get_num(s, "$.sweep", "fc_lo_mhz", 0, true);
  spec.omega_c_hi = kTwoPi * get_num(s, "$.sweep", "fc_hi_mhz", 0, true);
  spec.points = opt.points_override ? *opt.points_override
                                    : get_int(s, "$.sweep", "points", 2, true);
  if (spec.points < 2) throw SchemaError("sweep points override must be >= 2");
  if (s.contains("marker_mhz"))
    spec.marker = kTwoPi * s["marker_mhz"].get<double>();

  const std::vector<SweepRow> rows = run_sweep(spec, opt.jobs);

  std::vector<std::string> lines = {
      "fc_mhz,valid,n_opt,abs_geff_mhz,t_transfer_us,residual"};
  for (const auto& r : rows) {
    std::string line = fmt(r.omega_c / kTwoPi);
    if (r.valid) {
      line += ",1," + fmt(r.n_opt) + "," + fmt(std::abs(r.g_eff) / kTwoPi) +
              "," + fmt(r.t_transfer) + "," + fmt(r.residual);
    } else {
      line += ",0,,,,";
    }
    lines.push_back(line);
  }
  const std::string csv = out_path(opt, name, "_sweep.csv");
  write_lines(csv, lines);
  res.files.push_back(csv);

  res.summary.emplace_back("rows", std::to_string(rows.size()));
  double max_residual = 0.0;
  std::size_t valid_rows = 0;
  for (const auto& r : rows)
    if (r.valid) {
      ++valid_rows;
      max_residual = std::max(max_residual, r.residual);
    }
  res.summary.emplace_back("valid_rows", std::to_string(valid_rows));
  res.summary.emplace_back("max_residual", fmt(max_residual));
  if (spec.marker) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (std::abs(rows[i].omega_c - *spec.marker) <
          std::abs(rows[best].omega_c - *spec.marker))
        best = i;
    res.summary.emplace_back("marker_fc_mhz", fmt(rows[best].omega_c / kTwoPi));
    res.summary.emplace_back("marker_n_opt", fmt(rows[best].n_opt));
    res.summary.emplace_back("marker_abs_geff_mhz",
                             fmt(std::abs(rows[best].g_eff) / kTwoPi));
    res.summary.emplace_back("marker_t_transfer_us", fmt(rows[best].t_transfer));
  }
  return res;
}

ScenarioResult run_register_demo(const json& config, const RunOptions& opt,
                                 const std::string& name) {
  ScenarioResult res;
  res.summary.emplace_back("kind", "RegisterDemo");
  res.summary.emplace_back("name", name);

  const CouplerModel base = model_from_config(config);
  const int n_pairs = base.qubits_per_layer / 2;
  PairRegister reg = PairRegister::all_ground(base.qubits_per_layer);

  std::vector<std::string> lines = {"step,register,k_singlet,j,m,jz,geff_mhz"};
  std::vector<double> geffs;
  for (int step = 0; step <= n_pairs; ++step) {
    const double geff = register_to_geff(reg, base);
    geffs.push_back(geff);
    lines.push_back(std::to_string(step) + "," + reg.to_string() + "," +
                    std::to_string(reg.singlet_count()) + "," + fmt(reg.j()) +
                    "," + fmt(reg.m()) + "," + fmt(reg.jz()) + "," +
                    fmt(geff / kTwoPi));
    if (step < n_pairs)
      reg = apply_pulses(reg, {{step}, PulseDirection::Raise});
  }
  const std::string csv = out_path(opt, name, "_register.csv");
  write_lines(csv, lines);
  res.files.push_back(csv);

  res.summary.emplace_back("steps", std::to_string(n_pairs + 1));
  res.summary.emplace_back("geff_all_ground_mhz", fmt(geffs.front() / kTwoPi));
  res.summary.emplace_back("geff_all_singlet_mhz", fmt(geffs.back() / kTwoPi));
  double max_grid_dev = 0.0;
  for (std::size_t i = 1; i + 1 < geffs.size(); ++i)
    max_grid_dev = std::max(
        max_grid_dev, std::abs((geffs[i + 1] - geffs[i]) - (geffs[1] - geffs[0])));
  res.summary.emplace_back("grid_spacing_mhz", fmt((geffs[1] - geffs[0]) / kTwoPi));
  res.summary.emplace_back("grid_uniformity_dev", fmt(max_grid_dev));
  const SubradianceReport sub = verify_subradiance(reg, 1.0, 1.0);
  res.summary.emplace_back("dissipator_jminus_norm", fmt(sub.d_jminus_norm));
  res.summary.emplace_back("dissipator_jz_norm", fmt(sub.d_jz_norm));
  return res;
}

}  // namespace

std::string ScenarioResult::get(const std::string& key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return v;
  throw std::invalid_argument("no summary key '" + key + "'");
}

ScenarioResult run_scenario(const json& config, const RunOptions& options) {
  validate_config(config);
  const std::string kind = config["kind"].get<std::string>();
  const std::string name = config.contains("name")
                               ? config["name"].get<std::string>()
                               : std::string("scenario");

  ScenarioResult res;
  if (kind == "Lindblad")
    res = run_lindblad_kind(config, options, name);
  else if (kind == "Sweep")
    res = run_sweep_kind(config, options, name);
  else if (kind == "RegisterDemo")
    res = run_register_demo(config, options, name);
  else
    res = run_dynamics_kind(config, options, kind, name);

  std::vector<std::string> lines;
  lines.reserve(res.summary.size());
  for (const auto& [k, v] : res.summary) lines.push_back(k + "=" + v);
  const std::string summary_path = out_path(options, name, "_summary.txt");
  write_lines(summary_path, lines);
  res.files.push_back(summary_path);
  return res;
}

}  // namespace dcoupler
