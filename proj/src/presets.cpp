#include <map>

#include "dcoupler/scenario.hpp"

namespace dcoupler {

namespace {

using nlohmann::json;

json qq_dynamics(const std::string& name, int n, double j, double m,
                 double horizon_us, int samples) {
  return json{{"kind", "Compare"},
              {"name", name},
              {"frequencies_mhz", {{"x1", 1000.0}, {"x2", 1000.0}, {"coupler", 4000.0}}},
              {"couplings_mhz", {{"g1", 10.0}, {"g2", 10.0}, {"gc", 0.0}}},
              {"circuits", {{"x1", "Qubit"}, {"x2", "Qubit"}}},
              {"ensemble", {{"n", n}, {"j", j}, {"m", m}}},
              {"layers", 1},
              {"interaction", "XY"},
              {"representation", "ladder"},
              {"horizon_us", horizon_us},
              {"samples", samples},
              {"tolerance", 1e-9},
              {"initial_excitation", "X1"}};
}

struct PresetEntry {
  std::string description;
  json config;
};

const std::map<std::string, PresetEntry>& preset_table() {
  static const std::map<std::string, PresetEntry> table = [] {
    std::map<std::string, PresetEntry> t;
    t["fig3a"] = {"80-qubit coupler at m=-40: maximum negative coupling",
                  qq_dynamics("fig3a", 80, 40.0, -40.0, 0.20, 801)};
    t["fig3b"] = {"80-qubit coupler at m=-20: half-strength coupling",
                  qq_dynamics("fig3b", 80, 40.0, -20.0, 0.40, 801)};
    {
      json cfg = qq_dynamics("fig3c", 80, 0.0, 0.0, 0.20, 801);
      cfg.erase("ensemble");
      cfg["ensemble"] = {{"n", 80}};
      cfg["register"] = std::string(40, 's');
      t["fig3c"] = {"80-qubit coupler, all pairs singlet (m=0): coupling off",
                    cfg};
    }
    t["fig3d"] = {"80-qubit coupler at m=+40: sign-reversed maximum coupling",
                  qq_dynamics("fig3d", 80, 40.0, 40.0, 0.20, 801)};
    t["fig3e"] = {"single layer of 160 ground-state qubits",
                  qq_dynamics("fig3e", 160, 80.0, -80.0, 0.12, 601)};
    t["fig3f"] = {"single layer of 240 ground-state qubits",
                  qq_dynamics("fig3f", 240, 120.0, -120.0, 0.08, 601)};
    t["fig3g"] = {
        "single layer of 320 ground-state qubits: rate exceeds the physical "
        "coupling",
        qq_dynamics("fig3g", 320, 160.0, -160.0, 0.06, 601)};
    {
      json cfg = qq_dynamics("fig3h", 240, 120.0, -120.0, 0.05, 1001);
      cfg["couplings_mhz"]["gc"] = 10.0;
      cfg["layers"] = 2;
      cfg["representation"] = "bosonized";
      cfg["boson_n_max"] = 4;
      t["fig3h"] = {"two-layer cascade, 240 qubits per layer, bosonized layers",
                    cfg};
    }
    t["fig2"] = {
        "microwave-optical transducer sweep: optimal qubit number and "
        "effective rate vs coupler frequency",
        json{{"kind", "Sweep"},
             {"name", "fig2"},
             {"frequencies_mhz", {{"x1", 2744.0}, {"x2", 1.943e8}}},
             {"couplings_mhz", {{"g1", 0.001}, {"g2", 0.001}}},
             {"sweep",
              {{"fc_lo_mhz", 2800.0},
               {"fc_hi_mhz", 1.9e8},
               {"points", 50},
               {"marker_mhz", 2870.0}}}}};
    t["subradiance"] = {
        "collective decay and dephasing leave a subradiant register invariant",
        json{{"kind", "Lindblad"},
             {"name", "subradiance"},
             {"frequencies_mhz", {{"coupler", 4000.0}}},
             {"ensemble", {{"n", 10}}},
             {"register", "ggggg"},
             {"lindblad", {{"gamma_per_us", 1.0}, {"gamma_phi_per_us", 0.5}}},
             {"horizon_us", 10.0},
             {"samples", 201},
             {"tolerance", 1e-9}}};
    t["register-demo"] = {
        "digital coupler walk: pairwise singlet toggles step the coupling "
        "rate through its discrete grid",
        json{{"kind", "RegisterDemo"},
             {"name", "register-demo"},
             {"frequencies_mhz",
              {{"x1", 1000.0}, {"x2", 1000.0}, {"coupler", 4000.0}}},
             {"couplings_mhz", {{"g1", 10.0}, {"g2", 10.0}, {"gc", 0.0}}},
             {"ensemble", {{"n", 80}}}}};
    return t;
  }();
  return table;
}

}  // namespace

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& [name, entry] : preset_table())
    out.push_back({name, entry.description});
  return out;  // std::map iteration is already name-sorted
}

nlohmann::json preset_config(const std::string& name) {
  const auto& table = preset_table();
  const auto it = table.find(name);
  if (it == table.end())
    throw SchemaError("unknown preset '" + name + "'");
  return it->second.config;
}

}  // namespace dcoupler
