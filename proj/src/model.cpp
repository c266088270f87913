#include "dcoupler/model.hpp"

#include <cmath>
#include <sstream>

namespace dcoupler {

CouplerModel CouplerModel::all_ground(CircuitElement x1, CircuitElement x2,
                                      double coupler_freq_mhz, int n,
                                      double g1_mhz, double g2_mhz,
                                      double gc_mhz, int layers) {
  CouplerModel m;
  m.x1 = x1;
  m.x2 = x2;
  m.coupler_freq_mhz = coupler_freq_mhz;
  m.qubits_per_layer = n;
  m.layers = layers;
  m.g1_mhz = g1_mhz;
  m.g2_mhz = g2_mhz;
  m.gc_mhz = gc_mhz;
  m.sector = {n / 2.0, -n / 2.0};
  return m;
}

ValidationReport validate(const CouplerModel& model) {
  ValidationReport rep;
  auto err = [&rep](const std::string& s) {
    rep.errors.push_back(s);
    rep.ok = false;
  };

  if (model.x1.freq_mhz <= 0 || model.x2.freq_mhz <= 0 ||
      model.coupler_freq_mhz <= 0)
    err("frequencies must be positive");
  if (model.qubits_per_layer < 2)
    err("ensemble needs at least 2 qubits per layer");
  if (model.layers < 1) err("layer count must be >= 1");
  if (model.qubits_per_layer % 2 != 0)
    rep.warnings.push_back(
        "odd qubit number: minimum |<J^z>| is 1, the coupling cannot reach "
        "exactly zero");

  const double j = model.sector.j, m = model.sector.m;
  const double two_j = 2.0 * j;
  if (j < 0 || std::abs(two_j - std::round(two_j)) > 1e-9)
    err("sector j must be a non-negative half-integer");
  else {
    if (std::abs(m) > j + 1e-12) err("sector requires |m| <= j");
    if (j > model.qubits_per_layer / 2.0 + 1e-12)
      err("sector requires j <= N/2");
    const double diff = j - m;
    if (std::abs(diff - std::round(diff)) > 1e-9)
      err("sector requires j - m to be an integer");
  }

  for (int i = 0; i < 2; ++i) {
    const double g = model.g(i);
    const double delta = model.omega(i) - model.omega_c();
    const double sigma = model.omega(i) + model.omega_c();
    // an uncoupled circuit passes the dispersive gate; a vanishing
    // denominator is then reported where it is actually used
    rep.g_over_delta[i] =
        g == 0.0 ? 0.0 : (delta == 0.0 ? INFINITY : std::abs(g / delta));
    rep.g_over_sigma[i] =
        g == 0.0 ? 0.0 : (sigma == 0.0 ? INFINITY : std::abs(g / sigma));
    const double chi_plus =
        g == 0.0 ? 0.0
                 : ((delta == 0.0 || sigma == 0.0)
                        ? INFINITY
                        : -g * g * (1.0 / delta + 1.0 / sigma));
    rep.rwa_ratio[i] = std::abs(chi_plus / model.omega_c());
    if (rep.g_over_delta[i] > 0.3) {
      std::ostringstream os;
      os << "dispersive validity violated for circuit X" << (i + 1)
         << ": |g/Delta| = " << rep.g_over_delta[i] << " > 0.3";
      err(os.str());
    }
    if (rep.rwa_ratio[i] > 0.05) {
      std::ostringstream os;
      os << "RWA ratio chi^+/omega_c = " << rep.rwa_ratio[i]
         << " exceeds 0.05 for circuit X" << (i + 1);
      rep.warnings.push_back(os.str());
    }
  }
  return rep;
}

void ensure_valid(const CouplerModel& model) {
  const ValidationReport rep = validate(model);
  if (!rep.ok) {
    std::string msg = "invalid coupler model:";
    for (const auto& e : rep.errors) msg += " " + e + ";";
    throw DispersiveError(msg);
  }
}

}  // namespace dcoupler
