#pragma once

#include <string>

#include "dcoupler/evolve.hpp"

namespace dcoupler {

struct SwapFit {
  double g_eff = 0.0;  ///< rad/us; signed when a sign channel is available
  bool no_oscillation = false;
  double residual_rms = 0.0;      ///< rms misfit / channel scale
  double first_max_time = 0.0;    ///< us
};

/// Measures the swap rate from an oscillating population channel: the first
/// local maximum gives g = pi / (2 T), a periodogram peak breaks ties for
/// multi-frequency records, and both candidates are refined by least-squares
/// against A sin^2(g t). A flat channel returns 0 with the no-oscillation
/// flag. When sign_channel names an Im<x2^dag x1> series, its early-time
/// sign decides the sign of g_eff.
SwapFit extract_swap_rate(const TrajectoryRecord& record,
                          const std::string& channel,
                          const std::string& sign_channel = "");

}  // namespace dcoupler
