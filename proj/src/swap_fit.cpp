#include "dcoupler/swap_fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dcoupler {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

double sse_for(const std::vector<double>& t, const std::vector<double>& y,
               double g) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = std::sin(g * t[i]);
    const double s2 = s * s;
    num += y[i] * s2;
    den += s2 * s2;
  }
  const double amp = den > 0.0 ? num / den : 0.0;
  double sse = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = std::sin(g * t[i]);
    const double r = amp * s * s - y[i];
    sse += r * r;
  }
  return sse;
}

double golden_refine(const std::vector<double>& t, const std::vector<double>& y,
                     double g0) {
  const double phi = 0.61803398874989484820;
  double a = 0.7 * g0, b = 1.3 * g0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = sse_for(t, y, c), fd = sse_for(t, y, d);
  for (int it = 0; it < 120; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = sse_for(t, y, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = sse_for(t, y, d);
    }
  }
  return 0.5 * (a + b);
}

/// Dominant non-DC frequency of the detrended series, cycles per time unit,
/// with parabolic interpolation of the log periodogram.
double periodogram_peak(const std::vector<double>& t,
                        const std::vector<double>& y) {
  const std::size_t n = y.size();
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  const std::size_t half = n / 2;
  std::vector<double> power(half + 1, 0.0);
  for (std::size_t k = 1; k <= half; ++k) {
    double re = 0.0, im = 0.0;
    const double w = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = y[i] - mean;
      re += v * std::cos(w * static_cast<double>(i));
      im -= v * std::sin(w * static_cast<double>(i));
    }
    power[k] = re * re + im * im;
  }
  std::size_t best = 1;
  for (std::size_t k = 2; k <= half; ++k)
    if (power[k] > power[best]) best = k;
  double shift = 0.0;
  if (best > 1 && best < half) {
    const double l0 = std::log(power[best - 1] + 1e-300);
    const double l1 = std::log(power[best] + 1e-300);
    const double l2 = std::log(power[best + 1] + 1e-300);
    const double den = l0 - 2.0 * l1 + l2;
    if (std::abs(den) > 1e-300) shift = 0.5 * (l0 - l2) / den;
    shift = std::clamp(shift, -0.5, 0.5);
  }
  const double span = t.back() - t.front();
  return (static_cast<double>(best) + shift) / span;
}

}  // namespace

SwapFit extract_swap_rate(const TrajectoryRecord& record,
                          const std::string& channel,
                          const std::string& sign_channel) {
  const std::vector<double>& y = record.channel(channel);
  const std::vector<double>& t = record.times;
  SwapFit fit;
  if (y.size() < 8) throw std::invalid_argument("record too short to fit");

  const double y_max = *std::max_element(y.begin(), y.end());
  const double y_min = *std::min_element(y.begin(), y.end());
  const double scale = std::max(1.0, std::abs(y_max));
  if (y_max - y_min < 0.02 * scale) {
    fit.no_oscillation = true;
    return fit;
  }

  std::vector<double> candidates;
  // first local maximum above half the channel peak
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] >= y[i - 1] && y[i] >= y[i + 1] && y[i] > 0.5 * y_max) {
      double t_peak = t[i];
      const double den = y[i - 1] - 2.0 * y[i] + y[i + 1];
      if (std::abs(den) > 0.0) {
        const double delta =
            std::clamp(0.5 * (y[i - 1] - y[i + 1]) / den, -0.5, 0.5);
        t_peak += delta * (t[1] - t[0]);
      }
      fit.first_max_time = t_peak;
      if (t_peak > 0.0) candidates.push_back(kPi / (2.0 * t_peak));
      break;
    }
  }
  // periodogram peak: A sin^2(g t) oscillates at angular frequency 2 g
  const double f_dom = periodogram_peak(t, y);
  if (f_dom > 0.0) candidates.push_back(kPi * f_dom);

  if (candidates.empty()) {
    fit.no_oscillation = true;
    return fit;
  }

  double best_g = 0.0, best_sse = 0.0;
  bool first = true;
  for (double g0 : candidates) {
    const double g = golden_refine(t, y, g0);
    const double sse = sse_for(t, y, g);
    if (first || sse < best_sse) {
      best_g = g;
      best_sse = sse;
      first = false;
    }
  }
  fit.g_eff = best_g;
  fit.residual_rms =
      std::sqrt(best_sse / static_cast<double>(y.size())) / scale;

  if (!sign_channel.empty() && record.has_channel(sign_channel)) {
    const auto& sc = record.channel(sign_channel);
    const double window =
        fit.first_max_time > 0.0 ? fit.first_max_time : t.back();
    double sum = 0.0;
    for (std::size_t i = 0; i < t.size() && t[i] <= window; ++i) sum += sc[i];
    if (sum < 0.0) fit.g_eff = -fit.g_eff;
  }
  return fit;
}

}  // namespace dcoupler
