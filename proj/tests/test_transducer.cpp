#include <doctest.h>

#include <cmath>

#include "dcoupler/transducer.hpp"

using namespace dcoupler;

namespace {

SweepSpec fig2_spec(int points = 50) {
  SweepSpec spec;
  spec.omega1 = kTwoPi * 2744.0;
  spec.omega2 = kTwoPi * 1.943e8;
  spec.g1 = kTwoPi * 1e-3;
  spec.g2 = kTwoPi * 1e-3;
  spec.omega_c_lo = kTwoPi * 2800.0;
  spec.omega_c_hi = kTwoPi * 1.9e8;
  spec.points = points;
  spec.marker = kTwoPi * 2870.0;
  return spec;
}

}  // namespace

TEST_CASE("sweep grid: deterministic, monotone, marker included") {
  const auto rows = run_sweep(fig2_spec());
  REQUIRE(rows.size() == 51);  // 50 grid points + marker
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].omega_c > rows[i - 1].omega_c);

  std::size_t marker_idx = 0;
  double best = 1e300;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double d = std::abs(rows[i].omega_c - kTwoPi * 2870.0);
    if (d < best) {
      best = d;
      marker_idx = i;
    }
  }
  CHECK(best == doctest::Approx(0.0));
  CHECK(rows[marker_idx].valid);
  CHECK(rows[marker_idx].n_opt == doctest::Approx(2.394e16).epsilon(0.02));
  CHECK(std::abs(rows[marker_idx].g_eff) / kTwoPi ==
        doctest::Approx(9.7e7).epsilon(0.1));
}

TEST_CASE("sweep properties: residual and transfer-time identity") {
  const auto rows = run_sweep(fig2_spec());
  for (const auto& r : rows) {
    if (!r.valid) continue;
    CHECK(r.residual < 1e-9);
    CHECK(r.t_transfer ==
          doctest::Approx(M_PI / (2.0 * std::abs(r.g_eff))).epsilon(1e-12));
  }
}

TEST_CASE("N_opt grows with detuning from the near mode") {
  // microwave side: the near mode is x1, detuning grows with omega_c
  SweepSpec low = fig2_spec(40);
  low.omega_c_lo = kTwoPi * 2800.0;
  low.omega_c_hi = kTwoPi * 2.0e4;
  low.marker.reset();
  const auto low_rows = run_sweep(low);
  for (std::size_t i = 1; i < low_rows.size(); ++i) {
    REQUIRE(low_rows[i].valid);
    CHECK(low_rows[i].n_opt > low_rows[i - 1].n_opt);
  }

  // optical side: the near mode is x2, detuning grows as omega_c recedes
  SweepSpec high = fig2_spec(40);
  high.omega_c_lo = kTwoPi * 1.5e8;
  high.omega_c_hi = kTwoPi * 1.9e8;
  high.marker.reset();
  const auto high_rows = run_sweep(high);
  for (std::size_t i = 1; i < high_rows.size(); ++i) {
    REQUIRE(high_rows[i].valid);
    CHECK(high_rows[i].n_opt < high_rows[i - 1].n_opt);
  }
}

TEST_CASE("parallel sweep equals the serial sweep bitwise") {
  const auto serial = run_sweep(fig2_spec(), 1);
  const auto parallel = run_sweep(fig2_spec(), 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].omega_c == parallel[i].omega_c);
    CHECK(serial[i].valid == parallel[i].valid);
    CHECK(serial[i].n_opt == parallel[i].n_opt);
    CHECK(serial[i].g_eff == parallel[i].g_eff);
    CHECK(serial[i].t_transfer == parallel[i].t_transfer);
  }
}

TEST_CASE("sweep input guards") {
  SweepSpec bad = fig2_spec();
  bad.points = 1;
  CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
  bad = fig2_spec();
  bad.omega_c_lo = bad.omega_c_hi;
  CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
}
