#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#ifndef DCOUPLER_CLI_PATH
#define DCOUPLER_CLI_PATH "./dcoupler"
#endif

namespace {

int cli(const std::string& args) {
  const std::string cmd =
      std::string(DCOUPLER_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_temp_config(const std::string& name, const std::string& body) {
  std::filesystem::create_directories("cli_test_tmp");
  const std::string path = "cli_test_tmp/" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("cli exit codes follow the contract") {
  std::filesystem::create_directories("cli_test_tmp/out");

  // 0: success
  CHECK(cli("list-presets") == 0);
  CHECK(cli("run --preset register-demo --output-dir cli_test_tmp/out") == 0);

  // 2: schema violations (unknown key, bad JSON, unknown preset)
  const std::string bad_key = write_temp_config(
      "bad_key.json",
      R"({"kind":"Sweep","name":"x","bogus":1,
          "frequencies_mhz":{"x1":2744.0,"x2":1.943e8},
          "couplings_mhz":{"g1":0.001,"g2":0.001},
          "sweep":{"fc_lo_mhz":2800.0,"fc_hi_mhz":1.9e8,"points":5}})");
  CHECK(cli("run --config " + bad_key + " --output-dir cli_test_tmp/out") == 2);
  CHECK(cli("validate --config " + bad_key) == 2);

  const std::string not_json = write_temp_config("nope.json", "{kind:");
  CHECK(cli("validate --config " + not_json) == 2);
  CHECK(cli("validate --config cli_test_tmp/missing.json") == 2);
  CHECK(cli("run --preset no-such-preset --output-dir cli_test_tmp/out") == 2);

  // 3: dispersive-validity hard failure
  const std::string strong = write_temp_config(
      "strong.json",
      R"({"kind":"FullDynamics","name":"strong",
          "frequencies_mhz":{"x1":1000.0,"x2":1000.0,"coupler":4000.0},
          "couplings_mhz":{"g1":1500.0,"g2":1500.0,"gc":0.0},
          "ensemble":{"n":4,"j":2.0,"m":-2.0},
          "horizon_us":0.1,"samples":11})");
  CHECK(cli("run --config " + strong + " --output-dir cli_test_tmp/out") == 3);

  // 4: numerical failure (resonant coupler makes Delta = 0 with g = 0,
  // which passes the dispersive gate but leaves the rate singular)
  const std::string resonant = write_temp_config(
      "resonant.json",
      R"({"kind":"EffectiveDynamics","name":"resonant",
          "frequencies_mhz":{"x1":1000.0,"x2":1000.0,"coupler":1000.0},
          "couplings_mhz":{"g1":0.0,"g2":0.0,"gc":0.0},
          "ensemble":{"n":4,"j":2.0,"m":-2.0},
          "horizon_us":0.1,"samples":11})");
  CHECK(cli("run --config " + resonant + " --output-dir cli_test_tmp/out") == 4);

  // a valid config file runs end to end
  const std::string good = write_temp_config(
      "good.json",
      R"({"kind":"EffectiveDynamics","name":"good",
          "frequencies_mhz":{"x1":1000.0,"x2":1000.0,"coupler":4000.0},
          "couplings_mhz":{"g1":10.0,"g2":10.0,"gc":0.0},
          "ensemble":{"n":8,"j":4.0,"m":-4.0},
          "effective_rwa":true,
          "horizon_us":1.8,"samples":201})");
  CHECK(cli("validate --config " + good) == 0);
  CHECK(cli("run --config " + good + " --output-dir cli_test_tmp/out") == 0);
  CHECK(std::filesystem::exists("cli_test_tmp/out/good_timeseries.csv"));

  // --plot emits the SVG artifact
  CHECK(cli("run --config " + good +
            " --output-dir cli_test_tmp/out --plot") == 0);
  CHECK(std::filesystem::exists("cli_test_tmp/out/good_populations.svg"));

  std::filesystem::remove_all("cli_test_tmp");
}

TEST_CASE("DCOUPLER_OUTPUT_DIR provides the default output directory") {
  std::filesystem::remove_all("cli_env_out");
  const int status = std::system(
      ("DCOUPLER_OUTPUT_DIR=cli_env_out " + std::string(DCOUPLER_CLI_PATH) +
       " run --preset register-demo > /dev/null 2>&1")
          .c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(std::filesystem::exists("cli_env_out/register-demo_register.csv"));
  std::filesystem::remove_all("cli_env_out");
}
