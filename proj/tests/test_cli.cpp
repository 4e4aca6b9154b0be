// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() { return XFNOISE_CLI_PATH; }
std::string config_dir() { return XFNOISE_CONFIG_DIR; }

int run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("xfnoise_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("toy scenario runs are deterministic and byte-identical", "[cli]") {
  const fs::path dir = fresh_dir("toy");
  const std::string cfg = config_dir() + std::string("/toy_flat.json");
  REQUIRE(run_cli("run " + cfg + " --out-dir " + (dir / "a").string()) == 0);
  REQUIRE(run_cli("run " + cfg + " --out-dir " + (dir / "b").string() + " --threads 4") == 0);
  const std::string a = slurp(dir / "a" / "fig3.csv");
  const std::string b = slurp(dir / "b" / "fig3.csv");
  CHECK(a == b);
  CHECK(a.find("alpha,") == 0);
  // 41 alpha rows plus the header
  CHECK(std::count(a.begin(), a.end(), '\n') == 42);
  CHECK(fs::exists(dir / "a" / "fig3.meta.json"));
}

TEST_CASE("noisy-neighbor scenario writes the banded-environment table", "[cli]") {
  const fs::path dir = fresh_dir("toy_noisy");
  const std::string cfg = config_dir() + std::string("/toy_noisy_neighbor.json");
  REQUIRE(run_cli("run " + cfg + " --out-dir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "fig4.csv"));
  const std::string meta = slurp(dir / "fig4.meta.json");
  CHECK(meta.find("band_elevated") != std::string::npos);
}

TEST_CASE("tma scenario emits the sweep and filter tables", "[cli]") {
  const fs::path dir = fresh_dir("tma");
  const std::string cfg = config_dir() + std::string("/tma_fig7.json");
  REQUIRE(run_cli("run " + cfg + " --out-dir " + dir.string()) == 0);
  const std::string fig7 = slurp(dir / "fig7.csv");
  CHECK(fig7.find("p,rate_divisor,mean_aperture_norm") == 0);
  const std::string db = slurp(dir / "tma_db.csv");
  CHECK(db.find("filter_width,noise_temperature_increase_db") == 0);
  // frozen staggered-schedule values appear in the filter table
  CHECK(db.find("\n1,4.18") != std::string::npos);
  CHECK(db.find("\n2,5.35") != std::string::npos);
}

TEST_CASE("pamp scenario tags methods and the degenerate point", "[cli]") {
  const fs::path dir = fresh_dir("pamp");
  write_file(dir / "cfg.json", R"({
    "scenario": "pamp",
    "pamp": {
      "frequencies_hz": [2.998e8, 3.0e8, 3.002e8],
      "harmonics": [-2, -1, 0, 1],
      "transient_frequencies_hz": []
    }
  })");
  REQUIRE(run_cli("run " + (dir / "cfg.json").string() + " --out-dir " + dir.string() +
                  " --threads 3 --seedless") == 0);
  const std::string fig5 = slurp(dir / "fig5.csv");
  CHECK(fig5.find("method,model,freq_hz,p,") == 0);
  CHECK(fig5.find("cm,tv,300000000,") != std::string::npos);
  CHECK(fig5.find("cm,lti,") != std::string::npos);
  // degenerate flag set for p in {0,-1} at exactly 300 MHz
  CHECK(fig5.find("cm,tv,300000000,0") != std::string::npos);
  std::istringstream lines(fig5);
  std::string line;
  bool deg_found = false;
  while (std::getline(lines, line))
    if (line.rfind("cm,tv,300000000,0,", 0) == 0 && line.back() == '1') deg_found = true;
  CHECK(deg_found);
}

TEST_CASE("config errors map to the documented exit codes", "[cli]") {
  const fs::path dir = fresh_dir("errors");

  // unreadable / malformed -> 1
  CHECK(run_cli("run " + (dir / "missing.json").string()) == 1);
  write_file(dir / "broken.json", "{ not json");
  CHECK(run_cli("run " + (dir / "broken.json").string()) == 1);

  // unknown keys and bad values -> 2
  write_file(dir / "unknown.json",
             R"({"scenario": "toy", "toy": {"carrier_hz": 3e8, "bandwidth_hz": 1e6,
                 "unexpected": 1}})");
  CHECK(run_cli("run " + (dir / "unknown.json").string() + " --out-dir " + dir.string()) == 2);
  write_file(dir / "badmode.json",
             R"({"scenario": "toy", "toy": {"carrier_hz": 3e8, "bandwidth_hz": 1e6,
                 "mode": "sideways"}})");
  CHECK(run_cli("run " + (dir / "badmode.json").string() + " --out-dir " + dir.string()) == 2);
  write_file(dir / "badscenario.json", R"({"scenario": "warp"})");
  CHECK(run_cli("run " + (dir / "badscenario.json").string() + " --out-dir " + dir.string()) ==
        2);

  // numerically impossible request -> 3 (observation at the pump frequency)
  write_file(dir / "singular.json",
             R"({"scenario": "pamp", "pamp": {"frequencies_hz": [6.0e8],
                 "transient_frequencies_hz": []}})");
  CHECK(run_cli("run " + (dir / "singular.json").string() + " --out-dir " + dir.string()) == 3);
}

TEST_CASE("verify quadrature and tma targets pass", "[cli]") {
  const fs::path dir = fresh_dir("verify");
  CHECK(run_cli("verify quadrature --out-dir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "verify_quadrature.csv"));
  CHECK(run_cli("verify tma --out-dir " + dir.string()) == 0);
  const std::string report = slurp(dir / "verify_tma.csv");
  CHECK(report.find("filter_db_p1") != std::string::npos);
  CHECK(report.find(",0\n") == std::string::npos);  // no failed checks
}
