// End-to-end checks of the pbom binary: exit codes, JSON/CSV outputs.

#include <cstdio>
#include <algorithm>
#include <cmath>
#include <sys/wait.h>
#include <unistd.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "pbom/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("pbom_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(PBOM_BIN) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("model command emits the derived linear model as JSON") {
  const auto r = run("model");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("g_bar").get<double>() == doctest::Approx(2.4716578945963355e-4).epsilon(1e-10));
  CHECK(j.at("n_c").get<double>() == doctest::Approx(70.92973809142701).epsilon(1e-10));
  CHECK(j.at("N_c").get<double>() == doctest::Approx(74022.033).epsilon(1e-6));
  CHECK(j.at("mode_degeneracy").get<int>() == 2);
  CHECK(j.at("strong_coupling_ratio").get<double>() == doctest::Approx(8.2389).epsilon(1e-3));
  CHECK(j.contains("params"));
}

TEST_CASE("model command: interaction-free zero-temperature overrides") {
  const auto r = run("model --set zeta=0 --set T=0");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("u").get<double>() == 1.0);
  CHECK(j.at("v").get<double>() == 0.0);
  CHECK(j.at("n_th").get<double>() == 0.0);
  CHECK(j.at("N0").get<double>() == 1e6);
}

TEST_CASE("config file plumbing and error exit codes") {
  SUBCASE("valid config file") {
    const auto path = write_config("ok.json", R"({"T": 50, "zeta": 0.0004})");
    const auto r = run("model --config " + path);
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("params").at("T").get<double>() == 50.0);
  }
  SUBCASE("malformed JSON: exit 2 with line/column diagnostics") {
    const auto path = write_config("bad.json", "{\n  \"T\": 50,,\n}");
    const auto r = run("model --config " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(r.err.find("column") != std::string::npos);
  }
  SUBCASE("unknown key: exit 2") {
    const auto path = write_config("unknown.json", R"({"temperature": 50})");
    const auto r = run("model --config " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("temperature") != std::string::npos);
  }
  SUBCASE("non-integer mode index: exit 2") {
    const auto path = write_config("badmode.json", R"({"s": 2.5})");
    CHECK(run("model --config " + path).exit_code == 2);
  }
  SUBCASE("below condensation threshold: exit 3") {
    const auto r = run("model --set N_t=1000");
    CHECK(r.exit_code == 3);
  }
  SUBCASE("bad --set value: exit 2") {
    CHECK(run("model --set T=warm").exit_code == 2);
    CHECK(run("model --set T").exit_code == 2);
  }
  SUBCASE("invalid parameter value: exit 2") {
    CHECK(run("model --set gamma=0").exit_code == 2);
  }
}

TEST_CASE("steady command") {
  const auto r = run("steady");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("n_phonon").get<double>() == doctest::Approx(14.058986023090501).epsilon(1e-8));
  CHECK(j.at("n_photon").get<double>() == doctest::Approx(65.66192189291783).epsilon(1e-8));
  CHECK(j.at("E_N").get<double>() == 0.0);
  CHECK(j.at("stable").get<bool>());
  CHECK(j.at("T_eff_over_Tm").get<double>() == doctest::Approx(0.19064683882948927).epsilon(1e-8));

  // doubling g at resonance crosses the instability: exit 4, eigenvalues shown
  const auto bad = run("steady --set g=8.4e-7");
  CHECK(bad.exit_code == 4);
  CHECK(bad.err.find("eigenvalue") != std::string::npos);
}

TEST_CASE("spectrum command writes the frozen CSV contract") {
  SUBCASE("displacement") {
    const auto r = run("spectrum --kind displacement --points 41");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("omega_over_Omega,S_x_closed,S_x_engine\n", 0) == 0);
    // 41 data rows + header
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 42);
  }
  SUBCASE("output") {
    const auto r = run("spectrum --kind output --points 11");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("omega_over_Omega,S_out,S_out_sym,S_out_engine\n", 0) == 0);
  }
  SUBCASE("squeezing") {
    const auto r = run("spectrum --kind squeezing --points 11 --omega-min 0 --omega-max 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("omega_over_Omega,S_opt_scan,S_opt_printed,phi_opt\n", 0) == 0);
  }
  SUBCASE("vacuum output intensity is identically zero") {
    const auto r = run("spectrum --kind output --points 5 --set zeta=0 --set T=0 --set g=0");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
      const auto c1 = line.find(',');
      CHECK(std::abs(std::strtod(line.c_str() + c1 + 1, nullptr)) < 1e-12);
    }
  }
  SUBCASE("unknown kind: exit 2") {
    CHECK(run("spectrum --kind wigner").exit_code == 2);
  }
  SUBCASE("instability: exit 4") {
    const auto r = run("spectrum --kind displacement --set g=8.4e-7");
    CHECK(r.exit_code == 4);
  }
}

TEST_CASE("fig command writes per-curve CSVs and a manifest") {
  const fs::path dir = scratch_dir() / "fig4a";
  const auto r = run("fig fig4a --out " + dir.string());
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(dir / "fig4a_zeta4e-4.csv"));
  CHECK(fs::exists(dir / "fig4a_zeta10e-4.csv"));
  CHECK(fs::exists(dir / "fig4a_manifest.json"));
  std::ifstream mf(dir / "fig4a_manifest.json");
  nlohmann::json manifest;
  mf >> manifest;
  CHECK(manifest.at("figure") == "fig4a");
  CHECK(manifest.at("files").size() == 2);
  std::ifstream csv(dir / "fig4a_zeta4e-4.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "T_over_omega_t,n_phonon,status");

  CHECK(run("fig fig99").exit_code == 2);
}

TEST_CASE("sweep command") {
  const auto cfg = write_config("sweep.json", R"({
    "base": {"T": 150.0},
    "axis1": {"name": "T", "values": [50.0, 100.0, 150.0]},
    "observables": ["n_phonon", "g_bar"]
  })");
  const auto r = run("sweep --config " + cfg);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("T,n_phonon,g_bar,status\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
  CHECK(r.out.find(",ok\n") != std::string::npos);

  const auto bad = write_config("sweep_bad.json", R"({
    "axis1": {"name": "flux", "values": [1.0]},
    "observables": ["n_phonon"]
  })");
  CHECK(run("sweep --config " + bad).exit_code == 2);
  CHECK(run("sweep").exit_code == 2);
}

TEST_CASE("CSV bytes re-read to identical values") {
  const auto r = run("spectrum --kind displacement --points 21");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const double v = std::strtod(cell.c_str(), nullptr);
      CHECK(pbom::format_double(v) == cell);
    }
  }
}
