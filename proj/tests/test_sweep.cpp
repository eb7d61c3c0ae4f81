#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nomamec/errors.hpp"
#include "nomamec/sweep.hpp"
#include "nomamec/uplink_latency.hpp"

using namespace nomamec;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

SweepConfig strong_user_sweep() {
  SweepConfig c;
  c.mode = SweepMode::uplink_latency;
  c.grid = SweepAxis::parse("rho-n-db:10:40:5");
  c.fixed.population = 5;
  c.fixed.weak_index = 2;
  c.fixed.strong_index = 4;
  c.fixed.rho_m_db = 10.0;
  return c;
}

}  // namespace

TEST_CASE("axis parsing") {
  const auto a = SweepAxis::parse("rho-db:10:40:5");
  CHECK(a.parameter == "rho-db");
  CHECK(a.values() == std::vector<double>{10, 15, 20, 25, 30, 35, 40});
  CHECK(SweepAxis::parse("rho-db:0:1:0.1").values().size() == 11);
  CHECK_THROWS_AS(SweepAxis::parse("rho-db:10:40"), ConfigError);
  CHECK_THROWS_AS(SweepAxis::parse("rho-db:a:40:5"), ConfigError);
  CHECK_THROWS_AS(SweepAxis::parse("rho-db:40:10:5").values(), ConfigError);
  CHECK_THROWS_AS(SweepAxis::parse("rho-db:10:40:0").values(), ConfigError);
  CHECK(parse_sweep_mode("downlink-energy") == SweepMode::downlink_energy);
  CHECK_THROWS_AS(parse_sweep_mode("uplink"), ConfigError);
}

TEST_CASE("rho_n sweep at fixed rho_m is nondecreasing") {
  const auto rows = lines_of(render_sweep_csv(strong_user_sweep()));
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] ==
        "param_M,param_m,param_n,param_rho_m_db,param_rho_n_db,param_eta,analytic,asymptotic,"
        "mc_value,mc_stderr,mc_trials");
  double prev = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto c = cells(rows[i]);
    REQUIRE(c.size() == 11);
    CHECK(c[7].empty());
    CHECK(c[8].empty());
    const double v = std::stod(c[6]);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("rho_m sweep at fixed eta: asymptotic column and decay") {
  SweepConfig c;
  c.mode = SweepMode::uplink_latency_asymptotic;
  c.grid = SweepAxis::parse("rho-m-db:0:50:10");
  c.fixed.population = 5;
  c.fixed.weak_index = 1;
  c.fixed.strong_index = 2;
  c.fixed.eta = 2.0;
  const auto rows = lines_of(render_sweep_csv(c));
  REQUIRE(rows.size() == 7);
  double prev = 1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cl = cells(rows[i]);
    CHECK_FALSE(cl[7].empty());
    CHECK(std::stod(cl[6]) <= prev);
    prev = std::stod(cl[6]);
  }
  CHECK(prev < 0.05);
}

TEST_CASE("energy anchor row") {
  SweepConfig c;
  c.mode = SweepMode::uplink_energy;
  c.grid = SweepAxis::parse("rho-n-db:25:25:1");
  c.fixed.population = 5;
  c.fixed.weak_index = 1;
  c.fixed.strong_index = 5;
  c.fixed.rho_m_db = 10.0;
  c.fixed.beta = 0.125;
  const auto rows = lines_of(render_sweep_csv(c));
  REQUIRE(rows.size() == 2);
  const double v = std::stod(cells(rows[1])[6]);
  CHECK(v >= 1e-2 / 3);
  CHECK(v <= 3e-2);
}

TEST_CASE("downlink modes") {
  SweepConfig c;
  c.mode = SweepMode::downlink_energy;
  c.grid = SweepAxis::parse("rho-db:10:20:10");
  c.fixed.population = 5;
  c.fixed.weak_index = 2;
  c.fixed.strong_index = 4;
  c.fixed.beta_tilde = 0.5;
  c.fixed.bits = 1.0;
  c.fixed.slot = 1.0;
  c.mc = MonteCarloSpec{20'000, 3, 4'096};
  auto rows = lines_of(render_sweep_csv(c));
  REQUIRE(rows.size() == 3);
  CHECK(cells(rows[1]).size() == 13);
  CHECK(cells(rows[1]).back() == "20000");

  c.mode = SweepMode::downlink_latency;
  c.fixed.beta_tilde.reset();
  c.fixed.alpha_n_sq = 0.2;
  rows = lines_of(render_sweep_csv(c));
  REQUIRE(rows.size() == 5);
  CHECK(cells(rows[1])[8] == "m");
  CHECK(cells(rows[2])[8] == "n");
  CHECK(cells(rows[1])[9].empty());

  c.mc.reset();
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("validation rejects before computing") {
  auto c = strong_user_sweep();
  c.fixed.eta = 2.0;  // both rho-m-db and eta
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = strong_user_sweep();
  c.fixed.strong_index = 2;
  c.fixed.weak_index = 2;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = strong_user_sweep();
  c.mode = SweepMode::uplink_energy;
  c.fixed.beta = 0.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = strong_user_sweep();
  c.fixed.population = 30;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = strong_user_sweep();
  c.grid.parameter = "rho-db";
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = strong_user_sweep();
  c.mc = MonteCarloSpec{0, 1, 1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("run_sweep writes the file and reports unwritable paths") {
  const auto dir = std::filesystem::temp_directory_path() / "nomamec_sweep_test";
  std::filesystem::create_directories(dir);
  auto c = strong_user_sweep();
  c.output = dir / "out.csv";
  run_sweep(c);
  std::ifstream in(c.output);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == render_sweep_csv(c));

  c.output = dir / "missing" / "out.csv";
  CHECK_THROWS_AS(run_sweep(c), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("point seeds differ and are stable") {
  CHECK(point_seed(1, 0) != point_seed(1, 1));
  CHECK(point_seed(1, 0) != point_seed(2, 0));
  CHECK(point_seed(9, 4) == point_seed(9, 4));
}
