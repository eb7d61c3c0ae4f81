#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(NOMAMEC_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / "nomamec_cli_test";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "a.csv").string();
  const std::string base = "sweep --mode uplink-latency --M 5 --m 2 --n 4 --rho-m-db 10 ";

  CHECK(run("identity-check") == 0);
  CHECK(run("identity-check --M 7 --m 3") == 0);
  CHECK(run(base + "--sweep rho-n-db:10:40:10 --out " + out) == 0);
  CHECK(slurp(out).rfind("param_M,", 0) == 0);

  CHECK(run(base + "--sweep rho-n-db:10:40:10 --mc-trials 5000 --seed 4 --out " + out) == 0);
  const std::string first = slurp(out);
  CHECK(run(base + "--sweep rho-n-db:10:40:10 --mc-trials 5000 --seed 4 --out " + out) == 0);
  CHECK(slurp(out) == first);

  CHECK(run("sweep --mode uplink-energy --M 5 --m 1 --n 2 --rho-m-db 10 --beta 0.5 "
            "--sweep rho-n-db:10:40:10 --out " + out) == 2);
  CHECK(run("sweep --mode uplink-latency --M 5 --m 3 --n 2 --rho-m-db 10 "
            "--sweep rho-n-db:10:40:10 --out " + out) == 2);
  CHECK(run(base + "--sweep rho-n-db:10:40:10 --format json --out " + out) == 2);
  CHECK(run(base + "--sweep rho-n-db:10:40:10 --out " + (dir / "no" / "x.csv").string()) == 2);
  CHECK(run("sweep --mode nope --sweep rho-db:1:2:1 --out " + out) == 2);
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);

  // Config file supplies values, flags override them.
  const auto cfg = dir / "run.toml";
  std::ofstream(cfg) << "[sweep]\nmode = \"uplink-latency\"\nM = 5\nm = 2\nn = 4\n"
                        "rho-m-db = 10\nsweep = \"rho-n-db:10:20:10\"\nout = \""
                     << out << "\"\n";
  CHECK(run("--config " + cfg.string() + " sweep") == 0);
  CHECK(run("--config " + cfg.string() + " sweep --sweep rho-n-db:10:40:10") == 0);
  const std::string text = slurp(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);

  CHECK(run("validate --mc-trials 20000 --quiet") == 0);
  std::filesystem::remove_all(dir);
}
