// nomamec: sweeps, validation report and identity check.
//
// Exit status: 0 success, 1 a check failed, 2 bad configuration.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nomamec/chanstat.hpp"
#include "nomamec/errors.hpp"
#include "nomamec/sweep.hpp"
#include "nomamec/validation.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kConfigError = 2;

struct SweepFlags {
  std::string mode;
  std::optional<int> population_m;
  std::optional<int> population_k;
  std::string axis;
  std::optional<std::uint64_t> mc_trials;
  std::uint64_t seed = 1;
  std::uint64_t chunk = 65'536;
  std::string out;
  std::string format = "csv";
  nomamec::SweepParameters fixed;
};

void add_sweep_flags(CLI::App& cmd, SweepFlags& f) {
  cmd.add_option("--mode", f.mode, "uplink-latency | uplink-latency-asymptotic | uplink-energy | "
                                   "downlink-energy | downlink-latency")
      ->required();
  cmd.add_option("--M", f.population_m, "uplink population");
  cmd.add_option("--K", f.population_k, "downlink population");
  cmd.add_option("--m", f.fixed.weak_index, "weak index (1-based, ascending gains)");
  cmd.add_option("--n", f.fixed.strong_index, "strong index");
  cmd.add_option("--rho-m-db", f.fixed.rho_m_db);
  cmd.add_option("--rho-n-db", f.fixed.rho_n_db);
  cmd.add_option("--rho-db", f.fixed.rho_db, "downlink SNR (ignored when it is the swept axis)");
  cmd.add_option("--eta", f.fixed.eta, "rho_n / rho_m, linear");
  cmd.add_option("--beta", f.fixed.beta);
  cmd.add_option("--beta-tilde", f.fixed.beta_tilde);
  cmd.add_option("--bits", f.fixed.bits);
  cmd.add_option("--bits-m", f.fixed.bits_m);
  cmd.add_option("--bits-n", f.fixed.bits_n);
  cmd.add_option("--slot", f.fixed.slot);
  cmd.add_option("--alpha-n-sq", f.fixed.alpha_n_sq, "fixed strong-server power share");
  cmd.add_option("--quad-points", f.fixed.quad_points)->capture_default_str();
  cmd.add_option("--sweep", f.axis, "param:start:stop:step (dB)")->required();
  cmd.add_option("--mc-trials", f.mc_trials);
  cmd.add_option("--seed", f.seed)->capture_default_str();
  cmd.add_option("--chunk", f.chunk)->capture_default_str();
  cmd.add_option("--out", f.out)->required();
  cmd.add_option("--format", f.format)->check(CLI::IsMember({"csv"}))->capture_default_str();
}

nomamec::SweepConfig to_config(const SweepFlags& f) {
  nomamec::SweepConfig c;
  c.mode = nomamec::parse_sweep_mode(f.mode);
  c.grid = nomamec::SweepAxis::parse(f.axis);
  c.fixed = f.fixed;
  if (f.population_m && f.population_k && *f.population_m != *f.population_k) {
    throw nomamec::ConfigError("--M and --K disagree");
  }
  c.fixed.population = f.population_m ? f.population_m : f.population_k;
  if (f.mc_trials) {
    nomamec::MonteCarloSpec mc;
    mc.trials = *f.mc_trials;
    mc.seed = f.seed;
    mc.chunk = std::min(f.chunk, *f.mc_trials);
    c.mc = mc;
  }
  c.output = f.out;
  return c;
}

int run_identity(std::optional<int> population, std::optional<int> weak) {
  bool ok = true;
  const int lo_M = population.value_or(2);
  const int hi_M = population.value_or(12);
  for (int M = lo_M; M <= hi_M; ++M) {
    for (int m = weak.value_or(1); m <= (weak ? *weak : M - 1); ++m) {
      const double lhs = nomamec::binomial_identity_lhs(M, m);
      const bool pass = std::fabs(lhs - 1.0) <= 1e-10;
      ok = ok && pass;
      fmt::print("{} M={} m={} lhs={:.17g}\n", pass ? "PASS" : "FAIL", M, m, lhs);
    }
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA-MEC offloading probabilities: sweeps and validation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with flag values; command-line flags win");

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "evaluate one mode over an SNR axis and write CSV");
  add_sweep_flags(*sweep, sweep_flags);

  nomamec::ValidationOptions vopt;
  std::optional<std::uint64_t> validate_trials;
  bool quiet = false;
  auto* validate = app.add_subcommand("validate", "run the analytic-vs-Monte-Carlo grid");
  validate->add_option("--mc-trials", validate_trials,
                       "trials per point for every block (default 1e6 uplink, 1e7 downlink)");
  validate->add_option("--seed", vopt.seed)->capture_default_str();
  validate->add_option("--chunk", vopt.chunk)->capture_default_str();
  validate->add_flag("--quiet", quiet, "print failures and the summary only");

  std::optional<int> id_population;
  std::optional<int> id_weak;
  auto* identity = app.add_subcommand("identity-check", "binomial identity for M <= 12");
  identity->add_option("--M", id_population);
  identity->add_option("--m", id_weak);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*sweep) {
      nomamec::run_sweep(to_config(sweep_flags));
      return kOk;
    }
    if (*validate) {
      if (validate_trials) {
        vopt.uplink_trials = *validate_trials;
        vopt.downlink_trials = *validate_trials;
      }
      const auto report = nomamec::run_validation(vopt, [&](const nomamec::CheckLine& l) {
        if (!quiet || !l.pass) {
          fmt::print("{} [{}] {}: {}\n", l.pass ? "PASS" : "FAIL", l.block, l.label, l.detail);
          std::fflush(stdout);
        }
      });
      std::size_t failed = 0;
      for (const auto& l : report.lines) failed += l.pass ? 0 : 1;
      fmt::print("{} checks, {} failed\n", report.lines.size(), failed);
      return report.all_passed() ? kOk : kCheckFailed;
    }
    if (*identity) return run_identity(id_population, id_weak);
  } catch (const nomamec::NumericError& e) {
    fmt::print(stderr, "numeric error: {}\n", e.what());
    return kCheckFailed;
  } catch (const nomamec::IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfigError;
  } catch (const std::logic_error& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kCheckFailed;
  }
  return kOk;
}
