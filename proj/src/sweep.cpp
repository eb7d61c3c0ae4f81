#include "nomamec/sweep.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <random>

#include <fmt/format.h>

#include "nomamec/downlink.hpp"
#include "nomamec/errors.hpp"
#include "nomamec/events.hpp"
#include "nomamec/uplink_energy.hpp"
#include "nomamec/uplink_latency.hpp"

namespace nomamec {

namespace {

struct Row {
  std::vector<std::string> params;
  std::optional<double> analytic;
  std::optional<double> asymptotic;
  std::optional<ProbabilityEstimate> mc;
};

std::string num(double v) { return fmt::format("{}", v); }

bool is_uplink(SweepMode mode) {
  return mode == SweepMode::uplink_latency || mode == SweepMode::uplink_latency_asymptotic ||
         mode == SweepMode::uplink_energy;
}

template <typename T>
const T& need(const std::optional<T>& v, const char* flag, SweepMode mode) {
  if (!v) {
    throw ConfigError(fmt::format("mode {} requires --{}", to_string(mode), flag));
  }
  return *v;
}

OrderedPairConfig pair_config(const SweepParameters& p, SweepMode mode) {
  const char* pop_flag = is_uplink(mode) ? "M" : "K";
  return OrderedPairConfig(need(p.population, pop_flag, mode), need(p.weak_index, "m", mode),
                           need(p.strong_index, "n", mode));
}

struct UplinkSnr {
  double rho_m_db;
  double rho_n_db;
  SnrOperatingPoint snr;
};

UplinkSnr uplink_snr(const SweepConfig& c, double axis_db) {
  const auto& p = c.fixed;
  if (c.grid.parameter == "rho-m-db") {
    if (p.rho_n_db) {
      return {axis_db, *p.rho_n_db, SnrOperatingPoint::from_db(axis_db, *p.rho_n_db)};
    }
    const auto snr = SnrOperatingPoint::from_eta(db_to_linear(axis_db), *p.eta);
    return {axis_db, linear_to_db(snr.rho_n()), snr};
  }
  if (p.rho_m_db) {
    return {*p.rho_m_db, axis_db, SnrOperatingPoint::from_db(*p.rho_m_db, axis_db)};
  }
  const double rho_n = db_to_linear(axis_db);
  const SnrOperatingPoint snr(rho_n / *p.eta, rho_n);
  return {linear_to_db(snr.rho_m()), axis_db, snr};
}

double latency_bits(const SweepParameters& p, const std::optional<double>& specific,
                    const char* flag) {
  if (specific) return *specific;
  if (p.bits) return *p.bits;
  throw ConfigError(fmt::format("mode downlink-latency requires --{} or --bits", flag));
}

std::vector<std::string> header_params(SweepMode mode) {
  switch (mode) {
    case SweepMode::uplink_latency:
    case SweepMode::uplink_latency_asymptotic:
      return {"param_M", "param_m", "param_n", "param_rho_m_db", "param_rho_n_db", "param_eta"};
    case SweepMode::uplink_energy:
      return {"param_M", "param_m", "param_n", "param_rho_m_db", "param_rho_n_db", "param_beta"};
    case SweepMode::downlink_energy:
      return {"param_K",         "param_m",    "param_n",    "param_rho_db",
              "param_beta_tilde", "param_bits", "param_slot", "param_quad_points"};
    case SweepMode::downlink_latency:
      return {"param_K",      "param_m",      "param_n",    "param_rho_db", "param_alpha_n_sq",
              "param_bits_m", "param_bits_n", "param_slot", "param_target"};
  }
  return {};
}

// Analytic part of one grid point; MC is attached afterwards.
std::vector<Row> analytic_rows(const SweepConfig& c, double axis_db) {
  const auto& p = c.fixed;
  const OrderedPairConfig cfg = pair_config(p, c.mode);
  const std::vector<std::string> idx{std::to_string(cfg.population()),
                                     std::to_string(cfg.weak_index()),
                                     std::to_string(cfg.strong_index())};
  auto with = [&](std::initializer_list<std::string> extra) {
    std::vector<std::string> out = idx;
    out.insert(out.end(), extra);
    return out;
  };

  switch (c.mode) {
    case SweepMode::uplink_latency:
    case SweepMode::uplink_latency_asymptotic: {
      const UplinkSnr u = uplink_snr(c, axis_db);
      Row r;
      r.params = with({num(u.rho_m_db), num(u.rho_n_db), num(u.snr.eta())});
      r.analytic = p_n_exact(cfg, u.snr);
      if (c.mode == SweepMode::uplink_latency_asymptotic) {
        r.asymptotic = p_n_highsnr(cfg, u.snr.rho_m(), u.snr.eta());
      }
      return {r};
    }
    case SweepMode::uplink_energy: {
      const UplinkSnr u = uplink_snr(c, axis_db);
      const EnergyScaling scale(*p.beta);
      Row r;
      r.params = with({num(u.rho_m_db), num(u.rho_n_db), num(scale.beta())});
      r.analytic = p_tilde_exact(cfg, u.snr, scale);
      r.asymptotic = scale.first_branch(u.snr)
                         ? p_tilde_plateau(cfg, u.snr.rho_m() / u.snr.rho_n(), scale)
                         : p_tilde_vanishing_approx(cfg, u.snr.rho_n(), scale);
      return {r};
    }
    case SweepMode::downlink_energy: {
      const DownlinkTaskSpec task(*p.bits, *p.slot);
      Row r;
      r.params = with({num(axis_db), num(*p.beta_tilde), num(task.bits()), num(task.slot()),
                       std::to_string(p.quad_points)});
      r.analytic = p_d_tilde_quadrature(cfg, db_to_linear(axis_db), *p.beta_tilde, task,
                                        QuadratureSpec{p.quad_points});
      return {r};
    }
    case SweepMode::downlink_latency: {
      const double bm = latency_bits(p, p.bits_m, "bits-m");
      const double bn = latency_bits(p, p.bits_n, "bits-n");
      std::vector<Row> rows(2);
      const char* targets[] = {"m", "n"};
      for (int t = 0; t < 2; ++t) {
        rows[t].params = with({num(axis_db), num(*p.alpha_n_sq), num(bm), num(bn), num(*p.slot),
                               targets[t]});
      }
      return rows;
    }
  }
  return {};
}

std::vector<ProbabilityEstimate> mc_estimates(const SweepConfig& c, double axis_db,
                                              const MonteCarloSpec& spec) {
  const auto& p = c.fixed;
  const OrderedPairConfig cfg = pair_config(p, c.mode);
  switch (c.mode) {
    case SweepMode::uplink_latency:
    case SweepMode::uplink_latency_asymptotic:
      return {estimate_event(events::uplink_latency(uplink_snr(c, axis_db).snr), cfg, spec)};
    case SweepMode::uplink_energy:
      return {estimate_event(
          events::uplink_energy(uplink_snr(c, axis_db).snr, EnergyScaling(*p.beta)), cfg, spec)};
    case SweepMode::downlink_energy:
      return {estimate_event(events::downlink_energy(db_to_linear(axis_db), *p.beta_tilde,
                                                     DownlinkTaskSpec(*p.bits, *p.slot)),
                             cfg, spec)};
    case SweepMode::downlink_latency: {
      const LatencyTasks tasks{latency_bits(p, p.bits_m, "bits-m"),
                               latency_bits(p, p.bits_n, "bits-n"), *p.slot};
      const auto [em, en] = p_d_latency_mc(cfg, db_to_linear(axis_db),
                                           PowerSplit::from_strong_share(*p.alpha_n_sq), tasks,
                                           spec);
      return {em, en};
    }
  }
  return {};
}

std::string optional_cell(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace

std::string_view to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::uplink_latency: return "uplink-latency";
    case SweepMode::uplink_latency_asymptotic: return "uplink-latency-asymptotic";
    case SweepMode::uplink_energy: return "uplink-energy";
    case SweepMode::downlink_energy: return "downlink-energy";
    case SweepMode::downlink_latency: return "downlink-latency";
  }
  return "unknown";
}

SweepMode parse_sweep_mode(std::string_view text) {
  for (SweepMode m : {SweepMode::uplink_latency, SweepMode::uplink_latency_asymptotic,
                      SweepMode::uplink_energy, SweepMode::downlink_energy,
                      SweepMode::downlink_latency}) {
    if (to_string(m) == text) return m;
  }
  throw ConfigError(fmt::format("unknown mode '{}'", text));
}

SweepAxis SweepAxis::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.emplace_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) {
    throw ConfigError(fmt::format("--sweep expects param:start:stop:step, got '{}'", text));
  }
  SweepAxis axis;
  axis.parameter = parts[0];
  try {
    std::size_t used = 0;
    double* fields[] = {&axis.start_db, &axis.stop_db, &axis.step_db};
    for (int i = 0; i < 3; ++i) {
      *fields[i] = std::stod(parts[static_cast<std::size_t>(i) + 1], &used);
      if (used != parts[static_cast<std::size_t>(i) + 1].size()) throw std::invalid_argument("tail");
    }
  } catch (const std::logic_error&) {
    throw ConfigError(fmt::format("--sweep has a non-numeric field: '{}'", text));
  }
  return axis;
}

std::vector<double> SweepAxis::values() const {
  if (!std::isfinite(start_db) || !std::isfinite(stop_db) || !std::isfinite(step_db) ||
      step_db <= 0.0 || stop_db < start_db) {
    throw ConfigError("sweep axis needs finite start <= stop and step > 0");
  }
  const double span = (stop_db - start_db) / step_db;
  if (span > 1e6) throw ConfigError("sweep axis has more than a million points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start_db + static_cast<double>(i) * step_db;
  return out;
}

void SweepConfig::validate() const {
  (void)grid.values();
  const auto& p = fixed;
  const OrderedPairConfig cfg = pair_config(p, mode);

  if (p.population && p.population != cfg.population()) {
    throw ConfigError("conflicting population values");
  }
  if (mode != SweepMode::downlink_latency && cfg.population() > kMaxClosedFormPopulation) {
    throw ConfigError(fmt::format("mode {} evaluates closed forms, limited to population <= {}",
                                  to_string(mode), kMaxClosedFormPopulation));
  }

  if (is_uplink(mode)) {
    if (grid.parameter == "rho-m-db") {
      if (p.rho_n_db.has_value() == p.eta.has_value()) {
        throw ConfigError("sweeping rho-m-db needs exactly one of --rho-n-db, --eta");
      }
    } else if (grid.parameter == "rho-n-db") {
      if (p.rho_m_db.has_value() == p.eta.has_value()) {
        throw ConfigError("sweeping rho-n-db needs exactly one of --rho-m-db, --eta");
      }
    } else {
      throw ConfigError(fmt::format("mode {} sweeps rho-m-db or rho-n-db, not '{}'",
                                    to_string(mode), grid.parameter));
    }
    if (p.eta && !(*p.eta > 0.0 && std::isfinite(*p.eta))) {
      throw ConfigError("--eta must be finite and positive");
    }
    for (const auto& db : {p.rho_m_db, p.rho_n_db}) {
      if (db && !std::isfinite(*db)) throw ConfigError("SNR values must be finite");
    }
    if (mode == SweepMode::uplink_energy) EnergyScaling(need(p.beta, "beta", mode));
  } else {
    if (grid.parameter != "rho-db") {
      throw ConfigError(
          fmt::format("mode {} sweeps rho-db, not '{}'", to_string(mode), grid.parameter));
    }
    if (mode == SweepMode::downlink_energy) {
      const double bt = need(p.beta_tilde, "beta-tilde", mode);
      if (!(bt > 0.0 && bt < 1.0)) throw ConfigError("--beta-tilde must lie in (0, 1)");
      DownlinkTaskSpec(need(p.bits, "bits", mode), need(p.slot, "slot", mode));
      QuadratureSpec{p.quad_points}.validate();
    } else {
      PowerSplit::from_strong_share(need(p.alpha_n_sq, "alpha-n-sq", mode));
      const double slot = need(p.slot, "slot", mode);
      if (!(slot > 0.0 && std::isfinite(slot))) throw ConfigError("--slot must be positive");
      for (double b : {latency_bits(p, p.bits_m, "bits-m"), latency_bits(p, p.bits_n, "bits-n")}) {
        if (!(b >= 0.0 && std::isfinite(b))) throw ConfigError("task bits must be nonnegative");
      }
      if (!mc) throw ConfigError("mode downlink-latency is Monte Carlo only; set --mc-trials");
    }
  }
  if (mc) mc->validate();
}

std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::string render_sweep_csv(const SweepConfig& config) {
  config.validate();
  const std::vector<double> axis = config.grid.values();
  const auto count = static_cast<std::int64_t>(axis.size());

  std::vector<std::vector<Row>> rows(axis.size());
  std::vector<std::exception_ptr> errors(axis.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      rows[u] = analytic_rows(config, axis[u]);
    } catch (...) {
      errors[u] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (config.mc) {
    for (std::size_t i = 0; i < axis.size(); ++i) {
      MonteCarloSpec spec = *config.mc;
      spec.seed = point_seed(config.mc->seed, i);
      const auto est = mc_estimates(config, axis[i], spec);
      for (std::size_t r = 0; r < rows[i].size(); ++r) rows[i][r].mc = est[r];
    }
  }

  std::string out;
  std::vector<std::string> header = header_params(config.mode);
  for (const char* tail : {"analytic", "asymptotic", "mc_value", "mc_stderr", "mc_trials"}) {
    header.emplace_back(tail);
  }
  out += fmt::format("{}\n", fmt::join(header, ","));
  for (const auto& point : rows) {
    for (const Row& r : point) {
      out += fmt::format("{},{},{},", fmt::join(r.params, ","), optional_cell(r.analytic),
                         optional_cell(r.asymptotic));
      if (r.mc) {
        out += fmt::format("{},{},{}\n", num(r.mc->value), num(r.mc->std_error), r.mc->trials);
      } else {
        out += ",,\n";
      }
    }
  }
  return out;
}

void run_sweep(const SweepConfig& config) {
  config.validate();
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(fmt::format("cannot write output file '{}'", config.output.string()));
  file << render_sweep_csv(config);
  file.flush();
  if (!file) throw IoError(fmt::format("failed while writing '{}'", config.output.string()));
}

}  // namespace nomamec
