#include "nomamec/validation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "nomamec/chanstat.hpp"
#include "nomamec/downlink.hpp"
#include "nomamec/events.hpp"
#include "nomamec/mc_oracle.hpp"
#include "nomamec/rng.hpp"
#include "nomamec/sweep.hpp"
#include "nomamec/uplink_energy.hpp"
#include "nomamec/uplink_latency.hpp"

namespace nomamec {

namespace {

class Runner {
public:
  Runner(const ValidationOptions& o, const std::function<void(const CheckLine&)>& progress)
      : opt_(o), progress_(progress) {}

  void emit(std::string block, std::string label, bool pass, std::string detail) {
    CheckLine line{std::move(block), std::move(label), pass, std::move(detail)};
    if (progress_) progress_(line);
    report_.lines.push_back(std::move(line));
  }

  MonteCarloSpec next_spec(std::uint64_t trials) {
    MonteCarloSpec s;
    s.trials = trials;
    s.chunk = std::min(opt_.chunk, trials);
    s.seed = point_seed(opt_.seed, point_++);
    return s;
  }

  void oracle(const std::string& block, const std::string& label, double analytic,
              const ProbabilityEstimate& est) {
    emit(block, label, within_oracle_tolerance(analytic, est.value, est.std_error),
         fmt::format("analytic={:.6g} mc={:.6g} stderr={:.3g} delta={:.3g}", analytic,
                     est.value, est.std_error, est.value - analytic));
  }

  void identity() {
    double worst = 0.0;
    for (int M = 2; M <= 12; ++M) {
      for (int m = 1; m < M; ++m) {
        worst = std::max(worst, std::fabs(binomial_identity_lhs(M, m) - 1.0));
      }
    }
    emit("identity", "1 <= m < M <= 12", worst <= 1e-10, fmt::format("max |lhs-1|={:.3g}", worst));
  }

  void uplink_latency() {
    for (auto [m, n] : {std::pair{1, 2}, {2, 4}, {4, 5}}) {
      const OrderedPairConfig cfg(5, m, n);
      for (double rho_m_db : {0.0, 10.0, 20.0}) {
        for (double eta : {0.5, 2.0, 5.0}) {
          const auto snr = SnrOperatingPoint::from_eta(db_to_linear(rho_m_db), eta);
          const auto est =
              estimate_event(events::uplink_latency(snr), cfg, next_spec(opt_.uplink_trials));
          oracle("uplink-latency", fmt::format("m={} n={} rho_m={}dB eta={}", m, n, rho_m_db, eta),
                 p_n_exact(cfg, snr), est);
        }
      }
    }
  }

  void limits() {
    for (auto [m, n] : {std::pair{1, 2}, {2, 4}, {4, 5}}) {
      const OrderedPairConfig cfg(5, m, n);
      const double low = p_n_exact(cfg, SnrOperatingPoint::from_eta(db_to_linear(-30.0), 2.0));
      emit("limits", fmt::format("m={} n={} rho_m=-30dB eta=2", m, n), low >= 0.99,
           fmt::format("p_n={:.6g}", low));
      const double high = p_n_exact(cfg, SnrOperatingPoint::from_db(0.0, 60.0));
      emit("limits", fmt::format("m={} n={} rho_m=0dB rho_n=60dB", m, n), high >= 0.99,
           fmt::format("p_n={:.6g}", high));
    }
  }

  void uplink_slopes() {
    for (int m : {1, 2, 3}) {
      for (int n : {m + 1, 5}) {
        const OrderedPairConfig cfg(5, m, n);
        std::vector<CurvePoint> curve;
        for (double db = 35.0; db <= 55.0 + 1e-9; db += 2.5) {
          const double rho_n = db_to_linear(db);
          curve.push_back({rho_n, p_n_exact(cfg, SnrOperatingPoint(rho_n / 2.0, rho_n))});
        }
        const double d = decay_exponent_fit(curve, {35.0, 55.0});
        emit("uplink-slope", fmt::format("m={} n={} eta=2", m, n), std::fabs(d - m / 2.0) <= 0.1,
             fmt::format("d={:.4f} expected={}", d, m / 2.0));
      }
    }
  }

  void uplink_energy() {
    for (auto [m, n] : {std::pair{1, 2}, {3, 5}}) {
      const OrderedPairConfig cfg(5, m, n);
      for (double beta : {1.0 / 8, 1.0 / 4, 1.0 / 3}) {
        const EnergyScaling scale(beta);
        for (double rho_n_db = 10.0; rho_n_db <= 40.0 + 1e-9; rho_n_db += 5.0) {
          const auto snr = SnrOperatingPoint::from_db(10.0, rho_n_db);
          const auto est = estimate_event(events::uplink_energy(snr, scale), cfg,
                                          next_spec(opt_.uplink_trials));
          oracle("uplink-energy",
                 fmt::format("m={} n={} beta={:.4g} rho_n={}dB branch={}", m, n, beta, rho_n_db,
                             scale.first_branch(snr) ? 1 : 2),
                 p_tilde_exact(cfg, snr, scale), est);
        }
      }
    }
  }

  void anchor() {
    const EnergyScaling scale(1.0 / 8);
    const auto snr = SnrOperatingPoint::from_db(10.0, 25.0);
    std::string detail;
    int chosen = 0;
    for (int n : {2, 5}) {
      const double v = p_tilde_exact(OrderedPairConfig(5, 1, n), snr, scale);
      detail += fmt::format("n={}: {:.4g} ", n, v);
      if (chosen == 0 && v >= 1e-2 / 3.0 && v <= 3e-2) chosen = n;
    }
    detail += chosen ? fmt::format("chosen n={}", chosen) : std::string("no n in range");
    emit("anchor", "M=5 m=1 beta=1/8 rho_m=10dB rho_n=25dB", chosen != 0, detail);
  }

  void regimes() {
    for (auto [m, n] : {std::pair{1, 2}, {3, 5}}) {
      const OrderedPairConfig cfg(5, m, n);
      const double v = p_tilde_exact(cfg, SnrOperatingPoint::from_db(10.0, 55.0), EnergyScaling(0.25));
      emit("regime", fmt::format("vanishing m={} n={} rho_m=10dB beta=1/4 rho_n=55dB", m, n),
           v < 1e-3, fmt::format("p={:.4g}", v));

      const EnergyScaling scale(0.2);
      auto at = [&](double db) {
        const double rho_n = db_to_linear(db);
        return p_tilde_exact(cfg, SnrOperatingPoint(rho_n / 2.0, rho_n), scale);
      };
      const double p50 = at(50.0);
      const double p60 = at(60.0);
      const double plateau = p_tilde_plateau(cfg, 0.5, scale);
      const bool ok = std::fabs(p50 - p60) < 1e-2 && std::fabs(p50 - plateau) < 1e-2 &&
                      std::fabs(p60 - plateau) < 1e-2;
      emit("regime", fmt::format("plateau m={} n={} ratio=1/2 beta=1/5", m, n), ok,
           fmt::format("p50={:.6g} p60={:.6g} limit={:.6g}", p50, p60, plateau));
    }
  }

  void downlink_energy() {
    const DownlinkTaskSpec task(1.0, 1.0);
    for (auto [m, n] : {std::pair{1, 2}, {2, 4}}) {
      const OrderedPairConfig cfg(5, m, n);
      for (double bt : {0.2, 0.5}) {
        for (double db = 10.0; db <= 40.0 + 1e-9; db += 5.0) {
          const double rho = db_to_linear(db);
          const auto check = p_d_tilde_quadrature_checked(cfg, rho, bt, task, QuadratureSpec{});
          const auto est = estimate_event(events::downlink_energy(rho, bt, task), cfg,
                                          next_spec(opt_.downlink_trials));
          const std::string label = fmt::format("m={} n={} beta~={} rho={}dB", m, n, bt, db);
          oracle("downlink-energy", label, check.value, est);
          emit("quadrature", label, check.converged(1e-4),
               fmt::format("N=64: {:.8g} N=128: {:.8g} delta={:.3g}", check.value, check.doubled,
                           check.delta()));
        }
      }
    }
  }

  void downlink_slopes() {
    const DownlinkTaskSpec task(1.0, 1.0);
    for (auto [m, n] : {std::pair{1, 2}, {2, 4}}) {
      const OrderedPairConfig cfg(5, m, n);
      for (double bt : {0.2, 0.5}) {
        std::vector<CurvePoint> curve;
        for (double db = 35.0; db <= 55.0 + 1e-9; db += 2.5) {
          const double rho = db_to_linear(db);
          curve.push_back({rho, p_d_tilde_quadrature(cfg, rho, bt, task, QuadratureSpec{})});
        }
        const double d = decay_exponent_fit(curve, {35.0, 55.0});
        emit("downlink-slope", fmt::format("m={} n={} beta~={}", m, n, bt),
             std::fabs(d - m) <= 0.15, fmt::format("d={:.4f} expected={}", d, m));
      }
    }
  }

  void region_identity() {
    RandomStream rng(point_seed(opt_.seed, 0xa11ce));
    int mismatches = 0;
    constexpr int tuples = 10'000;
    for (int i = 0; i < tuples; ++i) {
      const double rho = std::pow(10.0, 4.0 * rng.uniform());
      const double bt = rng.uniform() * 0.98 + 0.01;
      const double eps = std::expm1(std::log(2.0) * 4.0 * rng.uniform());
      const double lo = eps / rho;
      const double x = lo * std::pow(10.0, 1e-6 + 3.0 * rng.uniform());
      const bool raw = x <= downlink_region_bound(x, rho, bt, eps);
      const bool simple = x <= eps / (bt * rho);
      if (raw != simple) ++mismatches;
    }
    emit("region-identity", fmt::format("{} random tuples", tuples), mismatches == 0,
         fmt::format("mismatches={}", mismatches));
  }

  void determinism() {
    SweepConfig c;
    c.mode = SweepMode::uplink_latency;
    c.grid = SweepAxis::parse("rho-m-db:0:20:10");
    c.fixed.population = 5;
    c.fixed.weak_index = 2;
    c.fixed.strong_index = 4;
    c.fixed.eta = 2.0;
    c.mc = next_spec(std::min<std::uint64_t>(opt_.uplink_trials, 200'000));
    const bool same = render_sweep_csv(c) == render_sweep_csv(c);
    emit("determinism", "uplink-latency sweep rendered twice", same,
         same ? "byte-identical" : "outputs differ");
  }

  ValidationReport take() { return std::move(report_); }

private:
  ValidationOptions opt_;
  const std::function<void(const CheckLine&)>& progress_;
  ValidationReport report_;
  std::uint64_t point_ = 0;
};

}  // namespace

bool within_oracle_tolerance(double analytic, double estimate, double std_error) {
  return std::fabs(analytic - estimate) <= std::max(3.0 * std_error, 5e-3);
}

bool ValidationReport::all_passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

std::vector<CheckLine> ValidationReport::block(const std::string& name) const {
  std::vector<CheckLine> out;
  for (const auto& l : lines) {
    if (l.block == name) out.push_back(l);
  }
  return out;
}

ValidationReport run_validation(const ValidationOptions& options,
                                const std::function<void(const CheckLine&)>& progress) {
  Runner r(options, progress);
  r.identity();
  r.uplink_latency();
  r.limits();
  r.uplink_slopes();
  r.uplink_energy();
  r.anchor();
  r.regimes();
  r.downlink_energy();
  r.downlink_slopes();
  r.region_identity();
  r.determinism();
  return r.take();
}

}  // namespace nomamec
