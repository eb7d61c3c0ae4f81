#include <doctest.h>

#include <cmath>
#include <vector>

#include "nomamec/downlink.hpp"
#include "nomamec/errors.hpp"
#include "nomamec/events.hpp"
#include "nomamec/mc_oracle.hpp"
#include "nomamec/rng.hpp"
#include "oracles.hpp"

using namespace nomamec;

TEST_CASE("task spec") {
  const DownlinkTaskSpec t(3.0, 2.0);
  CHECK(std::fabs(t.epsilon() - (std::pow(2.0, 1.5) - 1.0)) <= 1e-12);
  CHECK_THROWS_AS(DownlinkTaskSpec(0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(DownlinkTaskSpec(1.0, -1.0), ConfigError);
  CHECK_THROWS_AS(DownlinkScaling(1.0, PowerSplit{0.5, 0.5}), ConfigError);
  CHECK_THROWS_AS(DownlinkScaling(0.5, PowerSplit{0.5, 0.6}), ConfigError);
  CHECK_THROWS_AS(PowerSplit::from_strong_share(1.5), ConfigError);
  CHECK_THROWS_AS(QuadratureSpec{0}.validate(), ConfigError);
}

TEST_CASE("cognitive-radio allocation") {
  const DownlinkTaskSpec task(1.0, 1.0);  // eps = 1
  const double eps = task.epsilon();
  CHECK(cr_power_allocation(10.0, 0.05, task).alpha_n_sq == 0.0);
  CHECK(cr_power_allocation(10.0, 0.0, task).alpha_n_sq == 0.0);
  CHECK(cr_power_allocation(10.0, 2.0 * eps / 10.0, task).alpha_n_sq ==
        doctest::Approx(1.0 / (2.0 * (1.0 + eps))));
  CHECK(cr_power_allocation(10.0, 1e12, task).alpha_n_sq == doctest::Approx(1.0 / (1.0 + eps)));
  CHECK_THROWS_AS(cr_power_allocation(10.0, -1.0, task), ConfigError);
  CHECK_THROWS_AS(cr_power_allocation(0.0, 1.0, task), ConfigError);

  RandomStream rng(3);
  for (int i = 0; i < 20'000; ++i) {
    const DownlinkTaskSpec t(0.1 + 4.0 * rng.uniform(), 0.5 + rng.uniform());
    const double rho = std::pow(10.0, 4.0 * rng.uniform());
    const double w = 3.0 * rng.exponential();
    const double s = w + rng.exponential();
    const PowerSplit a = cr_power_allocation(rho, w, t);
    CHECK(a.alpha_n_sq >= 0.0);
    CHECK(a.alpha_n_sq < 1.0 / (1.0 + t.epsilon()));
    CHECK(a.alpha_m_sq + a.alpha_n_sq == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cr_power_allocation(rho, w * 1.01, t).alpha_n_sq >= a.alpha_n_sq);
    if (a.alpha_n_sq > 0.0) {
      const auto bits = downlink_rates(rho, ChannelGainPair{w, s}, a, 0.5, t);
      CHECK(std::fabs(bits.bits_m - t.bits()) <= 1e-9 * std::max(1.0, t.bits()));
    }
  }
}

TEST_CASE("rate bookkeeping") {
  const DownlinkTaskSpec task(1.0, 2.0);
  const ChannelGainPair g{0.5, 1.5};
  auto bits = downlink_rates(10.0, g, PowerSplit{1.0, 0.0}, 0.0, task);
  CHECK(bits.bits_n_slot1 == 0.0);
  CHECK(bits.bits_n_slot2 == 0.0);
  CHECK(bits.bits_m == doctest::Approx(2.0 * std::log2(1.0 + 10.0 * 0.5)));
  CHECK(oma_bits(10.0, 1.5, task) == doctest::Approx(2.0 * std::log2(16.0)));

  const DownlinkScaling scaling(0.25, PowerSplit::from_strong_share(0.3));
  bits = downlink_rates(10.0, g, scaling, task);
  CHECK(bits.bits_n_slot1 == doctest::Approx(2.0 * std::log2(1.0 + 10.0 * 0.3 * 1.5)));
  CHECK(bits.bits_n_slot2 == doctest::Approx(2.0 * std::log2(1.0 + 0.25 * 10.0 * 1.5)));
  CHECK(bits.bits_m == doctest::Approx(2.0 * std::log2(1.0 + 10.0 * 0.7 * 0.5 / (1.0 + 10.0 * 0.3 * 0.5))));
}

TEST_CASE("region identity on random tuples") {
  RandomStream rng(77);
  int mismatches = 0;
  for (int i = 0; i < 10'000; ++i) {
    const double rho = std::pow(10.0, 5.0 * rng.uniform() - 1.0);
    const double bt = 0.001 + 0.998 * rng.uniform();
    const double eps = std::expm1(std::log(2.0) * 6.0 * rng.uniform());
    const double x = eps / rho * std::pow(10.0, 1e-6 + 3.0 * rng.uniform());
    const double bound = downlink_region_bound(x, rho, bt, eps);
    if ((x <= bound) != (x <= eps / (bt * rho))) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("quadrature against 2-D integration of the raw region") {
  struct Case {
    int m, n;
    double rho_db, bt;
  };
  const DownlinkTaskSpec task(1.0, 1.0);
  const double eps = task.epsilon();
  for (const Case& c : std::vector<Case>{{1, 2, 10, 0.2}, {2, 4, 20, 0.5}, {1, 2, 30, 0.5}, {2, 3, 15, 0.8}}) {
    const double rho = db_to_linear(c.rho_db);
    const double lo = eps / rho;
    const double hi = eps / (c.bt * rho);
    // OMA wins when x <= eps/rho, or when y stays below the region bound.
    const double below = oracle::region_probability(
        5, c.m, c.n, [](double x) { return x; }, [](double) { return oracle::infinity(); }, 0.0, lo);
    const double band = oracle::region_probability(
        5, c.m, c.n, [](double x) { return x; },
        [&](double x) { return downlink_region_bound(x, rho, c.bt, eps); }, lo, hi);
    const double q = p_d_tilde_quadrature(OrderedPairConfig(5, c.m, c.n), rho, c.bt, task, QuadratureSpec{});
    CAPTURE(c.rho_db);
    CHECK(std::fabs(q - (below + band)) <= 1e-4);
  }
}

TEST_CASE("quadrature limits and convergence") {
  const DownlinkTaskSpec task(1.0, 1.0);
  const OrderedPairConfig cfg(5, 2, 4);
  const double rho = 100.0;
  const double floor = order_stat_cdf(5, 2, task.epsilon() / rho);
  CHECK(p_d_tilde_quadrature(cfg, rho, 1.0 - 1e-9, task, QuadratureSpec{}) ==
        doctest::Approx(floor).epsilon(1e-6));
  const auto chk = p_d_tilde_quadrature_checked(cfg, rho, 0.5, task, QuadratureSpec{});
  CHECK(chk.converged(1e-4));
  CHECK(p_d_tilde_quadrature(cfg, rho, 0.5, task, QuadratureSpec{1}) >= 0.0);
  CHECK_THROWS_AS(p_d_tilde_quadrature(cfg, rho, 1.0, task, QuadratureSpec{}), ConfigError);
  CHECK_THROWS_AS(p_d_tilde_quadrature(OrderedPairConfig(21, 2, 4), rho, 0.5, task, QuadratureSpec{}),
                  RangeError);
  // Kernel at the lower endpoint: upper tail taken as zero.
  const double x0 = task.epsilon() / rho;
  CHECK(std::isfinite(downlink_kernel(cfg, 0, x0, rho, 0.5, task.epsilon())));
}

TEST_CASE("quadrature against Monte Carlo at 1e7 trials") {
  const DownlinkTaskSpec task(1.0, 1.0);
  const OrderedPairConfig cfg(5, 2, 4);
  const double rho = 100.0;
  MonteCarloSpec spec;
  spec.trials = 10'000'000;
  spec.seed = 31;
  const auto est = estimate_event(events::downlink_energy(rho, 0.5, task), cfg, spec);
  const double q = p_d_tilde_quadrature(cfg, rho, 0.5, task, QuadratureSpec{});
  CHECK(std::fabs(est.value - q) <= std::max(3.0 * est.std_error, 5e-3));
}

TEST_CASE("latency Monte Carlo") {
  const OrderedPairConfig cfg(5, 2, 4);
  MonteCarloSpec spec;
  spec.trials = 200'000;
  spec.seed = 5;
  auto [pm, pn] = p_d_latency_mc(cfg, 10.0, PowerSplit::from_strong_share(0.0), {1.0, 1.0, 1.0}, spec);
  CHECK(pn.value == 0.0);
  std::tie(pm, pn) = p_d_latency_mc(cfg, 10.0, PowerSplit::from_strong_share(0.2), {0.0, 1.0, 1.0}, spec);
  CHECK(pm.value == 1.0);

  std::tie(pm, pn) = p_d_latency_mc(cfg, 10.0, PowerSplit::from_strong_share(0.2), {1.0, 1.0, 1.0}, spec);
  spec.seed = 6;
  auto [qm, qn] = p_d_latency_mc(cfg, 10.0, PowerSplit::from_strong_share(0.2), {1.0, 1.0, 1.0}, spec);
  CHECK(std::fabs(pm.value - qm.value) <= 4.0 * std::hypot(pm.std_error, qm.std_error));
  CHECK(std::fabs(pn.value - qn.value) <= 4.0 * std::hypot(pn.std_error, qn.std_error));

  spec.trials = 0;
  CHECK_THROWS_AS(p_d_latency_mc(cfg, 10.0, PowerSplit{}, {1.0, 1.0, 1.0}, spec), ConfigError);
}

TEST_CASE("decay exponent fit") {
  std::vector<CurvePoint> c;
  for (double db : {35.0, 40.0, 45.0, 50.0, 55.0}) {
    const double rho = db_to_linear(db);
    c.push_back({rho, 1.0 / (rho * rho)});
  }
  CHECK(std::fabs(decay_exponent_fit(c, {35.0, 55.0}) - 2.0) <= 1e-10);
  CHECK_THROWS_AS(decay_exponent_fit(c, {35.0, 45.0}), DomainError);
  c[2].probability = 0.0;
  CHECK_THROWS_AS(decay_exponent_fit(c, {35.0, 55.0}), DomainError);
}
