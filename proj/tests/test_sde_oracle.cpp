#include <doctest.h>

#include <cmath>
#include <vector>

#include "mgpath/black_scholes.hpp"
#include "mgpath/mg_alpha1.hpp"
#include "mgpath/sde_oracle.hpp"

using namespace mgpath;

TEST_CASE("zero vol-of-vol follows the linear ODE") {
  MGParams mg;
  mg.xi = 0;
  mg.mu = -0.8;
  mg.lambda = 0.06;
  const MarketParams m;
  double prev_err = 1;
  for (std::size_t n : {50, 100, 200}) {
    const auto p = simulate(mg, m, GridSpec(1.0, n), {1, 1, false});
    const double v0 = 0.04, t = 1.0;
    const double exact = (v0 + mg.lambda / mg.mu) * std::exp(mg.mu * t) - mg.lambda / mg.mu;
    const double err = std::abs(p[0].v_values(static_cast<Eigen::Index>(n)) - exact);
    CHECK(err < prev_err);
    CHECK(err < 0.05 / static_cast<double>(n));
    prev_err = err;
  }
}

TEST_CASE("perfect correlation drives both factors with one shock") {
  MGParams mg;
  mg.rho = 1.0;
  mg.xi = 0.2;
  const MarketParams m;
  const GridSpec g(1.0, 20);
  const auto p = simulate(mg, m, g, {1, 3, false})[0];
  const double dt = g.dt();
  for (Eigen::Index k = 0; k < 20; ++k) {
    const double v = p.v_values(k);
    const double z1 = (std::log(p.s_values(k + 1) / p.s_values(k)) - (m.rate - 0.5 * v) * dt) / std::sqrt(v * dt);
    const double z2 = (p.v_values(k + 1) - v - (mg.lambda + mg.mu * v) * dt) / (mg.xi * v * std::sqrt(dt));
    CHECK(z1 == doctest::Approx(z2).epsilon(1e-8));
  }
}

TEST_CASE("frozen variance gives geometric Brownian motion") {
  MGParams mg;
  mg.xi = 0;
  const MarketParams m;
  const auto paths = simulate(mg, m, GridSpec(1.0, 16), {20000, 5, false});
  std::vector<double> logs, disc;
  for (const auto& p : paths) {
    logs.push_back(std::log(p.s_values(16)));
    disc.push_back(std::exp(-m.rate) * p.s_values(16));
  }
  const auto ml = mean_and_error(logs);
  CHECK(std::abs(ml.mean - (std::log(100.0) + 0.05 - 0.02)) < 3 * ml.stderr);
  const auto md = mean_and_error(disc);
  CHECK(std::abs(md.mean - 100.0) < 3 * md.stderr);
  const auto e = price_oracle(m, mg, GridSpec(1.0, 16), {40000, 6, false});
  CHECK(std::abs(e.price - bs_price(m, 0.2).price) < 3 * e.stderr);
  CHECK(e.truncation_rate == 0.0);
}

TEST_CASE("discounted spot is a martingale under stochastic variance") {
  MGParams mg;
  mg.rho = -0.7;
  mg.lambda = 0.02;
  mg.mu = -1.0;
  const MarketParams m;
  const auto paths = simulate(mg, m, GridSpec(1.0, 32), {20000, 7, false});
  std::vector<double> disc;
  for (const auto& p : paths) disc.push_back(std::exp(-m.rate) * p.s_values(32));
  const auto md = mean_and_error(disc);
  CHECK(std::abs(md.mean - 100.0) < 3 * md.stderr);
}

TEST_CASE("payoff limits") {
  MGParams mg;
  const auto tiny_strike = price_oracle({100, 1e-6, 0.05, 1}, mg, GridSpec(1.0, 16), {20000, 8, false});
  CHECK(std::abs(tiny_strike.price - 100) < 3 * tiny_strike.stderr + 1e-5);
  mg.xi = 0.05;
  const auto otm = price_oracle({100, 1000, 0.01, 0.1}, mg, GridSpec(0.1, 8), {5000, 9, false});
  CHECK(otm.price == 0.0);
}

TEST_CASE("mixing estimator") {
  MGParams mg;
  const MarketParams m;
  const GridSpec g(1.0, 32);
  mg.rho = 0.1;
  CHECK_THROWS_AS(hull_white_mixing_price(m, mg, g, {10, 1, false}), DomainError);
  mg.rho = 0;
  mg.xi = 1e-6;
  CHECK(hull_white_mixing_price(m, mg, g, {100, 1, false}).price ==
        doctest::Approx(bs_price(m, 0.2).price).epsilon(1e-5));
  mg.xi = 0.4;
  const auto hw = hull_white_mixing_price(m, mg, g, {40000, 11, false});
  const auto mc = price_oracle(m, mg, g, {40000, 12, false});
  CHECK(z_score(hw.price, hw.stderr, mc.price, mc.stderr) < 3);
  const auto pi = price_alpha1(m, mg, g, {40000, 13, false});
  CHECK(z_score(hw.price, hw.stderr, pi.price, pi.stderr) < 3);
}

TEST_CASE("truncation frequency falls with the step size") {
  MGParams mg;
  mg.xi = 2.0;
  const MarketParams m;
  const auto coarse = price_oracle(m, mg, GridSpec(1.0, 16), {5000, 14, false});
  const auto fine = price_oracle(m, mg, GridSpec(1.0, 256), {5000, 14, false});
  CHECK(coarse.truncation_rate > 0.01);
  CHECK(fine.truncation_rate < coarse.truncation_rate / 10);
}

TEST_CASE("drift parsing and the physical drift") {
  CHECK(SpotDrift::parse("rn").risk_neutral);
  const auto d = SpotDrift::parse("phys:0.12");
  CHECK_FALSE(d.risk_neutral);
  CHECK(d.value(0.05) == 0.12);
  CHECK_THROWS_AS(SpotDrift::parse("phys:abc"), DomainError);
  CHECK_THROWS_AS(SpotDrift::parse("physical"), DomainError);
  MGParams mg;
  mg.xi = 0;
  const MarketParams m;
  const auto paths = simulate(mg, m, GridSpec(1.0, 8), {20000, 15, false}, d);
  std::vector<double> logs;
  for (const auto& p : paths) logs.push_back(std::log(p.s_values(8)));
  const auto ml = mean_and_error(logs);
  CHECK(std::abs(ml.mean - (std::log(100.0) + 0.12 - 0.02)) < 3 * ml.stderr);
}

TEST_CASE("oracle parameter checks") {
  MGParams mg;
  mg.xi = -0.1;
  CHECK_THROWS_AS(validate_oracle({}, mg), DomainError);
  mg.xi = 0;
  CHECK_NOTHROW(validate_oracle({}, mg));
  mg.rho = 1;
  CHECK_NOTHROW(validate_oracle({}, mg));
}
