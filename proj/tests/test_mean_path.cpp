#include <doctest.h>

#include <cmath>

#include "mgpath/black_scholes.hpp"
#include "mgpath/mean_path.hpp"
#include "mgpath/mg_alpha1.hpp"
#include "mgpath/quadrature.hpp"

using namespace mgpath;

TEST_CASE("explicit density integrates to one") {
  for (double xi : {0.1, 0.3, 0.5})
    for (double mu : {-0.5, 0.0, 0.4}) {
      MGParams mg;
      mg.xi = xi;
      mg.mu = mu;
      const double tau = 1.5;
      const double m = mu - 0.5 * xi * xi;
      const double s1 = xi * std::sqrt(tau), s2 = xi * std::sqrt(tau / 3);
      const double c1 = -m * tau, c2 = -m * tau / 2;
      const double mass = integrate(
          [&](double v1) {
            return integrate([&](double v2) { return mean_path_density(mg, tau, v1, v2); }, c2 - 12 * s2,
                             c2 + 12 * s2, 48, 20);
          },
          c1 - 12 * s1, c1 + 12 * s1, 48, 20);
      CHECK(std::abs(mass - 1.0) < 1e-8);
    }
}

TEST_CASE("zero displacement integrand is Black-Scholes at the current variance") {
  MGParams mg;
  mg.xi = 0.3;
  const MarketParams m;
  CHECK(mean_path_integrand(m, mg, 0, 0) == doctest::Approx(bs_price(m, 0.2).price).epsilon(1e-14));
}

TEST_CASE("small vol-of-vol limit and determinism") {
  MGParams mg;
  mg.xi = 1e-4;
  const MarketParams m;
  const auto a = price_mean_path(m, mg);
  CHECK(a.price == doctest::Approx(bs_price(m, 0.2).price).epsilon(1e-7));
  const auto b = price_mean_path(m, mg);
  CHECK(a.price == b.price);
  CHECK(a.relative_change < 1e-6);
}

TEST_CASE("preconditions") {
  MGParams mg;
  const MarketParams m;
  mg.alpha = 0.5;
  CHECK_THROWS_AS(price_mean_path(m, mg), DomainError);
  mg.alpha = 1;
  MeanPathOptions few;
  few.nodes = 16;
  CHECK_THROWS_AS(price_mean_path(m, mg, few), DomainError);
  mg.rho = 1;
  CHECK_THROWS_AS(price_mean_path(m, mg), DomainError);
}

TEST_CASE("node doubling converges over the documented box") {
  for (double xi : {0.1, 0.5})
    for (double y : {-2.0, 0.0, 2.0})
      for (double tau : {0.5, 2.0}) {
        MGParams mg;
        mg.xi = xi;
        mg.y = y;
        mg.rho = -0.3;
        const MarketParams m{100, 100, 0.05, tau};
        const auto r = price_mean_path(m, mg);
        CHECK(r.relative_change < 1e-6);
        CHECK(r.price >= 0.0);
        CHECK(r.price <= m.spot);
      }
}

TEST_CASE("the two sigma readings differ and the oracle picks the variance reading") {
  MGParams mg;
  mg.xi = 0.3;
  mg.rho = 0.3;
  const MarketParams m;
  MeanPathOptions vol;
  vol.reading = SigmaReading::volatility;
  const double pv = price_mean_path(m, mg).price;
  const double pw = price_mean_path(m, mg, vol).price;
  const auto o = mean_path_oracle(m, mg, GridSpec(1.0, 32), {60000, 5, false});
  CHECK(z_score(pv, 0, o.price, o.stderr) < 3);
  CHECK(z_score(pw, 0, o.price, o.stderr) > 10);
}

TEST_CASE("zero-approximation quality at modest vol-of-vol") {
  MGParams mg;
  mg.xi = 0.1;
  const MarketParams m;
  const double mp = price_mean_path(m, mg).price;
  const auto full = price_alpha1(m, mg, GridSpec(1.0, 32), {20000, 9, false});
  CHECK(std::abs(mp - full.price) / full.price < 0.05);
}
