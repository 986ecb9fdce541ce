#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mgpath/parallel.hpp"
#include "mgpath/quadrature.hpp"
#include "mgpath/rng.hpp"
#include "mgpath/stats.hpp"

using namespace mgpath;

TEST_CASE("pairwise sum agrees with a long-double accumulation") {
  std::vector<double> x(10007);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 1.0 / static_cast<double>(i + 1);
  long double ref = 0;
  for (double v : x) ref += v;
  CHECK(pairwise_sum(x) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-15));
  CHECK(pairwise_sum({}) == 0.0);
}

TEST_CASE("mean and standard error of a small sample") {
  const std::vector<double> x{1, 2, 3, 4};
  const auto me = mean_and_error(x);
  CHECK(me.mean == 2.5);
  // sample variance 5/3, stderr sqrt(5/12)
  CHECK(me.stderr == doctest::Approx(std::sqrt(5.0 / 12.0)));
}

TEST_CASE("summarize: paired estimator and effective sample size") {
  const std::vector<double> f{1, 3, 2, 2, 0, 4};
  const std::vector<double> w{1, 1, 1, 1, 1, 1};
  const auto paired = summarize(f, w, true);
  CHECK(paired.price == 2.0);
  CHECK(paired.stderr == 0.0);
  CHECK(paired.effective_sample_size == 6.0);
  const std::vector<double> skew{4, 0, 0, 0, 0, 0};
  const auto s = summarize(f, skew, false);
  CHECK(s.effective_sample_size == doctest::Approx(1.0));
  CHECK(s.effective_sample_size <= s.n_paths);
}

TEST_CASE("z-score edge cases") {
  CHECK(z_score(1, 0, 1, 0) == 0.0);
  CHECK(std::isinf(z_score(1, 0, 2, 0)));
  CHECK(z_score(1, 3, 5, 4) == doctest::Approx(0.8));
}

TEST_CASE("Gauss-Legendre is exact for polynomials up to degree 2n-1") {
  const auto r = gauss_legendre(8);
  CHECK(r.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  for (int p = 0; p <= 15; ++p) {
    double s = 0;
    for (Eigen::Index k = 0; k < r.nodes.size(); ++k) s += r.weights(k) * std::pow(r.nodes(k), p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("Gauss-Hermite reproduces standard normal moments") {
  const auto r = gauss_hermite_normal(20);
  auto moment = [&](int p) {
    double s = 0;
    for (Eigen::Index k = 0; k < r.nodes.size(); ++k) s += r.weights(k) * std::pow(r.nodes(k), p);
    return s;
  };
  CHECK(moment(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(moment(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(moment(4) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(moment(6) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(std::abs(moment(5)) < 1e-12);
}

TEST_CASE("composite integration of a Gaussian density") {
  const double v = integrate([](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI); }, -12, 12);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normal streams are pure functions of seed and index") {
  NormalStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  const double a0 = a(), b0 = b();
  CHECK(a0 == b0);
  CHECK(c() != a0);
  CHECK(d() != a0);
  const MCSpec anti{4, 11, true};
  auto even = path_stream(anti, 2), odd = path_stream(anti, 3);
  for (int i = 0; i < 5; ++i) CHECK(even() == -odd());
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_CASE("parallel_for covers every index and reports the lowest failing index") {
  std::vector<int> hit(5000, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; }, 64);
  CHECK(std::accumulate(hit.begin(), hit.end(), 0) == 5000);
  for (const char* threads : {"1", "3", "8"}) {
    setenv("MGPATH_THREADS", threads, 1);
    try {
      parallel_for(1000, [](std::size_t i) {
        if (i == 123 || i == 777) throw std::runtime_error(std::to_string(i));
      }, 16);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "123");
    }
  }
  setenv("MGPATH_THREADS", "2", 1);
  CHECK(worker_count() == 2);
  unsetenv("MGPATH_THREADS");
  CHECK(worker_count() >= 1);
}
