#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gevpb/errors.hpp"
#include "gevpb/gev.hpp"
#include "oracles/precise.hpp"

using namespace gevpb;

namespace {

std::vector<GevParams> param_grid() {
  std::vector<GevParams> grid;
  for (double mu : {-3.0, 0.0, 2.5, 100.0})
    for (double sigma : {0.05, 1.0, 7.0})
      for (double xi : {-0.8, -0.3, -1e-3, 0.0, 1e-3, 0.2, 0.5, 0.9}) grid.push_back({mu, sigma, xi});
  return grid;
}

}  // namespace

TEST_CASE("gev_cdf examples") {
  CHECK(gev_cdf({0, 1, 0}, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(gev_cdf({0, 1, 0.5}, -2.0) == 0.0);
  CHECK(gev_cdf({0, 1, 0.5}, -2.5) == 0.0);
  CHECK(gev_cdf({0, 1, -0.5}, 2.5) == 1.0);

  // 50-digit evaluation: 0.669062652667818821...
  const double value = gev_cdf({2, 3, 0.2}, 5.0);
  CHECK(std::abs(value - 0.66906265266781882) < 1e-14);
  CHECK(std::abs(value - oracle::gev_cdf(2, 3, 0.2, 5.0).convert_to<double>()) < 1e-14);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(gev_cdf({0, 0, 0}, 1.0), ParameterError);
  CHECK_THROWS_AS(gev_cdf({0, -1, 0}, 1.0), ParameterError);
  CHECK_THROWS_AS(gev_cdf({NAN, 1, 0}, 1.0), ParameterError);
  CHECK_THROWS_AS(gev_quantile({0, 1, INFINITY}, 0.5), ParameterError);
  CHECK_THROWS_AS(bm_log_likelihood({0, 1, 0}, std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(gev_quantile({0, 1, 0}, 0.0), DomainError);
  CHECK_THROWS_AS(gev_quantile({0, 1, 0}, 1.0), DomainError);
  CHECK_THROWS_AS(extreme_quantile({0, 1, 0}, 0.5, 0), DomainError);
  CHECK_THROWS_AS(extreme_quantile({0, 1, 0}, 1.5, 3), DomainError);
}

TEST_CASE("gev_quantile examples") {
  CHECK(gev_quantile({0, 1, 0}, std::exp(-1.0)) == doctest::Approx(0.0).epsilon(1e-15));
  for (double xi : {-0.7, -0.1, 0.3, 1.2}) {
    CHECK(std::abs(gev_quantile({0, 1, xi}, std::exp(-1.0))) < 1e-15);
  }
  // Bisection on the CDF in 50-digit arithmetic: 5.98955139576734822...
  CHECK(std::abs(gev_quantile({1, 2, -0.3}, 0.99) - 5.9895513957673482) < 1e-10);
}

TEST_CASE("extreme_quantile examples") {
  for (const GevParams& p : param_grid()) {
    for (double level : {0.01, 0.5, 0.99}) CHECK(extreme_quantile(p, level, 1) == gev_quantile(p, level));
  }
  for (long long m : {1LL, 7LL, 365LL}) {
    CHECK(std::abs(extreme_quantile({0, 1, 0}, std::exp(-1.0 / static_cast<double>(m)), m)) < 1e-12);
  }
  const double p = 1.0 - 1.0 / 36500.0;
  const double direct = extreme_quantile({0, 1, 0.5}, p, 100);
  CHECK(std::abs(direct - gev_quantile({0, 1, 0.5}, std::pow(p, 100))) < 1e-9 * std::abs(direct));
  CHECK(std::abs(direct - 36.209684635032969) < 1e-9 * direct);
}

TEST_CASE("bm_log_likelihood examples") {
  CHECK(bm_log_likelihood({0, 1, 0}, std::vector<double>{0.0}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(is_infeasible(bm_log_likelihood({0, 1, 0.5}, std::vector<double>{-3.0})));

  const std::vector<double> maxima{1.5, 3.0, 0.7};
  const double ll = bm_log_likelihood({1, 2, 0.2}, maxima);
  double oracle_sum = 0.0;
  for (double y : maxima) oracle_sum += oracle::gev_log_density(1, 2, 0.2, y).convert_to<double>();
  CHECK(std::abs(ll - oracle_sum) < 1e-12);
  CHECK(std::abs(ll - (-5.6332652834833835)) < 1e-12);
}

TEST_CASE("check_support reports the first violation") {
  const std::vector<double> ys{0.0, 1.0, -3.0, -5.0};
  const SupportCheck bad = check_support({0, 1, 0.5}, ys);
  CHECK_FALSE(bad.satisfied);
  REQUIRE(bad.violating_index.has_value());
  CHECK(*bad.violating_index == 2);
  const SupportCheck good = check_support({0, 1, 0.0}, ys);
  CHECK(good.satisfied);
  CHECK_FALSE(good.violating_index.has_value());
}

TEST_CASE("cdf is nondecreasing across the support") {
  for (const GevParams& p : param_grid()) {
    const double lo = gev_quantile(p, 1e-6);
    const double hi = gev_quantile(p, 1 - 1e-6);
    const double span = hi - lo;
    double prev = -1.0;
    for (int i = 0; i <= 10000; ++i) {
      const double y = lo - 0.1 * span + 1.2 * span * i / 10000.0;
      const double c = gev_cdf(p, y);
      REQUIRE(c >= prev);
      REQUIRE(c >= 0.0);
      REQUIRE(c <= 1.0);
      prev = c;
    }
  }
}

TEST_CASE("quantile inverts cdf") {
  for (const GevParams& p : param_grid()) {
    for (double level : {0.001, 0.01, 0.1, 0.5, 0.9, 0.99, 0.999}) {
      CHECK(std::abs(gev_cdf(p, gev_quantile(p, level)) - level) < 1e-9);
    }
  }
}

TEST_CASE("Gumbel branch is continuous in xi") {
  const std::vector<double> data{-1.2, 0.3, 0.9, 2.4, 4.0};
  for (double mu : {-0.5, 0.0, 1.0}) {
    for (double sigma : {0.7, 1.0, 2.0}) {
      const double ref = bm_log_likelihood({mu, sigma, 0.0}, data);
      for (double xi : {-1e-8, 1e-8}) {
        CHECK(std::abs(bm_log_likelihood({mu, sigma, xi}, data) - ref) < 1e-5);
        for (double y : data) CHECK(std::abs(gev_cdf({mu, sigma, xi}, y) - gev_cdf({mu, sigma, 0}, y)) < 1e-5);
        for (double level : {0.01, 0.5, 0.999}) {
          CHECK(std::abs(gev_quantile({mu, sigma, xi}, level) - gev_quantile({mu, sigma, 0}, level)) < 1e-5);
        }
      }
    }
  }
}

TEST_CASE("shapes below the switch threshold use the Gumbel formulas exactly") {
  const std::vector<double> data{0.1, 0.5};
  CHECK(bm_log_likelihood({0, 1, 5e-10}, data) == bm_log_likelihood({0, 1, 0}, data));
  CHECK(gev_quantile({0, 1, -5e-10}, 0.3) == gev_quantile({0, 1, 0}, 0.3));
}

TEST_CASE("extreme quantile matches the quantile of p^m") {
  for (const GevParams& p : param_grid()) {
    for (double level : {0.5, 0.9, 0.999, 1.0 - 1.0 / 36500.0}) {
      for (long long m : {1LL, 20LL, 100LL, 365LL}) {
        const double pm = std::pow(level, static_cast<double>(m));
        if (!(pm > 0.0 && pm < 1.0)) continue;
        const double value = extreme_quantile(p, level, m);
        CHECK(std::abs(value - gev_quantile(p, pm)) < 1e-9 * (1.0 + std::abs(value)));
      }
    }
  }
}

TEST_CASE("log-likelihood agrees with numerically differentiated cdf") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (const GevParams& p : param_grid()) {
    std::vector<double> ys;
    for (int i = 0; i < 6; ++i) ys.push_back(gev_quantile(p, unit(gen)));
    double from_cdf = 0.0;
    const double h = 1e-6 * p.sigma;
    for (double y : ys) from_cdf += std::log((gev_cdf(p, y + h) - gev_cdf(p, y - h)) / (2 * h));
    CHECK(std::abs(bm_log_likelihood(p, ys) - from_cdf) < 1e-4);
  }
}
