#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "gevpb/bootstrap.hpp"
#include "gevpb/errors.hpp"
#include "gevpb/samplers.hpp"
#include "gevpb/stats.hpp"

using namespace gevpb;

namespace {

std::vector<double> identity_permuter(std::span<const double> data, RandomStream&) {
  return {data.begin(), data.end()};
}

std::vector<double> pareto_series(double kappa, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed);
  return sample(SourceDistribution::pareto(kappa), n, rng);
}

}  // namespace

TEST_CASE("permute") {
  RandomStream rng(9);
  CHECK(permute(std::vector<double>{4.2}, rng) == std::vector<double>{4.2});
  std::vector<double> in{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5};
  for (int i = 0; i < 100; ++i) {
    std::vector<double> out = permute(in, rng);
    std::sort(out.begin(), out.end());
    std::vector<double> sorted_in = in;
    std::sort(sorted_in.begin(), sorted_in.end());
    CHECK(out == sorted_in);
  }
}

TEST_CASE("permute is uniform over orderings") {
  RandomStream rng(10);
  const std::vector<double> base{1, 2, 3, 4};
  std::map<std::vector<double>, int> counts;
  const int trials = 24000;
  for (int i = 0; i < trials; ++i) ++counts[permute(base, rng)];
  REQUIRE(counts.size() == 24);
  const double expected = trials / 24.0;
  const double se = std::sqrt(trials * (1.0 / 24.0) * (23.0 / 24.0));
  double chi2 = 0.0;
  for (const auto& [order, c] : counts) {
    CHECK(std::abs(c - expected) < 3 * se + 1e-9);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 23 degrees of freedom, 99.9% point is 49.7.
  CHECK(chi2 < 49.7);
}

TEST_CASE("substreams are keyed, not sequential") {
  const RandomStream root(77);
  RandomStream a = root.substream(3);
  RandomStream b = RandomStream(77).substream(3);
  CHECK(a.next_u64() == b.next_u64());
  RandomStream c = root.substream(4);
  CHECK(root.substream(3).next_u64() != c.next_u64());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("pb_fit basics") {
  const auto data = pareto_series(0.3, 365 * 8, 21);
  const double levels[] = {0.999, 1.0 - 1.0 / (365.0 * 8)};
  const RandomStream rng(5);

  SUBCASE("B = 1 equals the single permuted fit") {
    PbSettings s;
    s.permutations = 1;
    const PbEstimate est = pb_fit(data, 365, 3, levels, rng, s);
    RandomStream sub = rng.substream(0);
    const FitResult direct = fit_gev(extract_top_r(permute(data, sub), 365, 3));
    CHECK(est.per_permutation.front() == direct);
    CHECK(est.params_median == direct.params);
    CHECK(est.quantile_medians[0] == extreme_quantile(direct.params, levels[0], 365));
    CHECK(est.b_effective == 1);
  }
  SUBCASE("identity permutation reproduces the plain fit") {
    PbSettings s;
    s.permutations = 1;
    const PbEstimate est = pb_fit(data, 365, 2, levels, rng, s, identity_permuter);
    const PlainEstimate plain = plain_fit(data, 365, 2, levels);
    CHECK(est.params_median == plain.fit.params);
    CHECK(est.quantile_medians == plain.quantiles);
  }
  SUBCASE("deterministic and independent of thread count") {
    PbSettings s;
    s.permutations = 7;
    const PbEstimate a = pb_fit(data, 365, 2, levels, rng, s);
    const PbEstimate b = pb_fit(data, 365, 2, levels, rng, s);
    s.threads = 3;
    const PbEstimate c = pb_fit(data, 365, 2, levels, rng, s);
    CHECK(a.per_permutation == b.per_permutation);
    CHECK(a.per_permutation == c.per_permutation);
    CHECK(a.params_median == c.params_median);
    CHECK(a.quantile_medians == c.quantile_medians);
  }
  SUBCASE("median aggregation with odd count picks attained values") {
    PbSettings s;
    s.permutations = 5;
    const PbEstimate est = pb_fit(data, 365, 1, levels, rng, s);
    REQUIRE(est.b_effective == 5);
    const auto attained = [&](double v, auto field) {
      return std::any_of(est.per_permutation.begin(), est.per_permutation.end(),
                         [&](const FitResult& f) { return field(f) == v; });
    };
    CHECK(attained(est.params_median.mu, [](const FitResult& f) { return f.params.mu; }));
    CHECK(attained(est.params_median.sigma, [](const FitResult& f) { return f.params.sigma; }));
    CHECK(attained(est.params_median.xi, [](const FitResult& f) { return f.params.xi; }));
    CHECK(std::find(est.per_permutation_quantiles[1].begin(), est.per_permutation_quantiles[1].end(),
                    est.quantile_medians[1]) != est.per_permutation_quantiles[1].end());
  }
  SUBCASE("mean aggregation switch") {
    PbSettings s;
    s.permutations = 4;
    s.aggregation = Aggregation::Mean;
    const PbEstimate est = pb_fit(data, 365, 1, levels, rng, s);
    double xi_sum = 0.0;
    for (const auto& f : est.per_permutation) xi_sum += f.params.xi;
    CHECK(est.params_median.xi == doctest::Approx(xi_sum / 4));
    CHECK(est.quantile_medians[0] == doctest::Approx(mean(est.per_permutation_quantiles[0])));
  }
  SUBCASE("single-level overload") {
    const PbEstimate est = pb_fit(data, 365, 2, 3, 0.999, rng);
    CHECK(est.per_permutation.size() == 3);
    CHECK(est.quantile_median() == est.quantile_medians.at(0));
  }
}

TEST_CASE("pb_fit failure paths") {
  const std::vector<double> constant(365 * 4, 70.0);
  const double levels[] = {0.99};
  PbSettings s;
  s.permutations = 3;
  CHECK_THROWS_AS(pb_fit(constant, 365, 2, levels, RandomStream(1), s), EstimationFailure);
  const std::vector<double> short_series(100, 1.0);
  CHECK_THROWS_AS(pb_fit(short_series, 365, 1, levels, RandomStream(1), s), DomainError);
  s.permutations = 0;
  CHECK_THROWS_AS(pb_fit(pareto_series(0.3, 800, 1), 365, 1, levels, RandomStream(1), s), DomainError);
}

TEST_CASE("permutations reduce the error of the block-maxima estimate") {
  // 50 replicates; median |error| with permutations must not exceed the plain one by more than 10%.
  const double levels[] = {0.999};
  PbSettings s;
  s.permutations = 20;
  std::vector<double> pb_err, plain_err;
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    const auto data = pareto_series(0.5, 365 * 20, 500 + rep);
    pb_err.push_back(std::abs(pb_fit(data, 365, 1, levels, RandomStream(900 + rep), s).params_median.xi - 0.5));
    plain_err.push_back(std::abs(plain_fit(data, 365, 1, levels).fit.params.xi - 0.5));
  }
  MESSAGE("median |xi error|: pb " << median(pb_err) << ", plain " << median(plain_err));
  CHECK(median(pb_err) <= 1.1 * median(plain_err));
}
