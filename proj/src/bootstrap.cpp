#include "gevpb/bootstrap.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gevpb/errors.hpp"
#include "gevpb/parallel.hpp"
#include "gevpb/stats.hpp"

namespace gevpb {

namespace {

double aggregate(std::span<const double> values, Aggregation how) {
  return how == Aggregation::Median ? median(values) : mean(values);
}

std::vector<double> quantiles_for(const FitResult& fit, std::span<const double> p_values, std::size_t block_size) {
  std::vector<double> out;
  out.reserve(p_values.size());
  for (double p : p_values) {
    out.push_back(fit.converged ? extreme_quantile(fit.params, p, static_cast<long long>(block_size))
                                : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

void require_probabilities(std::span<const double> p_values) {
  if (p_values.empty()) throw DomainError("at least one quantile level is required");
  for (double p : p_values) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile levels must lie in (0, 1)");
  }
}

}  // namespace

std::vector<double> permute(std::span<const double> data, RandomStream& rng) {
  std::vector<double> out(data.begin(), data.end());
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

PbEstimate pb_fit(std::span<const double> data, std::size_t block_size, std::size_t r,
                  std::span<const double> p_values, const RandomStream& rng, const PbSettings& settings,
                  const Permuter& permuter) {
  if (settings.permutations == 0) throw DomainError("pb_fit: number of permutations must be positive");
  require_probabilities(p_values);
  validate_blocking(data.size(), block_size, r);

  const std::size_t count = settings.permutations;
  PbEstimate est;
  est.p_values.assign(p_values.begin(), p_values.end());
  est.per_permutation.resize(count);
  std::vector<std::vector<double>> by_permutation(count);

  parallel_for(count, settings.threads, [&](std::size_t b) {
    RandomStream stream = rng.substream(b);
    const std::vector<double> shuffled = permuter(data, stream);
    const BlockTopR top = extract_top_r(shuffled, block_size, r);
    est.per_permutation[b] = fit_gev(top, std::nullopt, settings.optimizer);
    by_permutation[b] = quantiles_for(est.per_permutation[b], p_values, block_size);
  });

  est.per_permutation_quantiles.assign(p_values.size(), std::vector<double>(count));
  std::vector<double> mu, sigma, xi;
  std::vector<std::vector<double>> q(p_values.size());
  for (std::size_t b = 0; b < count; ++b) {
    const FitResult& f = est.per_permutation[b];
    for (std::size_t j = 0; j < p_values.size(); ++j) est.per_permutation_quantiles[j][b] = by_permutation[b][j];
    if (!f.converged) continue;
    mu.push_back(f.params.mu);
    sigma.push_back(f.params.sigma);
    xi.push_back(f.params.xi);
    for (std::size_t j = 0; j < p_values.size(); ++j) q[j].push_back(by_permutation[b][j]);
  }

  est.b_effective = xi.size();
  if (est.b_effective == 0) {
    std::ostringstream msg;
    msg << "pb_fit: none of the " << count << " permutation fits converged (block size " << block_size
        << ", r = " << r << ")";
    throw EstimationFailure(msg.str());
  }
  est.params_median = {aggregate(mu, settings.aggregation), aggregate(sigma, settings.aggregation),
                       aggregate(xi, settings.aggregation)};
  for (const auto& column : q) est.quantile_medians.push_back(aggregate(column, settings.aggregation));
  return est;
}

PbEstimate pb_fit(std::span<const double> data, std::size_t block_size, std::size_t r, std::size_t permutations,
                  double p, const RandomStream& rng) {
  PbSettings settings;
  settings.permutations = permutations;
  const double levels[] = {p};
  return pb_fit(data, block_size, r, levels, rng, settings);
}

PlainEstimate plain_fit(std::span<const double> data, std::size_t block_size, std::size_t r,
                        std::span<const double> p_values, const OptimizerSettings& settings) {
  require_probabilities(p_values);
  const BlockTopR top = extract_top_r(data, block_size, r);
  PlainEstimate est{fit_gev(top, std::nullopt, settings), {}};
  est.quantiles = quantiles_for(est.fit, p_values, block_size);
  return est;
}

}  // namespace gevpb
