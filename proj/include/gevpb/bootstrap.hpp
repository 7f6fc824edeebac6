#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gevpb/fit.hpp"
#include "gevpb/random.hpp"

namespace gevpb {

/// Uniformly random rearrangement (Fisher-Yates with unbiased index draws).
std::vector<double> permute(std::span<const double> data, RandomStream& rng);

using Permuter = std::function<std::vector<double>(std::span<const double>, RandomStream&)>;

enum class Aggregation { Median, Mean };

struct PbSettings {
  std::size_t permutations = 50;
  Aggregation aggregation = Aggregation::Median;
  OptimizerSettings optimizer;
  std::size_t threads = 1;
};

/// Per-permutation fits and their aggregate. Quantiles are aggregated from
/// each permutation's own quantile estimate, not recomputed from the
/// aggregated parameters. Under Aggregation::Mean the *_median fields hold
/// means.
struct PbEstimate {
  std::vector<FitResult> per_permutation;
  std::vector<double> p_values;
  /// [p index][permutation]; NaN where the fit did not converge.
  std::vector<std::vector<double>> per_permutation_quantiles;
  GevParams params_median;
  std::vector<double> quantile_medians;
  std::size_t b_effective = 0;

  double quantile_median() const { return quantile_medians.at(0); }
};

/// Permutation-bootstrap r-LOS estimate. Permutation b draws from
/// rng.substream(b), so results do not depend on thread count. Quantiles use
/// the block size as the exponent linking block maxima to the parent
/// distribution. Throws EstimationFailure when no fit converges.
PbEstimate pb_fit(std::span<const double> data, std::size_t block_size, std::size_t r,
                  std::span<const double> p_values, const RandomStream& rng, const PbSettings& settings,
                  const Permuter& permuter = permute);

PbEstimate pb_fit(std::span<const double> data, std::size_t block_size, std::size_t r, std::size_t permutations,
                  double p, const RandomStream& rng);

/// Single fit on the data as given, with quantiles computed the same way.
struct PlainEstimate {
  FitResult fit;
  std::vector<double> quantiles;
};

PlainEstimate plain_fit(std::span<const double> data, std::size_t block_size, std::size_t r,
                        std::span<const double> p_values, const OptimizerSettings& settings = {});

}  // namespace gevpb
