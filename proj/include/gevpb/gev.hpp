#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>

namespace gevpb {

/// Location, scale and shape of a generalized extreme value distribution.
struct GevParams {
  double mu = 0.0;
  double sigma = 1.0;
  double xi = 0.0;

  bool valid() const noexcept;
  bool operator==(const GevParams&) const = default;
};

/// Throws ParameterError unless params.valid().
void require_valid(const GevParams& params);

/// Below this magnitude the shape is treated as exactly zero (Gumbel branch).
inline constexpr double kGumbelThreshold = 1e-9;

inline bool is_gumbel(double xi) noexcept { return xi > -kGumbelThreshold && xi < kGumbelThreshold; }

/// Returned by the likelihoods when an observation violates 1 + xi (y - mu) / sigma > 0.
inline constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

inline bool is_infeasible(double log_likelihood) noexcept { return !(log_likelihood > kInfeasible); }

struct SupportCheck {
  bool satisfied = true;
  std::optional<std::size_t> violating_index;
};

/// First index (if any) whose observation lies outside the support of params.
SupportCheck check_support(const GevParams& params, std::span<const double> values);

double gev_cdf(const GevParams& params, double y);

/// Log density; kInfeasible outside the support.
double gev_log_density(const GevParams& params, double y);

double gev_quantile(const GevParams& params, double p);

/// Quantile of the parent distribution F at level p when the maxima of
/// `block_length` draws from F follow params, i.e. the GEV quantile at p^block_length
/// evaluated without forming the power.
double extreme_quantile(const GevParams& params, double p, long long block_length);

/// Block-maxima log-likelihood; kInfeasible if any maximum is outside the support.
double bm_log_likelihood(const GevParams& params, std::span<const double> maxima);

}  // namespace gevpb
