#pragma once

#include <cstddef>
#include <optional>

#include "gevpb/gev.hpp"
#include "gevpb/rlos.hpp"

namespace gevpb {

struct OptimizerSettings {
  std::size_t max_iterations = 5000;
  double param_tolerance = 1e-8;
  double likelihood_tolerance = 1e-10;
  /// Fresh-simplex restarts from a converged point; stops early once a
  /// restart no longer improves the likelihood.
  std::size_t max_restarts = 2;

  bool operator==(const OptimizerSettings&) const = default;
};

struct FitResult {
  GevParams params;
  double log_likelihood = kInfeasible;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t function_evals = 0;

  bool operator==(const FitResult&) const = default;
};

inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr double kSigmaFloor = 1e-8;
inline constexpr double kInitialXi = 0.1;

/// Gumbel moment start from the block maxima, with sigma doubled until every
/// retained order statistic is inside the support. Needs at least 2 blocks.
GevParams initial_params(const BlockTopR& top_r);

/// Maximizes rlos_log_likelihood over (mu, log sigma, xi) with a Nelder-Mead
/// simplex. Running out of iterations yields converged = false; an infeasible
/// `init` throws DomainError.
FitResult fit_gev(const BlockTopR& top_r, const std::optional<GevParams>& init = std::nullopt,
                  const OptimizerSettings& settings = {});

}  // namespace gevpb
