#include "gevpb/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gevpb/errors.hpp"
#include "gevpb/nelder_mead.hpp"

namespace gevpb {

namespace {

GevParams from_search(std::span<const double> x) { return {x[0], std::exp(x[1]), x[2]}; }

// Simplex around `start` in (mu, log sigma, xi); the mu step scales with
// sigma so the search is equivariant under affine changes of units.
std::vector<std::vector<double>> initial_simplex(const GevParams& start) {
  const std::vector<double> x0{start.mu, std::log(start.sigma), start.xi};
  std::vector<std::vector<double>> simplex(4, x0);
  simplex[1][0] += 0.1 * start.sigma;
  simplex[2][1] += 0.1;
  simplex[3][2] += 0.1;
  return simplex;
}

// Zero-spread data: the likelihood grows without bound as sigma -> 0.
bool is_degenerate(const BlockTopR& top_r) {
  const double first = top_r.blocks().front().front();
  return std::all_of(top_r.blocks().begin(), top_r.blocks().end(), [first](const auto& b) {
    return std::all_of(b.begin(), b.end(), [first](double v) { return v == first; });
  });
}

}  // namespace

GevParams initial_params(const BlockTopR& top_r) {
  if (top_r.block_count() < 2) {
    throw DomainError("initial_params: at least 2 blocks are needed for a moment start");
  }
  const std::vector<double> maxima = top_r.maxima();
  const double n = static_cast<double>(maxima.size());
  double mean = 0.0;
  for (double y : maxima) mean += y;
  mean /= n;
  double ss = 0.0;
  for (double y : maxima) ss += (y - mean) * (y - mean);
  const double stdev = std::sqrt(ss / (n - 1.0));

  double sigma = std::max(std::sqrt(6.0) * stdev / std::numbers::pi, kSigmaFloor);
  const double mu = mean - kEulerGamma * sigma;
  GevParams start{mu, sigma, kInitialXi};
  for (int guard = 0; guard < 2048; ++guard) {
    bool feasible = true;
    for (const auto& b : top_r.blocks()) {
      if (!check_support(start, b).satisfied) {
        feasible = false;
        break;
      }
    }
    if (feasible) return start;
    start.sigma *= 2.0;
  }
  throw DomainError("initial_params: could not find a feasible starting scale");
}

FitResult fit_gev(const BlockTopR& top_r, const std::optional<GevParams>& init,
                  const OptimizerSettings& settings) {
  GevParams start = init ? *init : initial_params(top_r);
  require_valid(start);
  const double start_ll = rlos_log_likelihood(start, top_r);
  if (is_infeasible(start_ll)) {
    throw DomainError("fit_gev: initial parameters violate the support condition");
  }

  FitResult result{start, start_ll, false, 0, 1};
  if (is_degenerate(top_r)) return result;

  const Objective negative_ll = [&top_r](std::span<const double> x) {
    const GevParams p = from_search(x);
    if (!p.valid()) return std::numeric_limits<double>::infinity();
    return -rlos_log_likelihood(p, top_r);
  };

  SimplexOptions options{settings.max_iterations, settings.param_tolerance, settings.likelihood_tolerance};
  GevParams current = start;
  double current_ll = start_ll;
  for (std::size_t round = 0; round <= settings.max_restarts; ++round) {
    options.max_iterations = settings.max_iterations - result.iterations;
    const SimplexResult run = minimize_simplex(negative_ll, initial_simplex(current), options);
    result.iterations += run.iterations;
    result.function_evals += run.evaluations;
    result.converged = run.converged;

    const GevParams candidate = from_search(run.x);
    const double candidate_ll = candidate.valid() ? rlos_log_likelihood(candidate, top_r) : kInfeasible;
    const bool improved = candidate_ll > current_ll + settings.likelihood_tolerance;
    if (candidate_ll >= current_ll) {
      current = candidate;
      current_ll = candidate_ll;
    }
    if (!run.converged || !improved || result.iterations >= settings.max_iterations) break;
  }

  result.params = current;
  result.log_likelihood = current_ll;
  if (!std::isfinite(current_ll)) result.converged = false;
  return result;
}

}  // namespace gevpb
