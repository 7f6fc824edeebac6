#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gevpb {

struct SimplexOptions {
  std::size_t max_iterations = 5000;
  /// Largest coordinate distance from the best vertex allowed at convergence.
  double x_tolerance = 1e-8;
  /// Largest objective spread across vertices allowed at convergence.
  double f_tolerance = 1e-10;
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead minimization from an explicit starting simplex of dim+1
/// vertices. Non-finite objective values are treated as +infinity, so an
/// infeasible trial point is simply never accepted over a feasible one.
SimplexResult minimize_simplex(const Objective& objective, std::vector<std::vector<double>> simplex,
                               const SimplexOptions& options);

}  // namespace gevpb
