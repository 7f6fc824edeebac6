#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gevpb/random.hpp"

namespace gevpb {

enum class Family { Pareto, StudentT, InverseGamma };

/// One of the three study distributions. Construct through the named
/// factories; they reject non-positive parameters with DomainError.
class SourceDistribution {
 public:
  /// F(x) = 1 - x^(-1/kappa), x > 1.
  static SourceDistribution pareto(double kappa);
  static SourceDistribution student_t(double degrees_of_freedom);
  static SourceDistribution inverse_gamma(double shape, double scale);

  Family family() const noexcept { return family_; }
  double kappa() const;
  double degrees_of_freedom() const;
  double shape() const;
  double scale() const;

  std::string describe() const;

  bool operator==(const SourceDistribution&) const = default;

 private:
  SourceDistribution(Family family, double a, double b) : family_(family), a_(a), b_(b) {}

  Family family_;
  double a_;
  double b_;
};

std::vector<double> sample(const SourceDistribution& dist, std::size_t n, RandomStream& rng);

/// Extreme value index of the family: kappa, 1/df or 1/shape.
double true_xi(const SourceDistribution& dist);

double source_cdf(const SourceDistribution& dist, double x);

/// 1 - F(x), evaluated without cancellation in the upper tail.
double source_survival(const SourceDistribution& dist, double x);

/// Reference quantile of F at level p, by bisection on the survival function
/// (closed form for Pareto).
double source_quantile(const SourceDistribution& dist, double p);

double standard_gamma(double shape, RandomStream& rng);

}  // namespace gevpb
