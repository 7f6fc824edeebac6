#pragma once

#include <span>

namespace gevpb {

/// Midpoint of the two central values for even counts. Throws DomainError on empty input.
double median(std::span<const double> values);

double mean(std::span<const double> values);

/// Linearly interpolated sample quantile (the "type 7" rule: position
/// h = (n - 1) q between order statistics).
double sample_quantile(std::span<const double> values, double q);

/// Median absolute deviation of estimates from a known truth.
double mad(std::span<const double> estimates, double truth);

}  // namespace gevpb
