#include "gevpb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gevpb/errors.hpp"

namespace gevpb {

double median(std::span<const double> values) {
  if (values.empty()) throw DomainError("median of an empty set");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + 0.5 * (upper - lower);
}

double mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean of an empty set");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_quantile(std::span<const double> values, double q) {
  if (values.empty()) throw DomainError("quantile of an empty set");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double h = static_cast<double>(v.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double mad(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw DomainError("mad: no estimates");
  std::vector<double> dev;
  dev.reserve(estimates.size());
  for (double e : estimates) dev.push_back(std::abs(e - truth));
  return median(dev);
}

}  // namespace gevpb
