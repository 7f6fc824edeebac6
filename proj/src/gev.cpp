#include "gevpb/gev.hpp"

#include <cmath>
#include <sstream>

#include "gevpb/errors.hpp"

namespace gevpb {

bool GevParams::valid() const noexcept {
  return std::isfinite(mu) && std::isfinite(sigma) && std::isfinite(xi) && sigma > 0.0;
}

void require_valid(const GevParams& params) {
  if (!params.valid()) {
    std::ostringstream msg;
    msg << "invalid GEV parameters (mu=" << params.mu << ", sigma=" << params.sigma
        << ", xi=" << params.xi << "); sigma must be > 0 and all fields finite";
    throw ParameterError(msg.str());
  }
}

namespace {

void require_open_probability(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << what << ": probability must lie in (0, 1), got " << p;
    throw DomainError(msg.str());
  }
}

// Quantile of the GEV at a level whose -log is `neg_log_level` (> 0).
double quantile_from_neg_log(const GevParams& params, double neg_log_level) {
  const double log_term = std::log(neg_log_level);
  if (is_gumbel(params.xi)) return params.mu - params.sigma * log_term;
  return params.mu + params.sigma / params.xi * std::expm1(-params.xi * log_term);
}

}  // namespace

SupportCheck check_support(const GevParams& params, std::span<const double> values) {
  require_valid(params);
  if (is_gumbel(params.xi)) return {};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(1.0 + params.xi * (values[i] - params.mu) / params.sigma > 0.0)) {
      return {false, i};
    }
  }
  return {};
}

double gev_cdf(const GevParams& params, double y) {
  require_valid(params);
  const double z = (y - params.mu) / params.sigma;
  if (is_gumbel(params.xi)) return std::exp(-std::exp(-z));
  const double t = 1.0 + params.xi * z;
  if (!(t > 0.0)) return params.xi > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::exp(-std::log1p(params.xi * z) / params.xi));
}

double gev_log_density(const GevParams& params, double y) {
  require_valid(params);
  const double z = (y - params.mu) / params.sigma;
  if (is_gumbel(params.xi)) return -std::log(params.sigma) - z - std::exp(-z);
  if (!(1.0 + params.xi * z > 0.0)) return kInfeasible;
  const double log_t = std::log1p(params.xi * z);
  return -std::log(params.sigma) - (1.0 + 1.0 / params.xi) * log_t - std::exp(-log_t / params.xi);
}

double gev_quantile(const GevParams& params, double p) {
  require_valid(params);
  require_open_probability(p, "gev_quantile");
  return quantile_from_neg_log(params, -std::log(p));
}

double extreme_quantile(const GevParams& params, double p, long long block_length) {
  require_valid(params);
  require_open_probability(p, "extreme_quantile");
  if (block_length < 1) {
    throw DomainError("extreme_quantile: block length must be >= 1");
  }
  return quantile_from_neg_log(params, -static_cast<double>(block_length) * std::log(p));
}

double bm_log_likelihood(const GevParams& params, std::span<const double> maxima) {
  require_valid(params);
  if (maxima.empty()) throw DomainError("bm_log_likelihood: no maxima supplied");

  const double m = static_cast<double>(maxima.size());
  double sum_log = 0.0;  // sum of log t_i (xi != 0) or of z_i (xi == 0)
  double sum_pow = 0.0;  // sum of t_i^(-1/xi) or of exp(-z_i)
  if (is_gumbel(params.xi)) {
    for (double y : maxima) {
      const double z = (y - params.mu) / params.sigma;
      sum_log += z;
      sum_pow += std::exp(-z);
    }
    return -m * std::log(params.sigma) - sum_pow - sum_log;
  }
  for (double y : maxima) {
    const double z = (y - params.mu) / params.sigma;
    if (!(1.0 + params.xi * z > 0.0)) return kInfeasible;
    const double log_t = std::log1p(params.xi * z);
    sum_log += log_t;
    sum_pow += std::exp(-log_t / params.xi);
  }
  return -m * std::log(params.sigma) - sum_pow - (1.0 / params.xi + 1.0) * sum_log;
}

}  // namespace gevpb
