#pragma once

// High-precision reference evaluations used only by tests. These follow the
// textbook formulas term by term in 50-digit arithmetic and share no code with
// the library.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

inline Big gev_cdf(double mu, double sigma, double xi, double y) {
  const Big z = (Big(y) - mu) / sigma;
  if (xi == 0.0) return exp(-exp(-z));
  const Big t = 1 + Big(xi) * z;
  if (t <= 0) return xi > 0 ? Big(0) : Big(1);
  return exp(-pow(t, -1 / Big(xi)));
}

inline Big gev_log_density(double mu, double sigma, double xi, double y) {
  const Big z = (Big(y) - mu) / sigma;
  if (xi == 0.0) return -log(Big(sigma)) - z - exp(-z);
  const Big t = 1 + Big(xi) * z;
  return -log(Big(sigma)) - (1 + 1 / Big(xi)) * log(t) - pow(t, -1 / Big(xi));
}

/// r-LOS log-likelihood, summed block by block and term by term.
inline Big rlos_log_likelihood(double mu, double sigma, double xi, const std::vector<std::vector<double>>& blocks) {
  Big total = 0;
  for (const auto& block : blocks) {
    for (std::size_t k = 0; k < block.size(); ++k) {
      const Big z = (Big(block[k]) - mu) / sigma;
      total -= log(Big(sigma));
      if (xi == 0.0) {
        total -= z;
        if (k + 1 == block.size()) total -= exp(-z);
      } else {
        const Big t = 1 + Big(xi) * z;
        total -= (1 / Big(xi) + 1) * log(t);
        if (k + 1 == block.size()) total -= pow(t, -1 / Big(xi));
      }
    }
  }
  return total;
}

}  // namespace oracle
