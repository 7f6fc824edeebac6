#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gevpb/gev.hpp"

namespace gevpb {

/// The r largest observations of each complete block, stored descending.
class BlockTopR {
 public:
  /// Validates shape, ordering and finiteness; throws DomainError otherwise.
  BlockTopR(std::size_t r, std::size_t block_size, std::vector<std::vector<double>> blocks);

  std::size_t r() const noexcept { return r_; }
  std::size_t block_size() const noexcept { return block_size_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<double>>& blocks() const noexcept { return blocks_; }
  std::span<const double> block(std::size_t i) const { return blocks_.at(i); }

  /// The k = 1 column: one maximum per block.
  std::vector<double> maxima() const;

  bool operator==(const BlockTopR&) const = default;

 private:
  std::size_t r_;
  std::size_t block_size_;
  std::vector<std::vector<double>> blocks_;
};

/// Throws DomainError unless 1 <= r <= block_size <= length.
void validate_blocking(std::size_t length, std::size_t block_size, std::size_t r);

/// Splits data into floor(n / block_size) consecutive blocks (a trailing
/// partial block is dropped) and keeps the r largest values of each.
BlockTopR extract_top_r(std::span<const double> data, std::size_t block_size, std::size_t r);

/// Joint log-likelihood of the r largest order statistics over all blocks;
/// kInfeasible if any retained value is outside the support.
double rlos_log_likelihood(const GevParams& params, const BlockTopR& top_r);

/// Log of the limiting joint density of one block's descending top-r vector.
double rlos_block_log_density(const GevParams& params, std::span<const double> block_vector);

}  // namespace gevpb
