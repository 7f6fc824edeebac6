#include "gevpb/rlos.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "gevpb/errors.hpp"

namespace gevpb {

namespace {

bool is_descending(std::span<const double> v) {
  return std::is_sorted(v.begin(), v.end(), std::greater<>{});
}

// Accumulates the two sums shared by every r-LOS expression. Returns false on
// a support violation. For the Gumbel branch sum_log holds sum of z and
// tail_term holds exp(-z_r); otherwise sum_log holds sum of log t and
// tail_term holds t_r^(-1/xi).
bool accumulate_block(const GevParams& params, std::span<const double> block, double& sum_log,
                      double& tail_term) {
  const bool gumbel = is_gumbel(params.xi);
  for (std::size_t k = 0; k < block.size(); ++k) {
    const double z = (block[k] - params.mu) / params.sigma;
    if (gumbel) {
      sum_log += z;
      if (k + 1 == block.size()) tail_term += std::exp(-z);
      continue;
    }
    if (!(1.0 + params.xi * z > 0.0)) return false;
    const double log_t = std::log1p(params.xi * z);
    sum_log += log_t;
    if (k + 1 == block.size()) tail_term += std::exp(-log_t / params.xi);
  }
  return true;
}

double combine(const GevParams& params, double count, double sum_log, double tail_sum) {
  if (is_gumbel(params.xi)) return -count * std::log(params.sigma) - tail_sum - sum_log;
  return -count * std::log(params.sigma) - tail_sum - (1.0 / params.xi + 1.0) * sum_log;
}

}  // namespace

BlockTopR::BlockTopR(std::size_t r, std::size_t block_size, std::vector<std::vector<double>> blocks)
    : r_(r), block_size_(block_size), blocks_(std::move(blocks)) {
  if (r_ == 0 || block_size_ == 0 || r_ > block_size_) {
    throw DomainError("BlockTopR: need 1 <= r <= block_size");
  }
  if (blocks_.empty()) throw DomainError("BlockTopR: at least one block is required");
  for (const auto& b : blocks_) {
    if (b.size() != r_) throw DomainError("BlockTopR: every block must hold exactly r values");
    if (!std::all_of(b.begin(), b.end(), [](double v) { return std::isfinite(v); })) {
      throw DomainError("BlockTopR: values must be finite");
    }
    if (!is_descending(b)) throw DomainError("BlockTopR: block values must be sorted descending");
  }
}

std::vector<double> BlockTopR::maxima() const {
  std::vector<double> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.front());
  return out;
}

void validate_blocking(std::size_t length, std::size_t block_size, std::size_t r) {
  if (block_size == 0 || r == 0) throw DomainError("block size and r must be positive");
  if (r > block_size) {
    std::ostringstream msg;
    msg << "r (" << r << ") exceeds block size (" << block_size << ")";
    throw DomainError(msg.str());
  }
  if (length < block_size) {
    std::ostringstream msg;
    msg << "series of length " << length << " is shorter than one block (" << block_size << ")";
    throw DomainError(msg.str());
  }
}

BlockTopR extract_top_r(std::span<const double> data, std::size_t block_size, std::size_t r) {
  validate_blocking(data.size(), block_size, r);

  const std::size_t m = data.size() / block_size;
  std::vector<std::vector<double>> blocks;
  blocks.reserve(m);
  std::vector<double> scratch(block_size);
  for (std::size_t i = 0; i < m; ++i) {
    const auto first = data.begin() + static_cast<std::ptrdiff_t>(i * block_size);
    std::copy(first, first + static_cast<std::ptrdiff_t>(block_size), scratch.begin());
    std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(r), scratch.end(),
                      std::greater<>{});
    blocks.emplace_back(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(r));
  }
  return BlockTopR(r, block_size, std::move(blocks));
}

double rlos_log_likelihood(const GevParams& params, const BlockTopR& top_r) {
  require_valid(params);
  double sum_log = 0.0;
  double tail_sum = 0.0;
  for (const auto& block : top_r.blocks()) {
    if (!accumulate_block(params, block, sum_log, tail_sum)) return kInfeasible;
  }
  const double count = static_cast<double>(top_r.block_count() * top_r.r());
  return combine(params, count, sum_log, tail_sum);
}

double rlos_block_log_density(const GevParams& params, std::span<const double> block_vector) {
  require_valid(params);
  if (block_vector.empty()) throw DomainError("rlos_block_log_density: empty block vector");
  if (!is_descending(block_vector)) {
    throw DomainError("rlos_block_log_density: block vector must be sorted descending");
  }
  double sum_log = 0.0;
  double tail_term = 0.0;
  if (!accumulate_block(params, block_vector, sum_log, tail_term)) return kInfeasible;
  return combine(params, static_cast<double>(block_vector.size()), sum_log, tail_term);
}

}  // namespace gevpb
