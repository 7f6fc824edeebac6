#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gevpb/bootstrap.hpp"
#include "gevpb/fit.hpp"
#include "gevpb/samplers.hpp"

namespace gevpb {

/// Full description of one simulation or real-data experiment. An empty
/// `dist` marks a real-series experiment.
struct ExperimentConfig {
  std::string experiment_id = "experiment";
  std::optional<SourceDistribution> dist;
  std::size_t n = 365 * 20;
  std::size_t block_size = 365;
  std::vector<std::size_t> r_values{1};
  std::size_t permutations = 10;
  std::size_t repetitions = 50;
  std::vector<double> p_values{1.0 - 1.0 / (365.0 * 20.0)};
  bool use_permutations = true;
  /// Also run the plain (no permutation) estimator; used by the CLI.
  bool compare_plain = false;
  Aggregation aggregation = Aggregation::Median;
  std::uint64_t master_seed = 1;
  OptimizerSettings optimizer;
  std::size_t threads = 1;

  /// Throws DomainError naming the first violated constraint.
  void validate() const;
  bool is_simulation() const noexcept { return dist.has_value(); }
};

/// Parses the flat `key = value` format ('#' starts a comment). Unknown keys
/// are errors. Quantile levels accept decimals or the forms `1-1/n`,
/// `1-1/3n` and `1-1/<number>`; `n` refers to the series length.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string format_config(const ExperimentConfig& config);

/// Named reproductions of the study's figures at desk and paper scale.
std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

}  // namespace gevpb
