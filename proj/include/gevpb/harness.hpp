#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gevpb/bootstrap.hpp"
#include "gevpb/config.hpp"

namespace gevpb {

enum class Metric { Xi, Quantile };

std::string to_string(Metric m);

/// Cells with fewer effective replicates than this fraction are flagged.
inline constexpr double kMinEffectiveFraction = 0.8;

/// MAD of one (r, p, metric) combination. Xi cells carry no p: the shape
/// estimate does not depend on the quantile level.
struct MadCell {
  std::size_t r = 1;
  std::optional<double> p;
  Metric metric = Metric::Xi;
  double truth = 0.0;
  double mad = 0.0;
  std::size_t effective_count = 0;
  std::size_t replicates = 0;
  bool flagged = false;

  bool operator==(const MadCell&) const = default;
};

/// Per-replicate record for one r; missing entries are failed estimations.
struct ReplicateRecord {
  std::size_t r = 1;
  std::vector<std::optional<double>> xi;
  /// [p index][replicate]
  std::vector<std::vector<std::optional<double>>> quantiles;
  /// Converged permutation fits per replicate (1 or 0 for the plain method).
  std::vector<std::size_t> b_effective;
  std::vector<std::size_t> function_evals;

  bool operator==(const ReplicateRecord&) const = default;
};

struct MadReport {
  std::string experiment_id;
  std::string method;  // "pb" or "plain"
  std::uint64_t seed = 0;
  std::vector<double> p_values;
  std::vector<MadCell> cells;
  std::vector<ReplicateRecord> replicates;

  const MadCell& cell(std::size_t r, Metric metric, std::optional<double> p = std::nullopt) const;
  bool operator==(const MadReport&) const = default;
};

struct QuartileRow {
  std::size_t r = 1;
  std::optional<double> p;
  Metric metric = Metric::Xi;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  std::size_t effective_count = 0;
  std::size_t groups = 0;

  bool operator==(const QuartileRow&) const = default;
};

struct GroupRecord {
  std::size_t r = 1;
  std::vector<std::optional<GevParams>> params;
  /// [p index][group]
  std::vector<std::vector<std::optional<double>>> quantiles;
  std::vector<std::size_t> b_effective;

  bool operator==(const GroupRecord&) const = default;
};

struct QuartileSummary {
  std::string experiment_id;
  std::uint64_t seed = 0;
  std::vector<double> p_values;
  std::vector<QuartileRow> rows;
  std::vector<GroupRecord> groups;

  const QuartileRow& row(std::size_t r, Metric metric, std::optional<double> p = std::nullopt) const;
  bool operator==(const QuartileSummary&) const = default;
};

/// Monte-Carlo study. Repetition i draws its series from
/// RandomStream(master_seed).substream(i).substream(0) and its permutations
/// from ...substream(i).substream(1); every r reuses the same permutations.
/// Failed repetitions are recorded as missing; EstimationFailure is thrown
/// only if some cell ends up with no estimates at all.
MadReport run_simulation(const ExperimentConfig& config, const Permuter& permuter = permute);

/// Grouped-permutation analysis of one observed series. Group g consists of
/// permutations RandomStream(master_seed).substream(g).substream(b) for
/// b < B; there are `repetitions` groups.
QuartileSummary run_real_data(const ExperimentConfig& config, std::span<const double> series);

}  // namespace gevpb
