#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gevpb/bootstrap.hpp"
#include "gevpb/harness.hpp"

namespace gevpb {

struct RealSeries {
  std::vector<double> values;
  std::string label;
  std::string source_path;
};

/// Column selector: header name, or zero-based index.
using ColumnRef = std::variant<std::string, std::size_t>;

/// Reads one numeric column of a CSV file in file order. Distinct InputError
/// messages for a missing file, a missing column, an unparseable cell (with
/// its 1-based line number) and an empty data section.
RealSeries load_series(const std::string& path, const ColumnRef& column, bool header = true);
RealSeries parse_series(std::istream& in, const ColumnRef& column, bool header, const std::string& source);

/// Daily maximum temperatures (integer Fahrenheit) with an annual cycle,
/// shaped like a century of station data: 36524 values by default.
RealSeries synthetic_temperature_series(std::uint64_t seed, std::size_t days = 36524);

/// 9 significant digits, as written to every CSV.
std::string format_csv_number(double v);

inline const char* const kMadCsvHeader = "experiment_id,method,r,p,metric,mad,truth,effective_count,replicates,flagged,seed";
inline const char* const kQuartileCsvHeader = "experiment_id,r,p,metric,q1,median,q3,effective_count,groups,seed";
inline const char* const kFitCsvHeader = "experiment_id,method,r,p,metric,estimate,effective_count,seed";

void write_mad_csv(std::ostream& out, const std::vector<MadReport>& reports);
void write_quartile_csv(std::ostream& out, const QuartileSummary& summary);

nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const MadReport& report);
nlohmann::json to_json(const QuartileSummary& summary);
nlohmann::json to_json(const PbEstimate& estimate);

MadReport mad_report_from_json(const nlohmann::json& j);

}  // namespace gevpb
