#include "gevpb/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gevpb/errors.hpp"
#include "gevpb/random.hpp"

namespace gevpb {

using nlohmann::json;

namespace {

// Minimal RFC 4180 field splitter: quoted fields, doubled quotes.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string strip(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

RealSeries parse_series(std::istream& in, const ColumnRef& column, bool header, const std::string& source) {
  RealSeries series;
  series.source_path = source;
  std::size_t index = 0;
  std::string line;
  std::size_t line_no = 0;

  if (header) {
    if (!std::getline(in, line)) throw InputError(source + ": empty series (no header line)");
    ++line_no;
    const std::vector<std::string> names = split_csv_line(line);
    if (const auto* name = std::get_if<std::string>(&column)) {
      std::size_t i = 0;
      while (i < names.size() && strip(names[i]) != *name) ++i;
      if (i == names.size()) throw InputError(source + ": missing column '" + *name + "'");
      index = i;
      series.label = *name;
    } else {
      index = std::get<std::size_t>(column);
      if (index >= names.size()) {
        throw InputError(source + ": missing column index " + std::to_string(index));
      }
      series.label = strip(names[index]);
    }
  } else {
    if (std::holds_alternative<std::string>(column)) {
      throw InputError(source + ": a column name needs a header line; use an index instead");
    }
    index = std::get<std::size_t>(column);
    series.label = "column " + std::to_string(index);
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty() || strip(line) == "\r") continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (index >= cells.size()) {
      throw InputError(source + ": line " + std::to_string(line_no) + " has no column " + std::to_string(index));
    }
    const std::string cell = strip(cells[index]);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
      throw InputError(source + ": line " + std::to_string(line_no) + ": cannot parse '" + cell + "' as a number");
    }
    series.values.push_back(v);
  }
  if (series.values.empty()) throw InputError(source + ": empty series");
  return series;
}

RealSeries load_series(const std::string& path, const ColumnRef& column, bool header) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open series file '" + path + "'");
  return parse_series(in, column, header, path);
}

RealSeries synthetic_temperature_series(std::uint64_t seed, std::size_t days) {
  RealSeries series;
  series.label = "tmax_synthetic";
  series.source_path = "synthetic:" + std::to_string(seed);
  series.values.reserve(days);
  RandomStream rng(seed);
  // Annual cycle peaking in mid July plus AR(1) weather noise.
  double anomaly = 0.0;
  for (std::size_t d = 0; d < days; ++d) {
    const double phase = 2.0 * std::numbers::pi * (static_cast<double>(d) - 105.0) / 365.25;
    anomaly = 0.6 * anomaly + 7.0 * rng.standard_normal();
    series.values.push_back(std::round(63.0 + 22.0 * std::sin(phase) + anomaly));
  }
  return series;
}

std::string format_csv_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_mad_csv(std::ostream& out, const std::vector<MadReport>& reports) {
  out << kMadCsvHeader << "\n";
  for (const MadReport& rep : reports) {
    for (const MadCell& c : rep.cells) {
      out << rep.experiment_id << ',' << rep.method << ',' << c.r << ',' << (c.p ? format_csv_number(*c.p) : "")
          << ',' << to_string(c.metric) << ',' << format_csv_number(c.mad) << ',' << format_csv_number(c.truth)
          << ',' << c.effective_count << ',' << c.replicates << ',' << (c.flagged ? 1 : 0) << ',' << rep.seed
          << "\n";
    }
  }
}

void write_quartile_csv(std::ostream& out, const QuartileSummary& s) {
  out << kQuartileCsvHeader << "\n";
  for (const QuartileRow& q : s.rows) {
    out << s.experiment_id << ',' << q.r << ',' << (q.p ? format_csv_number(*q.p) : "") << ',' << to_string(q.metric)
        << ',' << format_csv_number(q.q1) << ',' << format_csv_number(q.median) << ',' << format_csv_number(q.q3)
        << ',' << q.effective_count << ',' << q.groups << ',' << s.seed << "\n";
  }
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["experiment_id"] = c.experiment_id;
  j["dist"] = c.dist ? c.dist->describe() : "real";
  j["n"] = c.n;
  j["block_size"] = c.block_size;
  j["r_values"] = c.r_values;
  j["B"] = c.permutations;
  j["repetitions"] = c.repetitions;
  j["p_values"] = c.p_values;
  j["use_permutations"] = c.use_permutations;
  j["aggregation"] = c.aggregation == Aggregation::Median ? "median" : "mean";
  j["seed"] = c.master_seed;
  j["optimizer"] = {{"max_iterations", c.optimizer.max_iterations},
                    {"param_tolerance", c.optimizer.param_tolerance},
                    {"likelihood_tolerance", c.optimizer.likelihood_tolerance},
                    {"max_restarts", c.optimizer.max_restarts}};
  return j;
}

json to_json(const FitResult& f) {
  return {{"mu", f.params.mu},
          {"sigma", f.params.sigma},
          {"xi", f.params.xi},
          {"log_likelihood", std::isfinite(f.log_likelihood) ? json(f.log_likelihood) : json(nullptr)},
          {"converged", f.converged},
          {"iterations", f.iterations},
          {"function_evals", f.function_evals}};
}

json to_json(const MadReport& rep) {
  json j;
  j["experiment_id"] = rep.experiment_id;
  j["method"] = rep.method;
  j["seed"] = rep.seed;
  j["p_values"] = rep.p_values;
  j["cells"] = json::array();
  for (const MadCell& c : rep.cells) {
    j["cells"].push_back({{"r", c.r},
                          {"p", optional_number(c.p)},
                          {"metric", to_string(c.metric)},
                          {"truth", c.truth},
                          {"mad", c.mad},
                          {"effective_count", c.effective_count},
                          {"replicates", c.replicates},
                          {"flagged", c.flagged}});
  }
  j["replicates"] = json::array();
  for (const ReplicateRecord& rec : rep.replicates) {
    json xi = json::array();
    for (const auto& v : rec.xi) xi.push_back(optional_number(v));
    json q = json::array();
    for (const auto& column : rec.quantiles) {
      json col = json::array();
      for (const auto& v : column) col.push_back(optional_number(v));
      q.push_back(std::move(col));
    }
    j["replicates"].push_back({{"r", rec.r},
                               {"xi", std::move(xi)},
                               {"quantiles", std::move(q)},
                               {"b_effective", rec.b_effective},
                               {"function_evals", rec.function_evals}});
  }
  return j;
}

MadReport mad_report_from_json(const json& j) {
  MadReport rep;
  rep.experiment_id = j.at("experiment_id").get<std::string>();
  rep.method = j.at("method").get<std::string>();
  rep.seed = j.at("seed").get<std::uint64_t>();
  rep.p_values = j.at("p_values").get<std::vector<double>>();
  for (const json& c : j.at("cells")) {
    MadCell cell;
    cell.r = c.at("r").get<std::size_t>();
    cell.p = optional_from(c.at("p"));
    const std::string metric = c.at("metric").get<std::string>();
    if (metric != "xi" && metric != "quantile") throw InputError("unknown metric '" + metric + "' in report");
    cell.metric = metric == "xi" ? Metric::Xi : Metric::Quantile;
    cell.truth = c.at("truth").get<double>();
    cell.mad = c.at("mad").get<double>();
    cell.effective_count = c.at("effective_count").get<std::size_t>();
    cell.replicates = c.at("replicates").get<std::size_t>();
    cell.flagged = c.at("flagged").get<bool>();
    rep.cells.push_back(cell);
  }
  for (const json& r : j.at("replicates")) {
    ReplicateRecord rec;
    rec.r = r.at("r").get<std::size_t>();
    for (const json& v : r.at("xi")) rec.xi.push_back(optional_from(v));
    for (const json& column : r.at("quantiles")) {
      std::vector<std::optional<double>> col;
      for (const json& v : column) col.push_back(optional_from(v));
      rec.quantiles.push_back(std::move(col));
    }
    rec.b_effective = r.at("b_effective").get<std::vector<std::size_t>>();
    rec.function_evals = r.at("function_evals").get<std::vector<std::size_t>>();
    rep.replicates.push_back(std::move(rec));
  }
  return rep;
}

json to_json(const QuartileSummary& s) {
  json j;
  j["experiment_id"] = s.experiment_id;
  j["seed"] = s.seed;
  j["p_values"] = s.p_values;
  j["rows"] = json::array();
  for (const QuartileRow& q : s.rows) {
    j["rows"].push_back({{"r", q.r},
                         {"p", optional_number(q.p)},
                         {"metric", to_string(q.metric)},
                         {"q1", q.q1},
                         {"median", q.median},
                         {"q3", q.q3},
                         {"effective_count", q.effective_count},
                         {"groups", q.groups}});
  }
  j["groups"] = json::array();
  for (const GroupRecord& rec : s.groups) {
    json params = json::array();
    for (const auto& p : rec.params) {
      params.push_back(p ? json{{"mu", p->mu}, {"sigma", p->sigma}, {"xi", p->xi}} : json(nullptr));
    }
    json q = json::array();
    for (const auto& column : rec.quantiles) {
      json col = json::array();
      for (const auto& v : column) col.push_back(optional_number(v));
      q.push_back(std::move(col));
    }
    j["groups"].push_back(
        {{"r", rec.r}, {"params_median", std::move(params)}, {"quantiles", std::move(q)}, {"b_effective", rec.b_effective}});
  }
  return j;
}

json to_json(const PbEstimate& e) {
  json j;
  j["params_median"] = {{"mu", e.params_median.mu}, {"sigma", e.params_median.sigma}, {"xi", e.params_median.xi}};
  j["p_values"] = e.p_values;
  j["quantile_median"] = e.quantile_medians;
  j["b_effective"] = e.b_effective;
  j["per_permutation"] = json::array();
  for (std::size_t b = 0; b < e.per_permutation.size(); ++b) {
    json fit = to_json(e.per_permutation[b]);
    json q = json::array();
    for (const auto& column : e.per_permutation_quantiles) q.push_back(std::isfinite(column[b]) ? json(column[b]) : json(nullptr));
    fit["quantiles"] = std::move(q);
    j["per_permutation"].push_back(std::move(fit));
  }
  return j;
}

}  // namespace gevpb
