#include "gevpb/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gevpb/config.hpp"
#include "gevpb/errors.hpp"
#include "gevpb/harness.hpp"
#include "gevpb/io.hpp"

namespace gevpb {

namespace fs = std::filesystem;

namespace {

std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? env : "results";
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << contents;
}

ColumnRef column_ref(const std::string& column) {
  if (!column.empty() && column.find_first_not_of("0123456789") == std::string::npos) {
    return static_cast<std::size_t>(std::stoull(column));
  }
  return column;
}

struct CommonOptions {
  std::string preset;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string out_dir = default_out_dir();
};

ExperimentConfig resolve_config(const CommonOptions& o, const std::string& fallback_preset) {
  if (!o.preset.empty() && !o.config_path.empty()) throw CLI::ValidationError("--preset and --config are exclusive");
  ExperimentConfig c = !o.config_path.empty() ? load_config(o.config_path)
                                               : preset(o.preset.empty() ? fallback_preset : o.preset);
  if (o.seed) c.master_seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  c.validate();
  return c;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--preset", o.preset, "Named experiment preset (see `gevpb presets`)");
  cmd->add_option("--config", o.config_path, "Experiment configuration file (key = value)");
  cmd->add_option("--seed", o.seed, "Master seed; overrides the configuration");
  cmd->add_option("--threads", o.threads, "Worker threads; results do not depend on this");
  cmd->add_option("--out", o.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or ./results)");
}

int do_simulate(const CommonOptions& o, std::ostream& out) {
  ExperimentConfig config = resolve_config(o, "desk-pareto-02");
  if (!config.is_simulation()) throw InputError("simulate: configuration describes a real series; use `analyze`");
  std::vector<MadReport> reports;
  reports.push_back(run_simulation(config));
  if (config.compare_plain && config.use_permutations) {
    ExperimentConfig plain = config;
    plain.use_permutations = false;
    reports.push_back(run_simulation(plain));
  }

  fs::create_directories(o.out_dir);
  std::ostringstream csv;
  write_mad_csv(csv, reports);
  nlohmann::json j{{"config", to_json(config)}, {"reports", nlohmann::json::array()}};
  for (const MadReport& r : reports) j["reports"].push_back(to_json(r));
  const fs::path base = fs::path(o.out_dir) / config.experiment_id;
  write_file(base.string() + ".csv", csv.str());
  write_file(base.string() + ".json", j.dump(1) + "\n");
  out << "wrote " << base.string() << ".csv and .json\n";
  return 0;
}

int do_analyze(const CommonOptions& o, const std::string& input, const std::string& column, bool no_header,
               std::ostream& out) {
  ExperimentConfig config = resolve_config(o, "desk-fort-collins");
  const RealSeries series = load_series(input, column_ref(column), !no_header);
  const QuartileSummary summary = run_real_data(config, series.values);

  fs::create_directories(o.out_dir);
  std::ostringstream csv;
  write_quartile_csv(csv, summary);
  nlohmann::json j{{"config", to_json(config)},
                   {"series", {{"label", series.label}, {"source", series.source_path}, {"length", series.values.size()}}},
                   {"summary", to_json(summary)}};
  const fs::path base = fs::path(o.out_dir) / (config.experiment_id + "_quartiles");
  write_file(base.string() + ".csv", csv.str());
  write_file(base.string() + ".json", j.dump(1) + "\n");
  out << "wrote " << base.string() << ".csv and .json\n";
  return 0;
}

struct FitOptions {
  std::string input;
  std::string column = "0";
  bool no_header = false;
  std::size_t block = 365;
  std::size_t r = 1;
  std::size_t permutations = 50;
  std::vector<double> p_values;
  std::uint64_t seed = 1;
  std::string aggregation = "median";
  std::string out_dir = default_out_dir();
  std::string id = "fit";
};

int do_fit(const FitOptions& o, std::ostream& out) {
  const RealSeries series = load_series(o.input, column_ref(o.column), !o.no_header);
  const std::vector<double> levels = o.p_values.empty() ? std::vector<double>{1.0 - 1.0 / 36500.0} : o.p_values;
  nlohmann::json j{{"input", {{"label", series.label}, {"source", series.source_path}, {"length", series.values.size()}}},
                   {"block_size", o.block},
                   {"r", o.r},
                   {"B", o.permutations},
                   {"seed", o.seed}};
  std::ostringstream csv;
  csv << kFitCsvHeader << "\n";
  const auto row = [&](const char* method, std::optional<double> p, const char* metric, double v, std::size_t eff) {
    csv << o.id << ',' << method << ',' << o.r << ',' << (p ? format_csv_number(*p) : "") << ',' << metric << ','
        << format_csv_number(v) << ',' << eff << ',' << o.seed << "\n";
  };

  if (o.permutations == 0) {
    const PlainEstimate est = plain_fit(series.values, o.block, o.r, levels);
    if (!est.fit.converged) throw EstimationFailure("fit: the optimizer did not converge");
    j["method"] = "plain";
    j["fit"] = to_json(est.fit);
    j["p_values"] = levels;
    j["quantiles"] = est.quantiles;
    row("plain", std::nullopt, "xi", est.fit.params.xi, 1);
    for (std::size_t k = 0; k < levels.size(); ++k) row("plain", levels[k], "quantile", est.quantiles[k], 1);
  } else {
    PbSettings settings;
    settings.permutations = o.permutations;
    settings.aggregation = o.aggregation == "mean" ? Aggregation::Mean : Aggregation::Median;
    const PbEstimate est = pb_fit(series.values, o.block, o.r, levels, RandomStream(o.seed), settings);
    j["method"] = "pb";
    j.update(to_json(est));
    row("pb", std::nullopt, "xi", est.params_median.xi, est.b_effective);
    for (std::size_t k = 0; k < levels.size(); ++k) row("pb", levels[k], "quantile", est.quantile_medians[k], est.b_effective);
  }

  fs::create_directories(o.out_dir);
  const fs::path base = fs::path(o.out_dir) / o.id;
  write_file(base.string() + ".csv", csv.str());
  write_file(base.string() + ".json", j.dump(1) + "\n");
  out << "wrote " << base.string() << ".csv and .json\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GEV parameter estimation with r largest order statistics and permutation bootstrapping", "gevpb"};
  app.require_subcommand(1);

  CommonOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo MAD study for a synthetic source distribution");
  add_common(simulate, sim_opts);

  CommonOptions an_opts;
  std::string an_input;
  std::string an_column = "0";
  bool an_no_header = false;
  auto* analyze = app.add_subcommand("analyze", "Grouped-permutation quartile summary of one observed series");
  add_common(analyze, an_opts);
  analyze->add_option("--input", an_input, "CSV file holding the series")->required();
  analyze->add_option("--column", an_column, "Column name or zero-based index");
  analyze->add_flag("--no-header", an_no_header, "The CSV has no header line");

  FitOptions fit_opts;
  auto* fit = app.add_subcommand("fit", "Single plain (--B 0) or permutation-bootstrap fit of one series");
  fit->add_option("--input", fit_opts.input, "CSV file holding the series")->required();
  fit->add_option("--column", fit_opts.column, "Column name or zero-based index");
  fit->add_flag("--no-header", fit_opts.no_header, "The CSV has no header line");
  fit->add_option("--block", fit_opts.block, "Block size s")->check(CLI::PositiveNumber);
  fit->add_option("--r", fit_opts.r, "Order statistics per block")->check(CLI::PositiveNumber);
  fit->add_option("--B", fit_opts.permutations, "Permutations; 0 fits the series as given");
  fit->add_option("--p", fit_opts.p_values, "Quantile level(s) of the parent distribution")
      ->check(CLI::Range(0.0, 1.0));
  fit->add_option("--seed", fit_opts.seed, "Seed for the permutations");
  fit->add_option("--aggregation", fit_opts.aggregation, "median or mean")
      ->check(CLI::IsMember({"median", "mean"}));
  fit->add_option("--id", fit_opts.id, "Base name of the output files");
  fit->add_option("--out", fit_opts.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or ./results)");

  std::string show;
  auto* presets = app.add_subcommand("presets", "List presets, or print one as a configuration file");
  presets->add_option("--show", show, "Preset to print");

  std::uint64_t standin_seed = 1;
  std::string standin_path = "synthetic_tmax.csv";
  auto* standin = app.add_subcommand("standin", "Write a synthetic century of daily maximum temperatures");
  standin->add_option("--seed", standin_seed, "Generator seed");
  standin->add_option("--output", standin_path, "CSV file to write");

  std::vector<std::string> tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(tail.begin(), tail.end());
  try {
    app.parse(tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "gevpb: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (simulate->parsed()) return do_simulate(sim_opts, out);
    if (analyze->parsed()) return do_analyze(an_opts, an_input, an_column, an_no_header, out);
    if (fit->parsed()) {
      for (double p : fit_opts.p_values) {
        if (!(p > 0.0 && p < 1.0)) throw CLI::ValidationError("--p must lie strictly between 0 and 1");
      }
      return do_fit(fit_opts, out);
    }
    if (presets->parsed()) {
      if (show.empty()) {
        for (const std::string& name : preset_names()) out << name << "\n";
      } else {
        out << format_config(preset(show));
      }
      return 0;
    }
    if (standin->parsed()) {
      const RealSeries s = synthetic_temperature_series(standin_seed);
      std::ostringstream csv;
      csv << "day," << s.label << "\n";
      for (std::size_t d = 0; d < s.values.size(); ++d) csv << d + 1 << ',' << format_csv_number(s.values[d]) << "\n";
      write_file(standin_path, csv.str());
      out << "wrote " << s.values.size() << " values to " << standin_path << "\n";
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    err << "gevpb: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "gevpb: error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gevpb
