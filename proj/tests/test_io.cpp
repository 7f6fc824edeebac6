#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gevpb/config.hpp"
#include "gevpb/errors.hpp"
#include "gevpb/io.hpp"

using namespace gevpb;
namespace fs = std::filesystem;

namespace {

RealSeries parse(const std::string& text, const ColumnRef& col, bool header = true) {
  std::istringstream in(text);
  return parse_series(in, col, header, "mem.csv");
}

std::string error_of(const std::string& text, const ColumnRef& col) {
  try {
    parse(text, col);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("load_series parses a named column") {
  const RealSeries s = parse("date,tmax,tmin\n1,70,40\n2,72,41\n3,68,39\n", std::string("tmax"));
  CHECK(s.values == std::vector<double>{70.0, 72.0, 68.0});
  CHECK(s.label == "tmax");
  CHECK(parse("date,tmax\n1,70\n", std::size_t{1}).values == std::vector<double>{70.0});
  CHECK(parse("70\n71.5\n", std::size_t{0}, false).values == std::vector<double>{70.0, 71.5});
  CHECK(parse("\"a,b\",x\n\"1,2\",5\n", std::string("x")).values == std::vector<double>{5.0});
}

TEST_CASE("load_series diagnostics are distinct") {
  CHECK(error_of("tmax\n", std::string("tmax")).find("empty series") != std::string::npos);
  CHECK(error_of("a,b\n1,2\n", std::string("tmax")).find("missing column 'tmax'") != std::string::npos);
  CHECK(error_of("tmax\n70\nNA\n", std::string("tmax")).find("line 3") != std::string::npos);
  CHECK(error_of("tmax\n70\ninf\n", std::string("tmax")).find("cannot parse") != std::string::npos);
  CHECK_THROWS_WITH_AS(load_series("/nonexistent/fc.csv", std::string("tmax")), doctest::Contains("cannot open"),
                       InputError);
}

TEST_CASE("synthetic stand-in has the shape of a century of daily maxima") {
  const RealSeries s = synthetic_temperature_series(1);
  CHECK(s.values.size() == 36524);
  for (double v : s.values) {
    REQUIRE(std::isfinite(v));
    REQUIRE(v == std::round(v));
  }
  CHECK(synthetic_temperature_series(1).values == s.values);
}

TEST_CASE("a provided station file has at least a century of values") {
  const char* path = std::getenv("GEVPB_FORT_COLLINS_CSV");
  if (!path) {
    MESSAGE("GEVPB_FORT_COLLINS_CSV not set; station file check skipped");
    return;
  }
  const char* col = std::getenv("GEVPB_FORT_COLLINS_COLUMN");
  const RealSeries s = load_series(path, std::string(col ? col : "MxT"));
  CHECK(s.values.size() >= 36500);
  for (double v : s.values) CHECK(v == std::round(v));
}

TEST_CASE("CSV numbers use nine significant digits") {
  CHECK(format_csv_number(0.1234567891234) == "0.123456789");
  CHECK(format_csv_number(36500.0) == "36500");
  CHECK(format_csv_number(1.0 - 1.0 / 36500.0) == "0.999972603");
}

TEST_CASE("MadReport survives a JSON round trip") {
  MadReport rep;
  rep.experiment_id = "rt";
  rep.method = "pb";
  rep.seed = 99;
  rep.p_values = {0.99, 1.0 - 1.0 / 7300.0};
  rep.cells.push_back({2, std::nullopt, Metric::Xi, 0.2, 0.0512345678901234, 49, 50, false});
  rep.cells.push_back({2, 0.99, Metric::Quantile, 2.51188643150958, 0.3, 30, 50, true});
  rep.replicates.push_back({2, {0.21, std::nullopt}, {{1.0, 2.0}, {std::nullopt, 3.5}}, {10, 0}, {812, 0}});
  const MadReport back = mad_report_from_json(nlohmann::json::parse(to_json(rep).dump()));
  CHECK(back == rep);
}

TEST_CASE("MAD CSV schema") {
  MadReport rep;
  rep.experiment_id = "e";
  rep.method = "plain";
  rep.seed = 5;
  rep.cells.push_back({1, std::nullopt, Metric::Xi, 0.2, 0.1, 50, 50, false});
  rep.cells.push_back({1, 0.999, Metric::Quantile, 3.0, 0.5, 30, 50, true});
  std::ostringstream out;
  write_mad_csv(out, {rep});
  CHECK(out.str() ==
        "experiment_id,method,r,p,metric,mad,truth,effective_count,replicates,flagged,seed\n"
        "e,plain,1,,xi,0.1,0.2,50,50,0,5\n"
        "e,plain,1,0.999,quantile,0.5,3,30,50,1,5\n");
}

TEST_CASE("config text format") {
  const ExperimentConfig c = parse_config(
      "# figure 1(b)\n"
      "experiment_id = demo\n"
      "dist = pareto\nkappa = 0.5\n"
      "n = 7300\nblock_size = 365\nr = 1-3,5\nB = 4\nrepetitions = 6\n"
      "p = 1-1/n, 1-1/3n, 0.99, 1-1/36500\n"
      "seed = 12\naggregation = mean\n");
  CHECK(c.experiment_id == "demo");
  CHECK(c.dist == SourceDistribution::pareto(0.5));
  CHECK(c.r_values == std::vector<std::size_t>{1, 2, 3, 5});
  CHECK(c.permutations == 4);
  CHECK(c.p_values[0] == 1.0 - 1.0 / 7300.0);
  CHECK(c.p_values[1] == 1.0 - 1.0 / (3.0 * 7300.0));
  CHECK(c.p_values[2] == 0.99);
  CHECK(c.p_values[3] == 1.0 - 1.0 / 36500.0);
  CHECK(c.aggregation == Aggregation::Mean);
  CHECK(c.master_seed == 12);

  const ExperimentConfig again = parse_config(format_config(c));
  CHECK(again.p_values == c.p_values);
  CHECK(again.r_values == c.r_values);
  CHECK(again.dist == c.dist);
  CHECK(again.optimizer == c.optimizer);

  CHECK_THROWS_AS(parse_config("bogus = 1\n"), InputError);
  CHECK_THROWS_AS(parse_config("n = ten\n"), InputError);
  CHECK_THROWS_AS(parse_config("dist = pareto\n"), InputError);
  CHECK_THROWS_AS(parse_config("r = 400\n"), DomainError);
  CHECK_THROWS_AS(parse_config("just words\n"), InputError);
}

TEST_CASE("presets are valid and match the study scales") {
  for (const std::string& name : preset_names()) CHECK_NOTHROW(preset(name).validate());
  const ExperimentConfig desk = preset("desk-pareto-02");
  CHECK(desk.n == 365 * 20);
  CHECK(desk.repetitions == 50);
  CHECK(desk.permutations == 10);
  const ExperimentConfig paper = preset("paper-pareto-05");
  CHECK(paper.n == 365 * 100);
  CHECK(paper.repetitions == 1000);
  CHECK(paper.permutations == 50);
  CHECK(paper.p_values[0] == 1.0 - 1.0 / 36500.0);
  CHECK(preset("paper-pareto-02-q3n").p_values[0] == 1.0 - 1.0 / (3.0 * 36500.0));
  CHECK(preset("paper-fort-collins").repetitions == 100);
  CHECK_FALSE(preset("desk-fort-collins").is_simulation());
  CHECK(parse_config("preset = desk-student-t\nseed = 3\n").dist == SourceDistribution::student_t(5));
  CHECK_THROWS_AS(preset("nope"), InputError);
}
