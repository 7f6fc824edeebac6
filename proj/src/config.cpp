#include "gevpb/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gevpb/errors.hpp"

namespace gevpb {

void ExperimentConfig::validate() const {
  if (r_values.empty()) throw DomainError("config: r_values must not be empty");
  if (block_size == 0) throw DomainError("config: block size must be positive");
  if (n == 0) throw DomainError("config: n must be positive");
  if (block_size > n) throw DomainError("config: block size exceeds series length");
  for (std::size_t r : r_values) {
    if (r == 0) throw DomainError("config: r values must be positive");
  }
  if (*std::max_element(r_values.begin(), r_values.end()) > block_size) {
    throw DomainError("config: largest r exceeds block size");
  }
  if (permutations == 0) throw DomainError("config: permutations (B) must be positive");
  if (repetitions == 0) throw DomainError("config: repetitions must be positive");
  if (p_values.empty()) throw DomainError("config: at least one quantile level is required");
  for (double p : p_values) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("config: quantile levels must lie in (0, 1)");
  }
  if (optimizer.max_iterations == 0) throw DomainError("config: max_iterations must be positive");
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw InputError("config: key '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw InputError("config: key '" + key + "' expects a non-negative integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InputError("config: key '" + key + "' expects true/false, got '" + v + "'");
}

// "1-10", "1,2,5" or a mix such as "1-3,7".
std::vector<std::size_t> to_r_list(const std::string& key, const std::string& v) {
  std::vector<std::size_t> out;
  for (const std::string& part : split(v, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(to_uint(key, part));
      continue;
    }
    const std::size_t lo = to_uint(key, trim(part.substr(0, dash)));
    const std::size_t hi = to_uint(key, trim(part.substr(dash + 1)));
    if (hi < lo) throw InputError("config: empty range '" + part + "' in key '" + key + "'");
    for (std::size_t r = lo; r <= hi; ++r) out.push_back(r);
  }
  return out;
}

double resolve_level(const std::string& token, std::size_t n) {
  const std::string prefix = "1-1/";
  if (token.rfind(prefix, 0) != 0) return to_double("p", token);
  std::string denom = token.substr(prefix.size());
  if (!denom.empty() && denom.back() == 'n') {
    denom.pop_back();
    const double factor = denom.empty() ? 1.0 : to_double("p", denom);
    return 1.0 - 1.0 / (factor * static_cast<double>(n));
  }
  return 1.0 - 1.0 / to_double("p", denom);
}

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  const auto take = [&kv](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("preset")) c = preset(*v);
  if (auto v = take("experiment_id")) c.experiment_id = *v;
  if (auto v = take("n")) c.n = to_uint("n", *v);
  if (auto v = take("block_size")) c.block_size = to_uint("block_size", *v);
  if (auto v = take("r")) c.r_values = to_r_list("r", *v);
  if (auto v = take("B")) c.permutations = to_uint("B", *v);
  if (auto v = take("repetitions")) c.repetitions = to_uint("repetitions", *v);
  if (auto v = take("use_permutations")) c.use_permutations = to_bool("use_permutations", *v);
  if (auto v = take("compare_plain")) c.compare_plain = to_bool("compare_plain", *v);
  if (auto v = take("seed")) c.master_seed = to_uint("seed", *v);
  if (auto v = take("threads")) c.threads = to_uint("threads", *v);
  if (auto v = take("max_iterations")) c.optimizer.max_iterations = to_uint("max_iterations", *v);
  if (auto v = take("param_tolerance")) c.optimizer.param_tolerance = to_double("param_tolerance", *v);
  if (auto v = take("likelihood_tolerance")) {
    c.optimizer.likelihood_tolerance = to_double("likelihood_tolerance", *v);
  }
  if (auto v = take("max_restarts")) c.optimizer.max_restarts = to_uint("max_restarts", *v);
  if (auto v = take("aggregation")) {
    if (*v == "median") {
      c.aggregation = Aggregation::Median;
    } else if (*v == "mean") {
      c.aggregation = Aggregation::Mean;
    } else {
      throw InputError("config: aggregation must be 'median' or 'mean'");
    }
  }

  if (auto v = take("dist")) {
    const auto num = [&](const char* key) {
      auto s = take(key);
      if (!s) throw InputError(std::string("config: dist '") + *v + "' requires key '" + key + "'");
      return to_double(key, *s);
    };
    if (*v == "pareto") {
      c.dist = SourceDistribution::pareto(num("kappa"));
    } else if (*v == "student_t") {
      c.dist = SourceDistribution::student_t(num("df"));
    } else if (*v == "inverse_gamma") {
      c.dist = SourceDistribution::inverse_gamma(num("shape"), num("scale"));
    } else if (*v == "real") {
      c.dist.reset();
    } else {
      throw InputError("config: unknown dist '" + *v + "'");
    }
  }

  if (auto v = take("p")) {
    c.p_values.clear();
    for (const std::string& token : split(*v, ',')) c.p_values.push_back(resolve_level(token, c.n));
  }

  if (!kv.empty()) throw InputError("config: unknown key '" + kv.begin()->first + "'");
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "experiment_id = " << c.experiment_id << "\n";
  if (!c.dist) {
    out << "dist = real\n";
  } else {
    switch (c.dist->family()) {
      case Family::Pareto: out << "dist = pareto\nkappa = " << format_number(c.dist->kappa()) << "\n"; break;
      case Family::StudentT:
        out << "dist = student_t\ndf = " << format_number(c.dist->degrees_of_freedom()) << "\n";
        break;
      case Family::InverseGamma:
        out << "dist = inverse_gamma\nshape = " << format_number(c.dist->shape())
            << "\nscale = " << format_number(c.dist->scale()) << "\n";
        break;
    }
  }
  out << "n = " << c.n << "\nblock_size = " << c.block_size << "\nr = ";
  for (std::size_t i = 0; i < c.r_values.size(); ++i) out << (i ? "," : "") << c.r_values[i];
  out << "\nB = " << c.permutations << "\nrepetitions = " << c.repetitions << "\np = ";
  for (std::size_t i = 0; i < c.p_values.size(); ++i) out << (i ? "," : "") << format_number(c.p_values[i]);
  out << "\nuse_permutations = " << (c.use_permutations ? "true" : "false")
      << "\ncompare_plain = " << (c.compare_plain ? "true" : "false")
      << "\naggregation = " << (c.aggregation == Aggregation::Median ? "median" : "mean")
      << "\nseed = " << c.master_seed << "\nthreads = " << c.threads
      << "\nmax_iterations = " << c.optimizer.max_iterations
      << "\nparam_tolerance = " << format_number(c.optimizer.param_tolerance)
      << "\nlikelihood_tolerance = " << format_number(c.optimizer.likelihood_tolerance)
      << "\nmax_restarts = " << c.optimizer.max_restarts << "\n";
  return out.str();
}

namespace {

constexpr std::size_t kDays = 365;

ExperimentConfig scaled(std::string id, std::optional<SourceDistribution> dist, bool paper_scale,
                        double tail_factor = 1.0) {
  ExperimentConfig c;
  c.experiment_id = std::move(id);
  c.dist = std::move(dist);
  c.n = kDays * (paper_scale ? 100 : 20);
  c.block_size = kDays;
  c.r_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  c.permutations = paper_scale ? 50 : 10;
  c.repetitions = paper_scale ? 1000 : 50;
  c.p_values = {1.0 - 1.0 / (tail_factor * static_cast<double>(c.n))};
  c.compare_plain = true;
  return c;
}

using PresetFactory = std::function<ExperimentConfig()>;

const std::map<std::string, PresetFactory>& registry() {
  static const std::map<std::string, PresetFactory> presets = [] {
    std::map<std::string, PresetFactory> m;
    for (const bool paper : {false, true}) {
      const std::string scale = paper ? "paper-" : "desk-";
      for (const auto& [tag, kappa] : {std::pair{"02", 0.2}, std::pair{"05", 0.5}, std::pair{"08", 0.8}}) {
        const std::string id = scale + "pareto-" + tag;
        m[id] = [=] { return scaled(id, SourceDistribution::pareto(kappa), paper); };
      }
      const std::string q3n = scale + "pareto-02-q3n";
      m[q3n] = [=] { return scaled(q3n, SourceDistribution::pareto(0.2), paper, 3.0); };
      const std::string t = scale + "student-t";
      m[t] = [=] { return scaled(t, SourceDistribution::student_t(5.0), paper); };
      const std::string ig = scale + "inverse-gamma";
      m[ig] = [=] { return scaled(ig, SourceDistribution::inverse_gamma(5.0, 1.0), paper); };
      const std::string fc = scale + "fort-collins";
      m[fc] = [=] {
        ExperimentConfig c = scaled(fc, std::nullopt, paper);
        c.repetitions = paper ? 100 : 10;
        c.p_values = {1.0 - 1.0 / (365.0 * 100.0)};
        c.compare_plain = false;
        return c;
      };
    }
    return m;
  }();
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, factory] : registry()) names.push_back(name);
  return names;
}

ExperimentConfig preset(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw InputError("unknown preset '" + name + "'");
  return it->second();
}

}  // namespace gevpb
