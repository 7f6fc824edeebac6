#include "gevpb/harness.hpp"

#include <sstream>

#include "gevpb/errors.hpp"
#include "gevpb/parallel.hpp"
#include "gevpb/samplers.hpp"
#include "gevpb/stats.hpp"

namespace gevpb {

std::string to_string(Metric m) { return m == Metric::Xi ? "xi" : "quantile"; }

const MadCell& MadReport::cell(std::size_t r, Metric metric, std::optional<double> p) const {
  for (const MadCell& c : cells) {
    if (c.r == r && c.metric == metric && (metric == Metric::Xi || c.p == p)) return c;
  }
  throw DomainError("MadReport: no cell for r = " + std::to_string(r) + ", metric " + to_string(metric));
}

const QuartileRow& QuartileSummary::row(std::size_t r, Metric metric, std::optional<double> p) const {
  for (const QuartileRow& q : rows) {
    if (q.r == r && q.metric == metric && (metric == Metric::Xi || q.p == p)) return q;
  }
  throw DomainError("QuartileSummary: no row for r = " + std::to_string(r) + ", metric " + to_string(metric));
}

namespace {

std::vector<double> present(const std::vector<std::optional<double>>& values) {
  std::vector<double> out;
  for (const auto& v : values) {
    if (v) out.push_back(*v);
  }
  return out;
}

void require_estimates(const std::vector<double>& values, const std::string& id, std::size_t r, Metric m) {
  if (values.empty()) {
    std::ostringstream msg;
    msg << id << ": no successful estimates for r = " << r << ", metric " << to_string(m);
    throw EstimationFailure(msg.str());
  }
}

MadCell make_cell(std::size_t r, std::optional<double> p, Metric metric, double truth,
                  const std::vector<std::optional<double>>& estimates, const std::string& id) {
  const std::vector<double> ok = present(estimates);
  require_estimates(ok, id, r, metric);
  MadCell c;
  c.r = r;
  c.p = p;
  c.metric = metric;
  c.truth = truth;
  c.mad = mad(ok, truth);
  c.effective_count = ok.size();
  c.replicates = estimates.size();
  c.flagged = static_cast<double>(ok.size()) < kMinEffectiveFraction * static_cast<double>(estimates.size());
  return c;
}

QuartileRow make_row(std::size_t r, std::optional<double> p, Metric metric,
                     const std::vector<std::optional<double>>& estimates, const std::string& id) {
  const std::vector<double> ok = present(estimates);
  require_estimates(ok, id, r, metric);
  return {r, p, metric, sample_quantile(ok, 0.25), median(ok), sample_quantile(ok, 0.75), ok.size(),
          estimates.size()};
}

}  // namespace

MadReport run_simulation(const ExperimentConfig& config, const Permuter& permuter) {
  config.validate();
  if (!config.dist) throw DomainError("run_simulation: configuration has no source distribution");
  const SourceDistribution& dist = *config.dist;
  const std::size_t reps = config.repetitions;
  const std::size_t np = config.p_values.size();

  MadReport report;
  report.experiment_id = config.experiment_id;
  report.method = config.use_permutations ? "pb" : "plain";
  report.seed = config.master_seed;
  report.p_values = config.p_values;
  for (std::size_t r : config.r_values) {
    ReplicateRecord rec;
    rec.r = r;
    rec.xi.resize(reps);
    rec.quantiles.assign(np, std::vector<std::optional<double>>(reps));
    rec.b_effective.assign(reps, 0);
    rec.function_evals.assign(reps, 0);
    report.replicates.push_back(std::move(rec));
  }

  PbSettings pb;
  pb.permutations = config.permutations;
  pb.aggregation = config.aggregation;
  pb.optimizer = config.optimizer;
  pb.threads = 1;

  const RandomStream root(config.master_seed);
  parallel_for(reps, config.threads, [&](std::size_t rep) {
    const RandomStream rep_stream = root.substream(rep);
    RandomStream data_stream = rep_stream.substream(0);
    const std::vector<double> series = sample(dist, config.n, data_stream);
    const RandomStream perm_stream = rep_stream.substream(1);

    for (std::size_t k = 0; k < config.r_values.size(); ++k) {
      ReplicateRecord& rec = report.replicates[k];
      const std::size_t r = config.r_values[k];
      if (config.use_permutations) {
        try {
          const PbEstimate est = pb_fit(series, config.block_size, r, config.p_values, perm_stream, pb, permuter);
          rec.xi[rep] = est.params_median.xi;
          for (std::size_t j = 0; j < np; ++j) rec.quantiles[j][rep] = est.quantile_medians[j];
          rec.b_effective[rep] = est.b_effective;
          for (const FitResult& f : est.per_permutation) rec.function_evals[rep] += f.function_evals;
        } catch (const EstimationFailure&) {
          rec.b_effective[rep] = 0;
        }
      } else {
        const PlainEstimate est = plain_fit(series, config.block_size, r, config.p_values, config.optimizer);
        rec.function_evals[rep] = est.fit.function_evals;
        if (est.fit.converged) {
          rec.xi[rep] = est.fit.params.xi;
          for (std::size_t j = 0; j < np; ++j) rec.quantiles[j][rep] = est.quantiles[j];
          rec.b_effective[rep] = 1;
        }
      }
    }
  });

  const double xi_truth = true_xi(dist);
  std::vector<double> q_truth;
  for (double p : config.p_values) q_truth.push_back(source_quantile(dist, p));
  for (const ReplicateRecord& rec : report.replicates) {
    report.cells.push_back(make_cell(rec.r, std::nullopt, Metric::Xi, xi_truth, rec.xi, config.experiment_id));
    for (std::size_t j = 0; j < np; ++j) {
      report.cells.push_back(make_cell(rec.r, config.p_values[j], Metric::Quantile, q_truth[j], rec.quantiles[j],
                                       config.experiment_id));
    }
  }
  return report;
}

QuartileSummary run_real_data(const ExperimentConfig& config, std::span<const double> series) {
  ExperimentConfig effective = config;
  effective.n = series.size();
  effective.validate();
  const std::size_t groups = config.repetitions;
  const std::size_t np = config.p_values.size();

  QuartileSummary summary;
  summary.experiment_id = config.experiment_id;
  summary.seed = config.master_seed;
  summary.p_values = config.p_values;
  for (std::size_t r : config.r_values) {
    GroupRecord rec;
    rec.r = r;
    rec.params.resize(groups);
    rec.quantiles.assign(np, std::vector<std::optional<double>>(groups));
    rec.b_effective.assign(groups, 0);
    summary.groups.push_back(std::move(rec));
  }

  PbSettings pb;
  pb.permutations = config.permutations;
  pb.aggregation = config.aggregation;
  pb.optimizer = config.optimizer;
  pb.threads = 1;

  const RandomStream root(config.master_seed);
  parallel_for(groups, config.threads, [&](std::size_t g) {
    const RandomStream group_stream = root.substream(g);
    for (std::size_t k = 0; k < config.r_values.size(); ++k) {
      GroupRecord& rec = summary.groups[k];
      try {
        const PbEstimate est = pb_fit(series, config.block_size, config.r_values[k], config.p_values, group_stream, pb);
        rec.params[g] = est.params_median;
        for (std::size_t j = 0; j < np; ++j) rec.quantiles[j][g] = est.quantile_medians[j];
        rec.b_effective[g] = est.b_effective;
      } catch (const EstimationFailure&) {
        rec.b_effective[g] = 0;
      }
    }
  });

  for (const GroupRecord& rec : summary.groups) {
    std::vector<std::optional<double>> xi(groups);
    for (std::size_t g = 0; g < groups; ++g) {
      if (rec.params[g]) xi[g] = rec.params[g]->xi;
    }
    summary.rows.push_back(make_row(rec.r, std::nullopt, Metric::Xi, xi, config.experiment_id));
    for (std::size_t j = 0; j < np; ++j) {
      summary.rows.push_back(
          make_row(rec.r, config.p_values[j], Metric::Quantile, rec.quantiles[j], config.experiment_id));
    }
  }
  return summary;
}

}  // namespace gevpb
