#include "gevpb/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gevpb/errors.hpp"

namespace gevpb {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex {
  std::vector<double> x;
  double f;
};

class Evaluator {
 public:
  explicit Evaluator(const Objective& objective) : objective_(objective) {}

  double operator()(std::span<const double> x) {
    ++count_;
    const double f = objective_(x);
    return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
  }

  std::size_t count() const noexcept { return count_; }

 private:
  const Objective& objective_;
  std::size_t count_ = 0;
};

// x = centroid + coef * (centroid - worst)
std::vector<double> along(const std::vector<double>& centroid, const std::vector<double>& worst, double coef) {
  std::vector<double> out(centroid.size());
  for (std::size_t j = 0; j < centroid.size(); ++j) out[j] = centroid[j] + coef * (centroid[j] - worst[j]);
  return out;
}

bool has_converged(const std::vector<Vertex>& v, const SimplexOptions& options) {
  const double spread = v.back().f - v.front().f;
  if (!(spread <= options.f_tolerance)) return false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v[i].x.size(); ++j) {
      if (!(std::abs(v[i].x[j] - v.front().x[j]) <= options.x_tolerance)) return false;
    }
  }
  return true;
}

}  // namespace

SimplexResult minimize_simplex(const Objective& objective, std::vector<std::vector<double>> simplex,
                               const SimplexOptions& options) {
  if (simplex.size() < 2) throw DomainError("minimize_simplex: need at least two vertices");
  const std::size_t dim = simplex.front().size();
  if (simplex.size() != dim + 1) throw DomainError("minimize_simplex: simplex must have dim + 1 vertices");

  Evaluator eval(objective);
  std::vector<Vertex> v;
  v.reserve(simplex.size());
  for (auto& x : simplex) {
    if (x.size() != dim) throw DomainError("minimize_simplex: ragged simplex");
    const double f = eval(x);
    v.push_back({std::move(x), f});
  }

  const auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  SimplexResult result;
  std::size_t iteration = 0;
  std::stable_sort(v.begin(), v.end(), by_value);

  while (!has_converged(v, options)) {
    if (iteration >= options.max_iterations) break;
    ++iteration;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += v[i].x[j];
    for (double& c : centroid) c /= static_cast<double>(dim);

    Vertex& worst = v.back();
    const double best_f = v.front().f;
    const double second_worst_f = v[dim - 1].f;

    std::vector<double> xr = along(centroid, worst.x, kReflect);
    const double fr = eval(xr);

    if (fr < best_f) {
      std::vector<double> xe = along(centroid, worst.x, kExpand);
      const double fe = eval(xe);
      if (fe < fr) {
        worst = {std::move(xe), fe};
      } else {
        worst = {std::move(xr), fr};
      }
    } else if (fr < second_worst_f) {
      worst = {std::move(xr), fr};
    } else {
      bool accepted = false;
      if (fr < worst.f) {
        std::vector<double> xc = along(centroid, worst.x, kReflect * kContract);
        const double fc = eval(xc);
        if (fc <= fr) {
          worst = {std::move(xc), fc};
          accepted = true;
        }
      } else {
        std::vector<double> xc = along(centroid, worst.x, -kContract);
        const double fc = eval(xc);
        if (fc < worst.f) {
          worst = {std::move(xc), fc};
          accepted = true;
        }
      }
      if (!accepted) {
        const std::vector<double>& best = v.front().x;
        for (std::size_t i = 1; i < v.size(); ++i) {
          for (std::size_t j = 0; j < dim; ++j) v[i].x[j] = best[j] + kShrink * (v[i].x[j] - best[j]);
          v[i].f = eval(v[i].x);
        }
      }
    }
    std::stable_sort(v.begin(), v.end(), by_value);
  }

  result.converged = has_converged(v, options);
  result.x = v.front().x;
  result.f = v.front().f;
  result.iterations = iteration;
  result.evaluations = eval.count();
  return result;
}

}  // namespace gevpb
