#include "specrank/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "specrank/dataset_io.hpp"
#include "specrank/errors.hpp"
#include "specrank/rng.hpp"

namespace specrank {

namespace {

std::vector<double> require_labels(const ScoreTable& table) {
  std::string missing;
  std::vector<double> labels;
  labels.reserve(table.size());
  for (const auto& row : table.rows) {
    if (!row.label.has_value()) {
      missing += missing.empty() ? "" : ", ";
      missing += "'" + row.id + "'";
    } else {
      labels.push_back(static_cast<double>(*row.label));
    }
  }
  if (!missing.empty()) {
    throw ValidationError("rows missing labels: " + missing);
  }
  if (labels.empty()) throw ValidationError("score table is empty");
  return labels;
}

// Indices in the order demos get removed (first element removed first).
std::vector<std::size_t> removal_order(const ScoreTable& table,
                                       CurvePolicy policy) {
  const std::size_t n = table.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  switch (policy) {
    case CurvePolicy::psd_w:
    case CurvePolicy::path_length:
    case CurvePolicy::mean_jerk: {
      const RankMetric metric =
          policy == CurvePolicy::psd_w
              ? RankMetric::psd_w
              : (policy == CurvePolicy::path_length ? RankMetric::path_length
                                                    : RankMetric::mean_jerk);
      auto value = [&](std::size_t i) {
        switch (metric) {
          case RankMetric::psd_w: return table.rows[i].total_power;
          case RankMetric::path_length: return table.rows[i].path_length;
          case RankMetric::mean_jerk: return table.rows[i].mean_jerk;
        }
        return table.rows[i].total_power;
      };
      // Worst first: reverse of the best-to-worst ranking.
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return value(a) < value(b);
                       });
      std::reverse(order.begin(), order.end());
      return order;
    }
    case CurvePolicy::oracle:
      // Lowest label first, ties by dataset order.
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return *table.rows[a].label < *table.rows[b].label;
                       });
      return order;
    case CurvePolicy::random_expectation:
      return order;  // unused
  }
  return order;
}

EvaluationCurve curve_from_removal(const std::vector<double>& labels,
                                   const std::vector<std::size_t>& order,
                                   std::string policy_name) {
  const std::size_t n = labels.size();
  EvaluationCurve curve;
  curve.policy = std::move(policy_name);
  curve.points.reserve(n);
  double label_sum = 0.0;
  for (double v : labels) label_sum += v;
  double remaining_sum = label_sum;
  for (std::size_t m = 0; m < n; ++m) {
    if (m > 0) remaining_sum -= labels[order[m - 1]];
    curve.points.emplace_back(m, remaining_sum / static_cast<double>(n - m));
  }
  return curve;
}

// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) /
                              2.0 +
                          1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

const char* to_string(CurvePolicy policy) {
  switch (policy) {
    case CurvePolicy::psd_w: return "psd_w";
    case CurvePolicy::path_length: return "path_length";
    case CurvePolicy::mean_jerk: return "mean_jerk";
    case CurvePolicy::oracle: return "oracle";
    case CurvePolicy::random_expectation: return "random_expectation";
  }
  return "psd_w";
}

EvaluationCurve remaining_quality_curve(const ScoreTable& table,
                                        CurvePolicy policy) {
  validate(table);
  const std::vector<double> labels = require_labels(table);
  const std::size_t n = labels.size();

  if (policy == CurvePolicy::random_expectation) {
    double sum = 0.0;
    for (double v : labels) sum += v;
    const double mean = sum / static_cast<double>(n);
    EvaluationCurve curve;
    curve.policy = to_string(policy);
    curve.points.reserve(n);
    for (std::size_t m = 0; m < n; ++m) curve.points.emplace_back(m, mean);
    return curve;
  }

  return curve_from_removal(labels, removal_order(table, policy),
                            to_string(policy));
}

EvaluationCurve sampled_random_curve(const ScoreTable& table,
                                     std::uint64_t seed) {
  validate(table);
  const std::vector<double> labels = require_labels(table);
  const std::size_t n = labels.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Random rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = rng.below(i + 1);
    std::swap(order[i], order[j]);
  }
  return curve_from_removal(labels, order, "random_sampled");
}

double summary_at(const ScoreTable& table, CurvePolicy policy, double rho) {
  const EvaluationCurve curve = remaining_quality_curve(table, policy);
  const std::size_t m = discard_count(rho, curve.points.size());
  return curve.points.at(m).second;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw ValidationError("correlation inputs differ in length");
  }
  if (xs.size() < 2) {
    throw ValidationError("correlation needs at least 2 observations");
  }
  const std::vector<double> rx = average_ranks(xs);
  const std::vector<double> ry = average_ranks(ys);
  const std::size_t n = rx.size();
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double cov = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) {
    throw ValidationError("correlation undefined: " +
                          std::string(var_x == 0.0 ? "first" : "second") +
                          " input is constant");
  }
  return cov / std::sqrt(var_x * var_y);
}

double rank_correlation(const ScoreTable& table, RankMetric metric) {
  validate(table);
  const std::vector<double> labels = require_labels(table);
  std::vector<double> negated(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) negated[i] = -labels[i];
  std::vector<double> scores(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    switch (metric) {
      case RankMetric::psd_w: scores[i] = table.rows[i].total_power; break;
      case RankMetric::path_length: scores[i] = table.rows[i].path_length; break;
      case RankMetric::mean_jerk: scores[i] = table.rows[i].mean_jerk; break;
    }
  }
  try {
    return spearman(scores, negated);
  } catch (const ValidationError& err) {
    const std::string what = err.what();
    if (what.find("second input is constant") != std::string::npos) {
      throw ValidationError("correlation undefined: labels are constant");
    }
    if (what.find("first input is constant") != std::string::npos) {
      throw ValidationError("correlation undefined: scores are constant");
    }
    throw;
  }
}

void emit_curves(const std::vector<EvaluationCurve>& curves,
                 const std::filesystem::path& path) {
  if (curves.empty()) throw ValidationError("no curves to emit");
  std::ostringstream out;
  out << "policy,m,q_mean\n";
  for (const auto& curve : curves) {
    for (const auto& [m, q] : curve.points) {
      out << curve.policy << ',' << m << ',' << format_double(q) << '\n';
    }
  }
  atomic_write(path, out.str());
}

}  // namespace specrank
