#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "specrank/curation.hpp"
#include "specrank/score_table.hpp"

namespace specrank {

// Removal policy for a remaining-quality curve. Metric policies remove
// worst-scored first; oracle removes lowest-label first (the best any
// ranking can do); random_expectation is the analytic expectation of
// uniform removal, a constant line at the dataset mean label.
enum class CurvePolicy {
  psd_w,
  path_length,
  mean_jerk,
  oracle,
  random_expectation,
};

const char* to_string(CurvePolicy policy);

// Mean label of the surviving demos as a function of how many were removed.
// points[m] = (m, mean label of the remaining N - m), m = 0..N-1.
struct EvaluationCurve {
  std::string policy;
  std::vector<std::pair<std::size_t, double>> points;
};

// Requires every row labeled; throws listing unlabeled ids otherwise.
EvaluationCurve remaining_quality_curve(const ScoreTable& table,
                                        CurvePolicy policy);

// One sampled realization of uniform random removal (seeded permutation),
// for comparison against the analytic expectation.
EvaluationCurve sampled_random_curve(const ScoreTable& table,
                                     std::uint64_t seed);

// Curve value after removing floor(rho * N) demonstrations.
double summary_at(const ScoreTable& table, CurvePolicy policy, double rho);

// Spearman rank correlation with average ranks for ties. Throws when either
// input has zero rank variance.
double spearman(std::span<const double> xs, std::span<const double> ys);

// Spearman correlation between metric rank (ascending = better) and label
// (descending = better): +1 when the metric orders exactly as the labels do.
double rank_correlation(const ScoreTable& table, RankMetric metric);

// CSV export `policy,m,q_mean`, rows grouped per curve, m ascending.
void emit_curves(const std::vector<EvaluationCurve>& curves,
                 const std::filesystem::path& path);

}  // namespace specrank
