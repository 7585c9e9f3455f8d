#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "specrank/score_table.hpp"
#include "specrank/trajectory.hpp"

namespace specrank {

// Which score table column drives a ranking.
enum class RankMetric { psd_w, path_length, mean_jerk };

const char* to_string(RankMetric metric);
RankMetric parse_rank_metric(const std::string& name);

// Ids ordered best (lowest score) to worst. Ties keep dataset order.
std::vector<std::string> rank(const ScoreTable& table, RankMetric metric);

// Record of one quantile filter: which demos survived discarding the
// worst-scoring fraction rho.
struct CurationManifest {
  double rho = 0.0;
  RankMetric metric = RankMetric::psd_w;
  double threshold = 0.0;  // highest retained score
  std::vector<std::string> retained;   // rank order, best first
  std::vector<std::string> discarded;  // rank order
  std::string config_fingerprint;
};

// Throws ValidationError unless: rho in [0,1), retained/discarded disjoint
// with unique ids, and the discard count matches floor(rho * N).
void validate(const CurationManifest& manifest);

// Discards the floor(rho * N) worst-ranked demonstrations. The retained set
// is defined by count, not by re-applying the threshold, so boundary ties
// cannot drift. The product rho * N is snapped up by 1e-9 before the floor
// so decimal rho values behave as written (0.3 of 10 discards 3).
CurationManifest filter(const ScoreTable& table, RankMetric metric,
                        double rho);

// Writes the retained trajectories, in original dataset order, as JSONL.
void materialize(const Dataset& dataset, const CurationManifest& manifest,
                 const std::filesystem::path& out_path);

// Shared floor(rho * n) rule used by filter and the evaluation summaries.
std::size_t discard_count(double rho, std::size_t n);

}  // namespace specrank
