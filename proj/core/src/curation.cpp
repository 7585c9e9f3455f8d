#include "specrank/curation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "specrank/dataset_io.hpp"
#include "specrank/errors.hpp"

namespace specrank {

namespace {

double metric_value(const ScoreRow& row, RankMetric metric) {
  switch (metric) {
    case RankMetric::psd_w: return row.total_power;
    case RankMetric::path_length: return row.path_length;
    case RankMetric::mean_jerk: return row.mean_jerk;
  }
  return row.total_power;
}

// Row indices best to worst; stable sort keeps dataset order on ties.
std::vector<std::size_t> rank_indices(const ScoreTable& table,
                                      RankMetric metric) {
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return metric_value(table.rows[a], metric) <
                            metric_value(table.rows[b], metric);
                   });
  return order;
}

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw ValidationError("rho must be in [0, 1), got " + format_double(rho));
  }
}

}  // namespace

const char* to_string(RankMetric metric) {
  switch (metric) {
    case RankMetric::psd_w: return "psd_w";
    case RankMetric::path_length: return "path_length";
    case RankMetric::mean_jerk: return "mean_jerk";
  }
  return "psd_w";
}

RankMetric parse_rank_metric(const std::string& name) {
  if (name == "psd_w" || name == "psd-w") return RankMetric::psd_w;
  if (name == "path_length" || name == "path-length") {
    return RankMetric::path_length;
  }
  if (name == "mean_jerk" || name == "mean-jerk") return RankMetric::mean_jerk;
  throw ValidationError("unknown ranking metric '" + name +
                        "' (expected psd-w, path-length or mean-jerk)");
}

std::size_t discard_count(double rho, std::size_t n) {
  check_rho(rho);
  // Snap up by 1e-9 so decimal rho behaves as written in exact arithmetic;
  // representation error of rho * n is below 1e-12 at these scales.
  return static_cast<std::size_t>(
      std::floor(rho * static_cast<double>(n) + 1e-9));
}

std::vector<std::string> rank(const ScoreTable& table, RankMetric metric) {
  validate(table);
  if (table.rows.empty()) throw ValidationError("score table is empty");
  std::vector<std::string> ids;
  ids.reserve(table.size());
  for (std::size_t i : rank_indices(table, metric)) {
    ids.push_back(table.rows[i].id);
  }
  return ids;
}

void validate(const CurationManifest& manifest) {
  check_rho(manifest.rho);
  if (!std::isfinite(manifest.threshold)) {
    throw ValidationError("manifest threshold must be finite");
  }
  const std::size_t total = manifest.retained.size() +
                            manifest.discarded.size();
  if (manifest.retained.empty()) {
    throw ValidationError("manifest must retain at least one demonstration");
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : manifest.retained) {
    if (!seen.insert(id).second) {
      throw ValidationError("manifest lists id '" + id + "' more than once");
    }
  }
  for (const auto& id : manifest.discarded) {
    if (!seen.insert(id).second) {
      throw ValidationError("manifest lists id '" + id + "' more than once");
    }
  }
  const std::size_t expected_discard = discard_count(manifest.rho, total);
  if (manifest.discarded.size() != expected_discard) {
    throw ValidationError(
        "manifest discard count " + std::to_string(manifest.discarded.size()) +
        " does not match floor(rho * N) = " + std::to_string(expected_discard));
  }
}

CurationManifest filter(const ScoreTable& table, RankMetric metric,
                        double rho) {
  check_rho(rho);
  validate(table);
  if (table.rows.empty()) throw ValidationError("score table is empty");

  const auto order = rank_indices(table, metric);
  const std::size_t n = order.size();
  const std::size_t discard = discard_count(rho, n);
  const std::size_t keep = n - discard;

  CurationManifest manifest;
  manifest.rho = rho;
  manifest.metric = metric;
  manifest.config_fingerprint = table.config_fingerprint;
  manifest.retained.reserve(keep);
  manifest.discarded.reserve(discard);
  for (std::size_t i = 0; i < keep; ++i) {
    manifest.retained.push_back(table.rows[order[i]].id);
  }
  for (std::size_t i = keep; i < n; ++i) {
    manifest.discarded.push_back(table.rows[order[i]].id);
  }
  manifest.threshold = metric_value(table.rows[order[keep - 1]], metric);
  return manifest;
}

void materialize(const Dataset& dataset, const CurationManifest& manifest,
                 const std::filesystem::path& out_path) {
  validate(dataset);
  validate(manifest);

  std::unordered_set<std::string> known;
  for (const auto& traj : dataset.trajectories) known.insert(traj.id);
  for (const auto& id : manifest.retained) {
    if (!known.count(id)) {
      throw ValidationError("manifest id '" + id +
                            "' is not in dataset '" + dataset.name + "'");
    }
  }
  for (const auto& id : manifest.discarded) {
    if (!known.count(id)) {
      throw ValidationError("manifest id '" + id +
                            "' is not in dataset '" + dataset.name + "'");
    }
  }

  std::unordered_set<std::string> retained(manifest.retained.begin(),
                                           manifest.retained.end());
  Dataset filtered;
  filtered.name = dataset.name;
  for (const auto& traj : dataset.trajectories) {
    if (retained.count(traj.id)) filtered.trajectories.push_back(traj);
  }
  write_dataset_jsonl(filtered, out_path);
}

}  // namespace specrank
