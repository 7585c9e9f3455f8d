#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace specrank {

// Per-demonstration metrics. `total_power` is the spectral score W
// (lower is better); the kinematic columns are comparison baselines.
struct ScoreRow {
  std::string id;
  std::size_t length = 0;  // sample count T
  double total_power = 0.0;
  double path_length = 0.0;
  double mean_jerk = 0.0;
  std::optional<int> label;
};

// Rows are kept in dataset order; that order breaks ranking ties.
struct ScoreTable {
  std::vector<ScoreRow> rows;
  std::string config_fingerprint;

  std::size_t size() const { return rows.size(); }
};

// Throws ValidationError unless ids are unique and every metric value is
// finite and >= 0.
void validate(const ScoreTable& table);

}  // namespace specrank
