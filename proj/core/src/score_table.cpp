#include "specrank/score_table.hpp"

#include <cmath>
#include <unordered_map>

#include "specrank/errors.hpp"

namespace specrank {

void validate(const ScoreTable& table) {
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const ScoreRow& row = table.rows[i];
    auto [it, inserted] = seen.emplace(row.id, i);
    if (!inserted) {
      throw ValidationError("duplicate id '" + row.id + "' in score table "
                            "(rows " + std::to_string(it->second) + " and " +
                            std::to_string(i) + ")");
    }
    const double metrics[] = {row.total_power, row.path_length, row.mean_jerk};
    const char* names[] = {"W", "path_length", "mean_jerk"};
    for (int m = 0; m < 3; ++m) {
      if (!std::isfinite(metrics[m]) || metrics[m] < 0.0) {
        throw ValidationError("row '" + row.id + "': column '" +
                              names[m] + "' must be finite and >= 0");
      }
    }
    if (row.length < 2) {
      throw ValidationError("row '" + row.id + "': T must be >= 2");
    }
    if (row.label.has_value() && (*row.label < 1 || *row.label > 3)) {
      throw ValidationError("row '" + row.id + "': label must be 1, 2 or 3");
    }
  }
}

}  // namespace specrank
