#pragma once

#include <filesystem>
#include <string>

#include "specrank/curation.hpp"
#include "specrank/score_table.hpp"
#include "specrank/spectral.hpp"
#include "specrank/trajectory.hpp"

namespace specrank {

// On-disk demonstration formats.
//
// jsonl   - one record per line:
//           {"id": "...", "samples": [[x,y,z], ...], "dt": 0.05, "label": 3}
//           dt and label optional. UTF-8, LF line endings.
// csv_dir - a directory holding index.csv (columns id,file,label,dt; label
//           and dt may be blank) plus one CSV per demo with header x,y,z
//           (x0..x{d-1} for d != 3), one row per timestep.
enum class DatasetFormat { jsonl, csv_dir };

DatasetFormat parse_dataset_format(const std::string& name);

// Loaders preserve file order exactly; errors name the file, the record,
// and the violated field. All writers are atomic: content goes to a
// temporary file that is renamed into place, so outputs are never partial.

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format);

void write_dataset_jsonl(const Dataset& dataset,
                         const std::filesystem::path& path);
void write_dataset_csv_dir(const Dataset& dataset,
                           const std::filesystem::path& dir);

// Score table CSV: a `# config_fingerprint=<hex>` comment line, then the
// header `id,T,W,path_length,mean_jerk,label`, then one row per demo in
// dataset order. Floats carry 17 significant digits so values round-trip
// bit-exactly.
ScoreTable load_score_table(const std::filesystem::path& path);
void write_score_table(const ScoreTable& table,
                       const std::filesystem::path& path);

// Manifest JSON object with keys rho, threshold_W, metric,
// config_fingerprint, retained, discarded. Both directions validate the
// manifest invariants.
CurationManifest load_manifest(const std::filesystem::path& path);
void write_manifest(const CurationManifest& manifest,
                    const std::filesystem::path& path);

// Per-trajectory spectrum export for plotting: header
// `k,omega,P_agg,P_x,P_y,P_z` (generic P_x0.. column names for d != 3),
// one row per bin, k ascending, omega = 2*pi*k/T.
void write_spectrum_csv(const SpectralResult& result,
                        const std::filesystem::path& path);

// Shortest decimal form at 17 significant digits; round-trips any double.
std::string format_double(double value);

// Locale-independent strict parse of a full string.
double parse_double(const std::string& text, const std::string& context);

// Atomic file write shared by every writer (temp file + rename).
void atomic_write(const std::filesystem::path& path,
                  const std::string& content);

}  // namespace specrank
