#include "specrank/dataset_io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>
#include <unordered_map>

#include <json.hpp>

#include "specrank/errors.hpp"

namespace specrank {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string location(const fs::path& path, std::size_t line) {
  return path.filename().string() + ":" + std::to_string(line);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void check_csv_safe(const std::string& id) {
  if (id.empty() || id.find_first_of(",\"\n\r") != std::string::npos) {
    throw ValidationError("id '" + id +
                          "' cannot be written to CSV (empty or contains a "
                          "comma, quote or newline)");
  }
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw ValidationError("cannot open '" + path.string() + "' for reading");
  }
  return file;
}

int parse_label(const std::string& text, const std::string& context) {
  int label = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), label);
  if (ec != std::errc{} || ptr != text.data() + text.size() || label < 1 ||
      label > 3) {
    throw ValidationError(context + ": label must be 1, 2 or 3, got '" +
                          text + "'");
  }
  return label;
}

Trajectory trajectory_from_json(const json& record, const std::string& where) {
  Trajectory traj;
  if (!record.is_object()) {
    throw ValidationError(where + ": record must be a JSON object");
  }
  if (!record.contains("id") || !record["id"].is_string()) {
    throw ValidationError(where + ": field 'id': expected a string");
  }
  traj.id = record["id"].get<std::string>();
  if (!record.contains("samples") || !record["samples"].is_array()) {
    throw ValidationError(where +
                          ": field 'samples': expected an array of rows");
  }
  for (const auto& row : record["samples"]) {
    if (!row.is_array()) {
      throw ValidationError(where +
                            ": field 'samples': every row must be an array "
                            "of numbers");
    }
    std::vector<double> sample;
    sample.reserve(row.size());
    for (const auto& value : row) {
      if (!value.is_number()) {
        throw ValidationError(where +
                              ": field 'samples': coordinates must be "
                              "numbers");
      }
      sample.push_back(value.get<double>());
    }
    traj.samples.push_back(std::move(sample));
  }
  if (record.contains("dt")) {
    if (!record["dt"].is_number()) {
      throw ValidationError(where + ": field 'dt': expected a number");
    }
    traj.dt = record["dt"].get<double>();
  }
  if (record.contains("label")) {
    if (!record["label"].is_number_integer()) {
      throw ValidationError(where + ": field 'label': expected 1, 2 or 3");
    }
    traj.label = record["label"].get<int>();
  }
  return traj;
}

json trajectory_to_json(const Trajectory& traj) {
  json record;
  record["id"] = traj.id;
  json samples = json::array();
  for (const auto& sample : traj.samples) {
    samples.push_back(sample);
  }
  record["samples"] = std::move(samples);
  if (traj.dt.has_value()) record["dt"] = *traj.dt;
  if (traj.label.has_value()) record["label"] = *traj.label;
  return record;
}

Dataset load_jsonl(const fs::path& path) {
  std::ifstream file = open_input(path);
  Dataset dataset;
  dataset.name = path.stem().string();

  std::unordered_map<std::string, std::size_t> first_line;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::string where = location(path, line_number);

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& err) {
      throw ValidationError(where + ": malformed JSON: " + err.what());
    }
    Trajectory traj = trajectory_from_json(record, where);
    try {
      validate(traj);
    } catch (const ValidationError& err) {
      throw ValidationError(where + ": " + err.what());
    }

    auto [it, inserted] = first_line.emplace(traj.id, line_number);
    if (!inserted) {
      throw ValidationError("duplicate trajectory id '" + traj.id + "' (" +
                            location(path, it->second) + " and " +
                            location(path, line_number) + ")");
    }
    dataset.trajectories.push_back(std::move(traj));
  }
  if (dataset.trajectories.empty()) {
    throw ValidationError("empty dataset: '" + path.string() +
                          "' holds no records");
  }
  return dataset;
}

std::vector<std::string> expected_coordinate_header(std::size_t dims) {
  if (dims == 3) return {"x", "y", "z"};
  std::vector<std::string> names;
  names.reserve(dims);
  for (std::size_t d = 0; d < dims; ++d) names.push_back("x" + std::to_string(d));
  return names;
}

Trajectory load_demo_csv(const fs::path& path, const std::string& id) {
  std::ifstream file = open_input(path);
  std::string line;
  if (!std::getline(file, line)) {
    throw ValidationError(path.filename().string() + ": missing header row");
  }
  const auto header = split_csv_line(strip_cr(line));
  const std::size_t dims = header.size();
  const auto expected = expected_coordinate_header(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    if (header[d] != expected[d]) {
      throw ValidationError(location(path, 1) +
                            ": unexpected coordinate header '" + header[d] +
                            "' (want '" + expected[d] + "')");
    }
  }

  Trajectory traj;
  traj.id = id;
  std::size_t line_number = 1;
  while (std::getline(file, line)) {
    ++line_number;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != dims) {
      throw ValidationError(location(path, line_number) + ": expected " +
                            std::to_string(dims) + " coordinates, got " +
                            std::to_string(fields.size()));
    }
    std::vector<double> sample(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      sample[d] = parse_double(fields[d], location(path, line_number) +
                                              ": column '" + expected[d] + "'");
    }
    traj.samples.push_back(std::move(sample));
  }
  return traj;
}

Dataset load_csv_dir(const fs::path& dir) {
  const fs::path index_path = dir / "index.csv";
  std::ifstream index = open_input(index_path);

  std::string line;
  if (!std::getline(index, line) ||
      strip_cr(line) != "id,file,label,dt") {
    throw ValidationError(index_path.string() +
                          ": first line must be the header 'id,file,label,dt'");
  }

  Dataset dataset;
  dataset.name = dir.filename().string();
  std::unordered_map<std::string, std::size_t> first_line;
  std::size_t line_number = 1;
  while (std::getline(index, line)) {
    ++line_number;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::string where = location(index_path, line_number);
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) {
      throw ValidationError(where + ": expected 4 columns 'id,file,label,dt'");
    }
    const std::string& id = fields[0];
    const std::string& file_name = fields[1];
    if (id.empty() || file_name.empty()) {
      throw ValidationError(where + ": id and file must be nonempty");
    }

    Trajectory traj = load_demo_csv(dir / file_name, id);
    if (!fields[2].empty()) {
      traj.label = parse_label(fields[2], where);
    }
    if (!fields[3].empty()) {
      traj.dt = parse_double(fields[3], where + ": column 'dt'");
    }
    try {
      validate(traj);
    } catch (const ValidationError& err) {
      throw ValidationError(where + ": " + err.what());
    }

    auto [it, inserted] = first_line.emplace(traj.id, line_number);
    if (!inserted) {
      throw ValidationError("duplicate trajectory id '" + traj.id + "' (" +
                            location(index_path, it->second) + " and " +
                            location(index_path, line_number) + ")");
    }
    dataset.trajectories.push_back(std::move(traj));
  }
  if (dataset.trajectories.empty()) {
    throw ValidationError("empty dataset: '" + index_path.string() +
                          "' lists no records");
  }
  return dataset;
}

}  // namespace

DatasetFormat parse_dataset_format(const std::string& name) {
  if (name == "jsonl") return DatasetFormat::jsonl;
  if (name == "csv-dir" || name == "csv_dir") return DatasetFormat::csv_dir;
  throw ValidationError("unknown dataset format '" + name +
                        "' (expected jsonl or csv-dir)");
}

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 17);
  if (ec != std::errc{}) throw IoError("failed to format a double");
  return std::string(buffer, ptr);
}

double parse_double(const std::string& text, const std::string& context) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError(context + ": not a number: '" + text + "'");
  }
  return value;
}

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path temp = path.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open '" + temp.string() + "' for writing");
    }
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(temp, ec);
      throw IoError("failed while writing '" + temp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(temp, ignore);
    throw IoError("cannot move '" + temp.string() + "' to '" + path.string() +
                  "': " + ec.message());
  }
}

Dataset load_dataset(const fs::path& path, DatasetFormat format) {
  Dataset dataset = format == DatasetFormat::jsonl ? load_jsonl(path)
                                                   : load_csv_dir(path);
  validate(dataset);
  return dataset;
}

void write_dataset_jsonl(const Dataset& dataset, const fs::path& path) {
  validate(dataset);
  std::string out;
  for (const auto& traj : dataset.trajectories) {
    out += trajectory_to_json(traj).dump();
    out += '\n';
  }
  atomic_write(path, out);
}

void write_dataset_csv_dir(const Dataset& dataset, const fs::path& dir) {
  validate(dataset);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory '" + dir.string() +
                  "': " + ec.message());
  }

  std::string index = "id,file,label,dt\n";
  for (const auto& traj : dataset.trajectories) {
    check_csv_safe(traj.id);
    const std::string file_name = traj.id + ".csv";
    index += traj.id + "," + file_name + ",";
    if (traj.label.has_value()) index += std::to_string(*traj.label);
    index += ",";
    if (traj.dt.has_value()) index += format_double(*traj.dt);
    index += "\n";

    const auto names = expected_coordinate_header(traj.dim());
    std::string body;
    for (std::size_t d = 0; d < names.size(); ++d) {
      body += (d == 0 ? "" : ",") + names[d];
    }
    body += "\n";
    for (const auto& sample : traj.samples) {
      for (std::size_t d = 0; d < sample.size(); ++d) {
        if (d > 0) body += ',';
        body += format_double(sample[d]);
      }
      body += '\n';
    }
    atomic_write(dir / file_name, body);
  }
  atomic_write(dir / "index.csv", index);
}

ScoreTable load_score_table(const fs::path& path) {
  std::ifstream file = open_input(path);
  ScoreTable table;
  std::string line;
  std::size_t line_number = 0;

  if (!std::getline(file, line)) {
    throw ValidationError(path.string() + ": empty score table file");
  }
  ++line_number;
  line = strip_cr(line);
  constexpr const char* kFingerprintPrefix = "# config_fingerprint=";
  if (line.starts_with(kFingerprintPrefix)) {
    table.config_fingerprint = line.substr(std::strlen(kFingerprintPrefix));
    if (!std::getline(file, line)) {
      throw ValidationError(path.string() + ": missing header row");
    }
    ++line_number;
    line = strip_cr(line);
  }
  if (line != "id,T,W,path_length,mean_jerk,label") {
    throw ValidationError(location(path, line_number) +
                          ": expected header 'id,T,W,path_length,mean_jerk,"
                          "label'");
  }

  while (std::getline(file, line)) {
    ++line_number;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::string where = location(path, line_number);
    const auto fields = split_csv_line(line);
    if (fields.size() != 6) {
      throw ValidationError(where + ": expected 6 columns, got " +
                            std::to_string(fields.size()));
    }
    ScoreRow row;
    row.id = fields[0];
    std::size_t length = 0;
    const auto [ptr, ec] = std::from_chars(
        fields[1].data(), fields[1].data() + fields[1].size(), length);
    if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size()) {
      throw ValidationError(where + ": column 'T': not an integer: '" +
                            fields[1] + "'");
    }
    row.length = length;
    row.total_power = parse_double(fields[2], where + ": column 'W'");
    row.path_length = parse_double(fields[3], where + ": column 'path_length'");
    row.mean_jerk = parse_double(fields[4], where + ": column 'mean_jerk'");
    if (!fields[5].empty()) row.label = parse_label(fields[5], where);
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) {
    throw ValidationError(path.string() + ": score table has no rows");
  }
  validate(table);
  return table;
}

void write_score_table(const ScoreTable& table, const fs::path& path) {
  validate(table);
  if (table.rows.empty()) {
    throw ValidationError("refusing to write an empty score table");
  }
  std::string out = "# config_fingerprint=" + table.config_fingerprint + "\n";
  out += "id,T,W,path_length,mean_jerk,label\n";
  for (const auto& row : table.rows) {
    check_csv_safe(row.id);
    out += row.id;
    out += ',' + std::to_string(row.length);
    out += ',' + format_double(row.total_power);
    out += ',' + format_double(row.path_length);
    out += ',' + format_double(row.mean_jerk);
    out += ',';
    if (row.label.has_value()) out += std::to_string(*row.label);
    out += '\n';
  }
  atomic_write(path, out);
}

CurationManifest load_manifest(const fs::path& path) {
  std::ifstream file = open_input(path);
  json doc;
  try {
    file >> doc;
  } catch (const json::parse_error& err) {
    throw ValidationError(path.string() + ": malformed JSON: " + err.what());
  }
  CurationManifest manifest;
  try {
    manifest.rho = doc.at("rho").get<double>();
    manifest.threshold = doc.at("threshold_W").get<double>();
    manifest.metric = parse_rank_metric(doc.at("metric").get<std::string>());
    manifest.config_fingerprint =
        doc.at("config_fingerprint").get<std::string>();
    manifest.retained = doc.at("retained").get<std::vector<std::string>>();
    manifest.discarded = doc.at("discarded").get<std::vector<std::string>>();
  } catch (const json::exception& err) {
    throw ValidationError(path.string() + ": bad manifest: " + err.what());
  }
  validate(manifest);
  return manifest;
}

void write_manifest(const CurationManifest& manifest, const fs::path& path) {
  validate(manifest);
  json doc;
  doc["rho"] = manifest.rho;
  doc["threshold_W"] = manifest.threshold;
  doc["metric"] = to_string(manifest.metric);
  doc["config_fingerprint"] = manifest.config_fingerprint;
  doc["retained"] = manifest.retained;
  doc["discarded"] = manifest.discarded;
  atomic_write(path, doc.dump(2) + "\n");
}

void write_spectrum_csv(const SpectralResult& result, const fs::path& path) {
  const std::size_t bins = result.bins();
  const std::size_t dims = result.per_dimension_power.size();
  if (bins == 0 || dims == 0) {
    throw ValidationError("refusing to write an empty spectrum");
  }
  std::string out = "k,omega,P_agg";
  if (dims == 3) {
    out += ",P_x,P_y,P_z";
  } else {
    for (std::size_t d = 0; d < dims; ++d) {
      out += ",P_x" + std::to_string(d);
    }
  }
  out += '\n';
  for (std::size_t k = 0; k < bins; ++k) {
    const double omega = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(bins);
    out += std::to_string(k);
    out += ',' + format_double(omega);
    out += ',' + format_double(result.aggregated_power[k]);
    for (std::size_t d = 0; d < dims; ++d) {
      out += ',' + format_double(result.per_dimension_power[d][k]);
    }
    out += '\n';
  }
  atomic_write(path, out);
}

}  // namespace specrank
