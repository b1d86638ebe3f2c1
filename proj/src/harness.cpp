#include "tileinspect/harness.hpp"

#include "tileinspect/error.hpp"
#include "tileinspect/preprocess.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace tileinspect {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool contains(const std::vector<DefectKind>& kinds, DefectKind k) {
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

TileOutcome process_entry(const ManifestEntry& entry, const ClassifierConfig& cfg,
                          const BatchOptions& options) {
  TileOutcome out;
  out.tile_id = entry.tile_id;
  out.mode = entry.mode;
  out.gt_defective = entry.defective;
  out.gt_kinds = entry.kinds;
  const auto start = Clock::now();
  try {
    RasterImage test = load_image(entry.image_path);
    RasterImage ref = load_image(entry.reference_path);
    if (options.trim) {
      test = trim(test, options.trim->first, options.trim->second);
      ref = trim(ref, options.trim->first, options.trim->second);
    }
    out.report = inspect_tile(test, ref, entry.mode, cfg).report;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
    out.report = {};
  }
  out.seconds = seconds_since(start);
  return out;
}

std::string kinds_field(const std::vector<DefectKind>& kinds) {
  std::string s = format_kinds(kinds);
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t at = s.find(sep, pos);
    out.emplace_back(s.substr(pos, at - pos));
    if (at == std::string_view::npos) {
      return out;
    }
    pos = at + 1;
  }
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError("bad number '" + s + "'");
  }
  return v;
}

bool parse_flag(const std::string& s) {
  if (s == "1") {
    return true;
  }
  if (s == "0") {
    return false;
  }
  throw ParseError("bad 0/1 flag '" + s + "'");
}

}  // namespace

bool TileOutcome::kind_correct(DefectKind kind) const {
  return ok && report.found(kind) == contains(gt_kinds, kind);
}

std::vector<double> BatchReport::per_tile_times() const {
  std::vector<double> times;
  times.reserve(tiles.size());
  for (const TileOutcome& t : tiles) {
    times.push_back(t.seconds);
  }
  return times;
}

void summarize(BatchReport& report) {
  report.n_tiles = static_cast<Index>(report.tiles.size());
  report.per_class_rate.fill(0.0);
  report.detection_efficiency = 0.0;
  if (report.n_tiles == 0) {
    return;
  }
  const auto n = static_cast<double>(report.n_tiles);
  Index correct = 0;
  std::array<Index, kAllDefectKinds.size()> kind_correct{};
  for (const TileOutcome& t : report.tiles) {
    correct += t.detection_correct() ? 1 : 0;
    for (std::size_t k = 0; k < kAllDefectKinds.size(); ++k) {
      kind_correct[k] += t.kind_correct(kAllDefectKinds[k]) ? 1 : 0;
    }
  }
  report.detection_efficiency = static_cast<double>(correct) / n;
  for (std::size_t k = 0; k < kAllDefectKinds.size(); ++k) {
    report.per_class_rate[k] = static_cast<double>(kind_correct[k]) / n;
  }
}

Inspection inspect_tile(const RasterImage& test, const RasterImage& reference, TileMode mode,
                        const ClassifierConfig& cfg) {
  cfg.validate();
  Inspection out;
  out.test_bin = preprocess_pipeline(test, cfg);
  out.ref_bin = preprocess_pipeline(reference, cfg);
  const DetectionResult detection = detect_defect(out.test_bin, out.ref_bin, cfg.detect_margin);
  out.label = build_label_matrix(out.test_bin, mode, &out.ref_bin, cfg.ref_dilate);
  out.report = classify_all(out.label, detection, cfg);
  return out;
}

BatchReport run_batch(const std::filesystem::path& manifest, const ClassifierConfig& cfg,
                      const BatchOptions& options) {
  std::vector<ManifestEntry> entries;
  try {
    entries = read_manifest(manifest);
  } catch (const FileNotFound& e) {
    throw ManifestError(e.what());
  }
  return run_batch(entries, cfg, options);
}

BatchReport run_batch(const std::vector<ManifestEntry>& entries, const ClassifierConfig& cfg,
                      const BatchOptions& options) {
  if (options.jobs < 1) {
    throw ParamError("jobs must be >= 1");
  }
  cfg.validate();
  BatchReport report;
  report.config_echo = cfg;
  report.tiles.resize(entries.size());
  const auto start = Clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      report.tiles[i] = process_entry(entries[i], cfg, options);
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(options.jobs), entries.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  report.total_time = seconds_since(start);
  summarize(report);
  return report;
}

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") {
    return ReportFormat::Csv;
  }
  if (s == "json") {
    return ReportFormat::Json;
  }
  throw ParamError("unknown report format '" + std::string(s) + "'");
}

std::string format_report_csv(const BatchReport& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# n_tiles," << report.n_tiles << '\n'
     << "# detection_efficiency," << report.detection_efficiency << '\n'
     << "# rate_metric," << kRateMetric << '\n';
  for (const DefectKind k : kAllDefectKinds) {
    os << "# rate_" << to_string(k) << ',' << report.rate(k) << '\n';
  }
  os << "# total_time," << report.total_time << '\n';
  std::istringstream cfg(format_config(report.config_echo));
  for (std::string line; std::getline(cfg, line);) {
    os << "# config," << line << '\n';
  }
  for (const TileOutcome& t : report.tiles) {
    if (!t.ok) {
      std::string msg = t.error;
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      os << "# error," << t.tile_id << ',' << msg << '\n';
    }
  }
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    os << (i ? "," : "") << kCsvColumns[i];
  }
  os << '\n';
  for (const TileOutcome& t : report.tiles) {
    const DetectionResult& d = t.report.detection;
    os << t.tile_id << ',' << to_string(t.mode) << ',' << t.gt_defective << ',' << d.defective << ','
       << d.n1 << ',' << d.n2 << ',' << kinds_field(t.gt_kinds);
    for (const DefectKind k : kAllDefectKinds) {
      os << ',' << t.report.found(k);
    }
    os << ',' << t.seconds << '\n';
  }
  return os.str();
}

std::string format_report_json(const BatchReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["n_tiles"] = report.n_tiles;
  j["detection_efficiency"] = report.detection_efficiency;
  j["rate_metric"] = kRateMetric;
  ordered_json rates = ordered_json::object();
  for (const DefectKind k : kAllDefectKinds) {
    rates[to_string(k)] = report.rate(k);
  }
  j["per_class_rate"] = rates;
  j["total_time"] = report.total_time;
  ordered_json cfg = ordered_json::object();
  std::istringstream lines(format_config(report.config_echo));
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    cfg[line.substr(0, eq)] = line.substr(eq + 3);
  }
  j["config"] = cfg;
  ordered_json tiles = ordered_json::array();
  for (const TileOutcome& t : report.tiles) {
    ordered_json row;
    row["tile_id"] = t.tile_id;
    row["mode"] = to_string(t.mode);
    row["gt_defective"] = t.gt_defective;
    row["det_defective"] = t.report.detection.defective;
    row["n1"] = t.report.detection.n1;
    row["n2"] = t.report.detection.n2;
    ordered_json kinds = ordered_json::array();
    for (const DefectKind k : t.gt_kinds) {
      kinds.push_back(to_string(k));
    }
    row["gt_kinds"] = kinds;
    for (const DefectKind k : kAllDefectKinds) {
      row[to_string(k)] = t.report.found(k);
    }
    row["seconds"] = t.seconds;
    if (!t.ok) {
      row["error"] = t.error;
    }
    tiles.push_back(row);
  }
  j["tiles"] = tiles;
  return j.dump(2) + "\n";
}

void write_report(const BatchReport& report, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  os << (format == ReportFormat::Csv ? format_report_csv(report) : format_report_json(report));
  if (!os) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

BatchReport read_report_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("cannot open report '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_report_csv(ss.str());
}

BatchReport parse_report_csv(std::string_view text) {
  BatchReport report;
  std::string config_text;
  std::vector<std::pair<std::string, std::string>> errors;
  bool header_seen = false;
  for (std::string line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line.rfind("# ", 0) == 0) {
      const std::string body = line.substr(2);
      const auto comma = body.find(',');
      if (comma == std::string::npos) {
        throw ParseError("bad summary line '" + line + "'");
      }
      const std::string key = body.substr(0, comma);
      const std::string value = body.substr(comma + 1);
      if (key == "n_tiles") {
        report.n_tiles = static_cast<Index>(parse_double(value));
      } else if (key == "detection_efficiency") {
        report.detection_efficiency = parse_double(value);
      } else if (key == "total_time") {
        report.total_time = parse_double(value);
      } else if (key == "config") {
        config_text += value + "\n";
      } else if (key == "error") {
        const auto c = value.find(',');
        errors.emplace_back(value.substr(0, c), c == std::string::npos ? "" : value.substr(c + 1));
      } else if (key.rfind("rate_", 0) == 0 && key != "rate_metric") {
        const DefectKind k = parse_defect_kind(key.substr(5));
        report.per_class_rate[static_cast<std::size_t>(k)] = parse_double(value);
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (!header_seen) {
      if (fields.size() != kCsvColumns.size() ||
          !std::equal(fields.begin(), fields.end(), kCsvColumns.begin())) {
        throw ParseError("unexpected report header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != kCsvColumns.size()) {
      throw ParseError("report row has " + std::to_string(fields.size()) + " fields: '" + line + "'");
    }
    TileOutcome t;
    t.tile_id = fields[0];
    t.mode = parse_tile_mode(fields[1]);
    t.gt_defective = parse_flag(fields[2]);
    t.report.detection.defective = parse_flag(fields[3]);
    t.report.detection.n1 = static_cast<Index>(parse_double(fields[4]));
    t.report.detection.n2 = static_cast<Index>(parse_double(fields[5]));
    std::string kinds = fields[6];
    std::replace(kinds.begin(), kinds.end(), ';', ',');
    t.gt_kinds = parse_kinds(kinds);
    t.report.pinhole.found = parse_flag(fields[7]);
    t.report.pinhole.p_count = t.report.pinhole.found ? 1 : 0;
    t.report.crack.found = parse_flag(fields[8]);
    t.report.blob = parse_flag(fields[9]);
    t.report.spot = parse_flag(fields[10]);
    t.report.edge.found = parse_flag(fields[11]);
    t.report.edge.e_count = t.report.edge.found ? 1 : 0;
    t.report.corner.found = parse_flag(fields[12]);
    t.seconds = parse_double(fields[13]);
    report.tiles.push_back(std::move(t));
  }
  if (!header_seen) {
    throw ParseError("report has no column header");
  }
  for (const auto& [id, msg] : errors) {
    for (TileOutcome& t : report.tiles) {
      if (t.tile_id == id) {
        t.ok = false;
        t.error = msg;
      }
    }
  }
  if (!config_text.empty()) {
    report.config_echo = parse_config(config_text);
  }
  return report;
}

}  // namespace tileinspect
