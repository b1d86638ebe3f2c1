// tileinspect: command-line front end.
//
//   tileinspect inspect  <test> <reference> [--mode plane|printed] [--emit-matrix out.txt]
//   tileinspect classify <matrix.txt> [--n1 N --n2 N]
//   tileinspect synth    --n 50 --mix 0.5 --seed 7 --out corpus/
//   tileinspect batch    --manifest corpus/manifest.tsv --report out.csv [--jobs N]
//   tileinspect report   <report.csv> [--format csv|json] [--output path]
//
// Exit status: 0 clean / success, 1 defective, 2 error.

#include "tileinspect/error.hpp"
#include "tileinspect/harness.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace ti = tileinspect;

namespace {

constexpr int kClean = 0;
constexpr int kDefective = 1;
constexpr int kError = 2;

/// Classifier options shared by inspect, classify and batch.
struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::optional<std::string>> values;
  std::vector<std::string> sets;

  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    static const std::pair<const char*, const char*> kFlags[] = {
        {"--tau", "tau"},
        {"--c-range", "c_range"},
        {"--e-range", "e_range"},
        {"--c-length", "c_length"},
        {"--blob-matx", "blob_matx"},
        {"--spot-matx", "spot_matx"},
        {"--median-window", "median_window"},
        {"--stretch-variant", "stretch_variant"},
        {"--stretch-m", "stretch.M"},
        {"--stretch-e", "stretch.E"},
        {"--detect-margin", "detect_margin"},
        {"--ref-dilate", "ref_dilate"},
    };
    for (const auto& [flag, key] : kFlags) {
      cmd.add_option(flag, values[key], std::string("override ") + key);
    }
    cmd.add_option("--set", sets, "override any config key, as key=value");
  }

  [[nodiscard]] ti::ClassifierConfig resolve() const {
    ti::ClassifierConfig cfg;
    if (!config_path.empty()) {
      cfg = ti::load_config(config_path, cfg);
    }
    for (const auto& [key, value] : values) {
      if (value) {
        cfg.set(key, *value);
      }
    }
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw ti::ConfigError("--set expects key=value, got '" + kv + "'");
      }
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
  }
};

std::optional<std::pair<ti::Index, ti::Index>> parse_trim(const std::string& s) {
  if (s.empty()) {
    return std::nullopt;
  }
  const auto x = s.find('x');
  try {
    std::size_t used_w = 0;
    std::size_t used_h = 0;
    const long w = std::stol(s.substr(0, x), &used_w);
    const long h = std::stol(s.substr(x + 1), &used_h);
    if (x == std::string::npos || used_w != x || used_h != s.size() - x - 1 || w < 1 || h < 1) {
      throw std::invalid_argument(s);
    }
    return std::make_pair(ti::Index{w}, ti::Index{h});
  } catch (const std::logic_error&) {
    throw ti::ParamError("--trim expects WxH, got '" + s + "'");
  }
}

void print_report(const ti::DefectReport& r) {
  std::cout << "n1: " << r.detection.n1 << "\n"
            << "n2: " << r.detection.n2 << "\n"
            << "verdict: " << (r.detection.defective ? "defective" : "no defect") << "\n";
  if (r.detection.defective) {
    for (const ti::DefectKind k : ti::kAllDefectKinds) {
      std::cout << "  " << std::left << std::setw(8) << ti::to_string(k)
                << (r.found(k) ? "Found" : "Not Found") << "\n";
    }
  }
  std::cout << "report: " << ti::to_string(r) << "\n";
}

void print_summary(const ti::BatchReport& r) {
  std::cout << std::setprecision(6) << "tiles: " << r.n_tiles << "\n"
            << "detection_efficiency: " << r.detection_efficiency << "\n"
            << "rates (" << ti::kRateMetric << "):\n";
  for (const ti::DefectKind k : ti::kAllDefectKinds) {
    std::cout << "  " << std::left << std::setw(8) << ti::to_string(k) << r.rate(k) << "\n";
  }
  std::cout << "total_time: " << r.total_time << " s\n";
  for (const ti::TileOutcome& t : r.tiles) {
    if (!t.ok) {
      std::cerr << "tile " << t.tile_id << " failed: " << t.error << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ceramic tile surface defect detection and classification"};
  app.require_subcommand(1);

  // inspect
  auto* inspect = app.add_subcommand("inspect", "Inspect one tile against a defect-free reference");
  std::string test_path;
  std::string ref_path;
  std::string mode_name = "plane";
  std::string emit_matrix;
  std::string trim_spec;
  ConfigFlags inspect_cfg;
  inspect->add_option("test,--test", test_path, "tile image (PNG or BMP)")->required();
  inspect->add_option("reference,--reference", ref_path, "reference image")->required();
  inspect->add_option("--mode", mode_name, "plane or printed")
      ->check(CLI::IsMember({"plane", "printed"}));
  inspect->add_option("--emit-matrix", emit_matrix, "write the label matrix as text");
  inspect->add_option("--trim", trim_spec, "centred crop WxH applied to both images");
  inspect_cfg.attach(*inspect);

  // classify
  auto* classify = app.add_subcommand("classify", "Run the six classifiers on a label-matrix file");
  std::string matrix_path;
  std::optional<ti::Index> n1;
  std::optional<ti::Index> n2;
  ConfigFlags classify_cfg;
  classify->add_option("matrix,--matrix", matrix_path, "label matrix text file")->required();
  auto* n1_opt = classify->add_option("--n1", n1, "test edge count (detection gate)");
  classify->add_option("--n2", n2, "reference edge count")->needs(n1_opt);
  n1_opt->needs(classify->get_option("--n2"));
  classify_cfg.attach(*classify);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic tile corpus");
  ti::CorpusOptions corpus;
  std::string kinds_csv;
  std::string modes_csv;
  synth->add_option("--n", corpus.n, "number of tiles")->required()->check(CLI::PositiveNumber);
  synth->add_option("--mix", corpus.mix, "fraction of defective tiles")->check(CLI::Range(0.0, 1.0));
  synth->add_option("--seed", corpus.seed, "corpus seed");
  synth->add_option("--out", corpus.out_dir, "output directory")->required();
  synth->add_option("--size", corpus.size, "tile side in pixels")->check(CLI::Range(64, 8192));
  synth->add_option("--kinds", kinds_csv, "defect kinds to cycle, comma separated");
  synth->add_option("--modes", modes_csv, "tile modes to alternate, comma separated");

  // batch
  auto* batch = app.add_subcommand("batch", "Evaluate the pipeline over a manifest");
  std::string manifest_path;
  std::string report_path;
  std::string batch_format = "csv";
  std::string batch_trim;
  ti::BatchOptions batch_options;
  ConfigFlags batch_cfg;
  batch->add_option("--manifest", manifest_path, "manifest.tsv")->required();
  batch->add_option("--report", report_path, "report output path");
  batch->add_option("--format", batch_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  batch->add_option("--jobs", batch_options.jobs, "worker threads")->check(CLI::PositiveNumber);
  batch->add_option("--trim", batch_trim, "centred crop WxH applied to every image");
  batch_cfg.attach(*batch);

  // report
  auto* report = app.add_subcommand("report", "Summarize or convert a CSV batch report");
  std::string report_input;
  std::string report_format;
  std::string report_output;
  report->add_option("input,--input", report_input, "CSV report written by batch")->required();
  report->add_option("--format", report_format, "re-emit as csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  report->add_option("--output", report_output, "write the re-emitted report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kClean : kError;
  }

  try {
    if (*inspect) {
      const ti::ClassifierConfig cfg = inspect_cfg.resolve();
      ti::RasterImage test = ti::load_image(test_path);
      ti::RasterImage ref = ti::load_image(ref_path);
      if (const auto t = parse_trim(trim_spec)) {
        test = ti::trim(test, t->first, t->second);
        ref = ti::trim(ref, t->first, t->second);
      }
      const ti::Inspection result = ti::inspect_tile(test, ref, ti::parse_tile_mode(mode_name), cfg);
      if (!emit_matrix.empty()) {
        ti::save_matrix(result.label, emit_matrix);
      }
      print_report(result.report);
      return result.report.detection.defective ? kDefective : kClean;
    }
    if (*classify) {
      const ti::ClassifierConfig cfg = classify_cfg.resolve();
      const ti::LabelMatrix label = ti::load_matrix(matrix_path);
      ti::DetectionResult detection;
      if (n1) {
        detection.n1 = *n1;
        detection.n2 = *n2;
        detection.defective = *n1 > *n2 + cfg.detect_margin;
      } else {
        detection.n1 = ((label == ti::label::kEdge) || (label == ti::label::kCrack)).count();
        detection.defective = true;
      }
      const ti::DefectReport r = ti::classify_all(label, detection, cfg);
      print_report(r);
      bool any = false;
      for (const ti::DefectKind k : ti::kAllDefectKinds) {
        any = any || r.found(k);
      }
      return any ? kDefective : kClean;
    }
    if (*synth) {
      if (!kinds_csv.empty()) {
        corpus.kinds = ti::parse_kinds(kinds_csv);
      }
      if (!modes_csv.empty()) {
        corpus.modes.clear();
        std::stringstream ss(modes_csv);
        for (std::string m; std::getline(ss, m, ',');) {
          corpus.modes.push_back(ti::parse_tile_mode(m));
        }
      }
      std::cout << ti::generate_corpus(corpus).string() << "\n";
      return kClean;
    }
    if (*batch) {
      const ti::ClassifierConfig cfg = batch_cfg.resolve();
      batch_options.trim = parse_trim(batch_trim);
      const ti::BatchReport r = ti::run_batch(manifest_path, cfg, batch_options);
      if (!report_path.empty()) {
        ti::write_report(r, report_path, ti::parse_report_format(batch_format));
      }
      print_summary(r);
      return kClean;
    }
    if (*report) {
      const ti::BatchReport r = ti::read_report_csv(report_input);
      if (report_format.empty()) {
        print_summary(r);
      } else {
        const auto fmt = ti::parse_report_format(report_format);
        if (report_output.empty()) {
          std::cout << (fmt == ti::ReportFormat::Csv ? ti::format_report_csv(r)
                                                     : ti::format_report_json(r));
        } else {
          ti::write_report(r, report_output, fmt);
        }
      }
      return kClean;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
