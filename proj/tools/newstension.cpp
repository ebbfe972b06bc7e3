// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

// newstension: batch tension-level analysis of news videos.
//
//   newstension analyze --manifest m.jsonl --config c.json --out reports.jsonl
//   newstension evaluate --reports reports.jsonl --annotations a.csv
//                        [--baseline field-size] [--baseline sentiment] --out eval.json
//   newstension fixtures generate --out dir
//
// Exit codes: 0 success, 1 partial failure, 2 configuration error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tension/config.hpp"
#include "tension/error.hpp"
#include "tension/eval.hpp"
#include "tension/fixtures.hpp"
#include "tension/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tension::Error(tension::ErrorKind::kIo, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tension::Error(tension::ErrorKind::kIo, "cannot write " + path);
  out << text;
}

std::filesystem::path parent_of(const std::string& path) {
  return std::filesystem::path(path).parent_path();
}

int analyze(const std::string& manifest_path, const std::string& config_path,
            const std::string& out_path, int workers) {
  tension::RunConfig config;
  std::vector<tension::pipeline::VideoManifest> videos;
  try {
    config = tension::parse_run_config(read_text(config_path), parent_of(config_path));
    if (workers > 0) config.workers = workers;
    videos = tension::pipeline::parse_manifest(read_text(manifest_path), parent_of(manifest_path));
  } catch (const tension::Error& e) {
    std::cerr << "newstension: " << e.what() << "\n";
    return kExitConfig;
  }

  std::vector<tension::pipeline::VideoReport> reports;
  try {
    reports = tension::pipeline::run_analyze(videos, config);
  } catch (const tension::Error& e) {
    std::cerr << "newstension: " << e.what() << "\n";
    return e.kind() == tension::ErrorKind::kConfiguration ? kExitConfig : kExitPartial;
  }
  write_text(out_path, tension::pipeline::reports_to_jsonl(config, reports));

  int failed = 0;
  for (const auto& r : reports) {
    if (!r.ok) {
      ++failed;
      std::cerr << "newstension: " << r.video_id << " failed: " << r.error << "\n";
    }
  }
  std::cerr << "newstension: analysed " << reports.size() - failed << "/" << reports.size()
            << " videos\n";
  return failed > 0 ? kExitPartial : kExitOk;
}

int evaluate(const std::string& reports_path, const std::string& annotations_path,
             const std::vector<std::string>& baselines, const std::string& calibration_path,
             const std::string& out_path) {
  tension::pipeline::EvalOptions options;
  for (const auto& b : baselines) {
    if (b == "field-size") {
      options.field_size_baseline = true;
    } else if (b == "sentiment") {
      options.sentiment_baseline = true;
    } else {
      std::cerr << "newstension: unknown baseline '" << b << "'\n";
      return kExitConfig;
    }
  }
  if (!calibration_path.empty()) {
    std::set<std::string> ids;
    std::istringstream in(read_text(calibration_path));
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) ids.insert(line);
    }
    options.calibration = std::move(ids);
  }

  const auto reports = tension::pipeline::parse_reports_jsonl(read_text(reports_path));
  const auto annotations = tension::eval::parse_annotations_csv(read_text(annotations_path));
  const auto report = tension::pipeline::run_evaluate(reports, annotations, options);
  for (const auto& w : report.warnings) std::cerr << "newstension: warning: " << w << "\n";
  write_text(out_path, tension::pipeline::to_json(report).dump(2) + "\n");
  return kExitOk;
}

int generate(const std::string& out_dir) {
  const auto videos = tension::fixtures::generate_dataset(out_dir);
  std::cerr << "newstension: wrote " << videos.size() << " fixture videos to " << out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tension-level analysis of news videos from audio, captions and faces"};
  app.require_subcommand(1);

  std::string manifest, config, out;
  int workers = 0;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the per-video pipeline");
  analyze_cmd->add_option("--manifest", manifest, "Line-delimited video manifest")->required();
  analyze_cmd->add_option("--config", config, "Run configuration (JSON)")->required();
  analyze_cmd->add_option("--out", out, "Report file to write")->required();
  analyze_cmd->add_option("--workers", workers, "Worker threads (overrides the config)");

  std::string reports, annotations, calibration, eval_out;
  std::vector<std::string> baselines;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score reports against annotations");
  evaluate_cmd->add_option("--reports", reports, "Report file from analyze")->required();
  evaluate_cmd->add_option("--annotations", annotations, "video_id,annotator_id,label CSV")
      ->required();
  evaluate_cmd->add_option("--baseline", baselines, "field-size | sentiment (repeatable)");
  evaluate_cmd->add_option("--calibration", calibration,
                           "Video ids (one per line) for the field-size threshold sweep");
  evaluate_cmd->add_option("--out", eval_out, "Evaluation report to write")->required();

  std::string fixtures_out;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Synthetic datasets");
  fixtures_cmd->require_subcommand(1);
  auto* generate_cmd = fixtures_cmd->add_subcommand("generate", "Write the 20-video fixture set");
  generate_cmd->add_option("--out", fixtures_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*analyze_cmd) return analyze(manifest, config, out, workers);
    if (*evaluate_cmd) return evaluate(reports, annotations, baselines, calibration, eval_out);
    if (*generate_cmd) return generate(fixtures_out);
  } catch (const tension::Error& e) {
    std::cerr << "newstension: " << e.what() << "\n";
    return e.kind() == tension::ErrorKind::kConfiguration ? kExitConfig : kExitPartial;
  } catch (const std::exception& e) {
    std::cerr << "newstension: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitOk;
}
