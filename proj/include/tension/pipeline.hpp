// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_PIPELINE_HPP
#define TENSION_PIPELINE_HPP

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tension/config.hpp"
#include "tension/eval.hpp"
#include "tension/fusion.hpp"
#include "tension/student_t.hpp"

namespace tension::pipeline {

/// One line of the manifest:
///   {"video_id": "...", "wav": "...", "srt": "...", "visual": "...", "fps": 25}
/// `srt` is optional. Relative paths resolve against the manifest directory.
struct VideoManifest {
  std::string video_id;
  std::filesystem::path wav_path;
  std::optional<std::filesystem::path> srt_path;
  std::filesystem::path visual_path;
  double fps = 0.0;
};

/// Throws Error(kParse) / Error(kSchema) naming the manifest line, and
/// Error(kData) for duplicate video ids.
std::vector<VideoManifest> parse_manifest(std::string_view jsonl,
                                          const std::filesystem::path& base_dir = {});

struct VideoSummary {
  std::size_t visual_frames = 0;
  std::size_t face_frames = 0;
  std::size_t prosody_frames = 0;
  std::size_t sentences = 0;
  double mean_field_size = 0.0;
  double mean_loudness_db = 0.0;
  double voiced_fraction = 0.0;
  int total_sentiment = 0;
  bool has_captions = false;
};

struct VideoReport {
  std::string video_id;
  bool ok = false;
  std::string error;  // set when !ok
  fusion::TensionBreakdown breakdown;
  fusion::TensionLevel level = fusion::TensionLevel::kLow;
  VideoSummary summary;
};

/// Steps 1-5 for one video. Failures are captured in the report.
VideoReport analyze_video(const VideoManifest& video, const RunConfig& config,
                          const sentiment::Ensemble& ensemble);

/// Analyses every video on a pool of `config.workers` OpenMP threads.
/// Output order follows the manifest.
std::vector<VideoReport> run_analyze(const std::vector<VideoManifest>& videos,
                                     const RunConfig& config);

/// A header record carrying the effective configuration and K, followed by
/// one record per video.
std::string reports_to_jsonl(const RunConfig& config, const std::vector<VideoReport>& reports);

nlohmann::json to_json(const VideoReport& report);

struct ReportFile {
  nlohmann::json run;  // header record
  std::vector<VideoReport> videos;
};

/// Throws Error(kParse) / Error(kSchema) naming the line.
ReportFile parse_reports_jsonl(std::string_view jsonl);

struct EvalOptions {
  bool field_size_baseline = false;
  bool sentiment_baseline = false;
  // Videos used to pick the field-size threshold; all evaluated videos when unset.
  std::optional<std::set<std::string>> calibration;
};

struct ApproachResult {
  std::string name;
  std::optional<double> accuracy_all;
  std::size_t correct_all = 0;
  std::optional<double> accuracy_concordance;
  std::size_t correct_concordance = 0;
  std::optional<double> threshold;  // field-size baseline only
};

struct PairedComparison {
  std::string first;
  std::string second;
  std::string subset;  // "all" | "concordance"
  std::size_t n = 0;
  stats::TTestResult test;
};

struct EvalReport {
  eval::AgreementStats agreement;
  std::size_t gold_videos = 0;
  std::size_t evaluated_all = 0;
  std::size_t evaluated_concordance = 0;
  std::vector<ApproachResult> approaches;
  std::vector<PairedComparison> comparisons;
  std::vector<std::string> warnings;
};

/// Accuracy of the fused method and the enabled baselines on the majority
/// and unanimous gold sets, annotator agreement, and paired t-tests between
/// every pair of approaches. Videos are evaluated only when every enabled
/// approach has a prediction for them; the rest are listed in warnings.
EvalReport run_evaluate(const ReportFile& reports,
                        const std::vector<eval::AnnotationRecord>& annotations,
                        const EvalOptions& options);

nlohmann::json to_json(const EvalReport& report);

}  // namespace tension::pipeline

#endif  // TENSION_PIPELINE_HPP
