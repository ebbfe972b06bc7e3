// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_EVAL_HPP
#define TENSION_EVAL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tension/fusion.hpp"

namespace tension::eval {

using fusion::TensionLevel;

struct AnnotationRecord {
  std::string video_id;
  std::string annotator_id;
  TensionLevel label = TensionLevel::kLow;
};

struct GoldLabel {
  std::string video_id;
  TensionLevel label = TensionLevel::kLow;
  int votes = 0;  // votes for `label`
  int total = 0;

  double agreement() const { return total > 0 ? static_cast<double>(votes) / total : 0.0; }
  bool unanimous() const { return votes == total; }
};

/// `video_id,annotator_id,label` with a header row and labels low|high.
/// Throws Error(kParse) naming the offending line.
std::vector<AnnotationRecord> parse_annotations_csv(std::string_view document);

/// Records grouped per video, in video_id order. Throws Error(kData) for a
/// repeated (video, annotator) pair or videos with differing annotator counts.
std::map<std::string, std::vector<AnnotationRecord>> group_by_video(
    std::span<const AnnotationRecord> records);

/// Strict-majority label for one video's records; nullopt on a tie.
/// Throws Error(kData) on a duplicate annotator or mixed video ids and
/// Error(kContract) when `records` is empty.
std::optional<GoldLabel> majority_label(std::span<const AnnotationRecord> records);

struct AgreementStats {
  std::size_t videos = 0;
  std::size_t unanimous = 0;       // agreement 1.0
  std::size_t three_quarters = 0;  // agreement exactly 0.75
  std::size_t lower = 0;           // strict majority below 0.75 (other than 0.75)
  std::size_t ties = 0;            // no strict majority

  double full_agreement_rate() const { return rate(unanimous); }
  double rate_at_three_quarters() const { return rate(three_quarters); }

 private:
  double rate(std::size_t n) const {
    return videos > 0 ? static_cast<double>(n) / static_cast<double>(videos) : 0.0;
  }
};

AgreementStats agreement_stats(std::span<const AnnotationRecord> records);

/// Majority labels for all videos that have one, in video_id order.
std::vector<GoldLabel> gold_labels(std::span<const AnnotationRecord> records);

/// Only the unanimously labelled rows.
std::vector<GoldLabel> concordance_subset(std::span<const GoldLabel> gold);

using Predictions = std::map<std::string, TensionLevel>;

/// Fraction of gold videos predicted correctly. Throws Error(kEvaluation)
/// when a gold video has no prediction or `gold` is empty.
double accuracy(const Predictions& predictions, std::span<const GoldLabel> gold);

/// 1.0 / 0.0 per gold row, in gold order.
std::vector<double> correctness(const Predictions& predictions, std::span<const GoldLabel> gold);

/// mean field size >= threshold -> High, else Low.
Predictions baseline_field_size(const std::map<std::string, double>& mean_field_size,
                                double threshold);

struct ThresholdSweep {
  double threshold = 0.0;
  double accuracy = 0.0;
};

/// Exhaustive search over every distinct split of the calibration videos'
/// mean field sizes. Candidates are midpoints between consecutive values,
/// half the smallest value and just above the largest; the smallest
/// threshold among equally accurate ones wins.
ThresholdSweep sweep_field_size_threshold(const std::map<std::string, double>& mean_field_size,
                                          std::span<const GoldLabel> calibration);

/// total sentiment < 0 -> High, else Low.
Predictions baseline_sentiment(const std::map<std::string, int>& total_sentiment);

}  // namespace tension::eval

#endif  // TENSION_EVAL_HPP
