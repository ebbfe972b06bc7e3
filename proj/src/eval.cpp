// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "tension/error.hpp"

namespace tension::eval {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

}  // namespace

std::vector<AnnotationRecord> parse_annotations_csv(std::string_view document) {
  std::vector<AnnotationRecord> records;
  std::size_t number = 0;
  bool header_seen = false;
  while (!document.empty()) {
    const auto nl = document.find('\n');
    const std::string_view line = trim(document.substr(0, nl));
    document.remove_prefix(nl == std::string_view::npos ? document.size() : nl + 1);
    ++number;
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 3 || fields[0] != "video_id" || fields[1] != "annotator_id" ||
          fields[2] != "label") {
        throw Error(ErrorKind::kParse, number, "expected header 'video_id,annotator_id,label'");
      }
      continue;
    }
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorKind::kParse, number, "expected three non-empty fields");
    }
    const auto label = fusion::parse_level(fields[2]);
    if (!label) {
      throw Error(ErrorKind::kParse, number, "label must be low or high, got '" +
                                                 std::string(fields[2]) + "'");
    }
    records.push_back({std::string(fields[0]), std::string(fields[1]), *label});
  }
  return records;
}

std::map<std::string, std::vector<AnnotationRecord>> group_by_video(
    std::span<const AnnotationRecord> records) {
  std::map<std::string, std::vector<AnnotationRecord>> groups;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : records) {
    if (!seen.emplace(r.video_id, r.annotator_id).second) {
      throw Error(ErrorKind::kData, "annotator '" + r.annotator_id + "' labels video '" +
                                        r.video_id + "' more than once");
    }
    groups[r.video_id].push_back(r);
  }
  if (!groups.empty()) {
    const std::size_t expected = groups.begin()->second.size();
    for (const auto& [video, rs] : groups) {
      if (rs.size() != expected) {
        throw Error(ErrorKind::kData, "video '" + video + "' has " + std::to_string(rs.size()) +
                                          " annotations, expected " + std::to_string(expected));
      }
    }
  }
  return groups;
}

std::optional<GoldLabel> majority_label(std::span<const AnnotationRecord> records) {
  if (records.empty()) throw Error(ErrorKind::kContract, "majority label of no records");
  std::set<std::string> annotators;
  int high = 0;
  for (const auto& r : records) {
    if (r.video_id != records.front().video_id) {
      throw Error(ErrorKind::kData, "records mix videos '" + records.front().video_id + "' and '" +
                                        r.video_id + "'");
    }
    if (!annotators.insert(r.annotator_id).second) {
      throw Error(ErrorKind::kData, "annotator '" + r.annotator_id + "' labels video '" +
                                        r.video_id + "' more than once");
    }
    if (r.label == TensionLevel::kHigh) ++high;
  }
  const int total = static_cast<int>(records.size());
  const int low = total - high;
  if (2 * high > total) return GoldLabel{records.front().video_id, TensionLevel::kHigh, high, total};
  if (2 * low > total) return GoldLabel{records.front().video_id, TensionLevel::kLow, low, total};
  return std::nullopt;
}

AgreementStats agreement_stats(std::span<const AnnotationRecord> records) {
  AgreementStats stats;
  for (const auto& [video, rs] : group_by_video(records)) {
    ++stats.videos;
    const auto gold = majority_label(rs);
    if (!gold) {
      ++stats.ties;
    } else if (gold->unanimous()) {
      ++stats.unanimous;
    } else if (4 * gold->votes == 3 * gold->total) {
      ++stats.three_quarters;
    } else {
      ++stats.lower;
    }
  }
  return stats;
}

std::vector<GoldLabel> gold_labels(std::span<const AnnotationRecord> records) {
  std::vector<GoldLabel> gold;
  for (const auto& [video, rs] : group_by_video(records)) {
    if (auto g = majority_label(rs)) gold.push_back(std::move(*g));
  }
  return gold;
}

std::vector<GoldLabel> concordance_subset(std::span<const GoldLabel> gold) {
  std::vector<GoldLabel> out;
  std::copy_if(gold.begin(), gold.end(), std::back_inserter(out),
               [](const GoldLabel& g) { return g.unanimous(); });
  return out;
}

std::vector<double> correctness(const Predictions& predictions, std::span<const GoldLabel> gold) {
  std::vector<double> out;
  out.reserve(gold.size());
  for (const auto& g : gold) {
    const auto it = predictions.find(g.video_id);
    if (it == predictions.end()) {
      throw Error(ErrorKind::kEvaluation, "no prediction for video '" + g.video_id + "'");
    }
    out.push_back(it->second == g.label ? 1.0 : 0.0);
  }
  return out;
}

double accuracy(const Predictions& predictions, std::span<const GoldLabel> gold) {
  if (gold.empty()) throw Error(ErrorKind::kEvaluation, "accuracy over an empty gold set");
  std::size_t hits = 0;
  for (double c : correctness(predictions, gold)) hits += c > 0.0 ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

Predictions baseline_field_size(const std::map<std::string, double>& mean_field_size,
                                double threshold) {
  Predictions out;
  for (const auto& [video, mean] : mean_field_size) {
    out[video] = mean >= threshold ? TensionLevel::kHigh : TensionLevel::kLow;
  }
  return out;
}

ThresholdSweep sweep_field_size_threshold(const std::map<std::string, double>& mean_field_size,
                                          std::span<const GoldLabel> calibration) {
  if (calibration.empty()) {
    throw Error(ErrorKind::kEvaluation, "field-size calibration split is empty");
  }
  std::vector<double> values;
  for (const auto& g : calibration) {
    const auto it = mean_field_size.find(g.video_id);
    if (it == mean_field_size.end()) {
      throw Error(ErrorKind::kEvaluation, "no field size for calibration video '" + g.video_id + "'");
    }
    values.push_back(it->second);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<double> candidates;
  if (values.front() > 0.0) candidates.push_back(0.5 * values.front());
  for (std::size_t i = 1; i < values.size(); ++i) {
    candidates.push_back(0.5 * (values[i - 1] + values[i]));
  }
  candidates.push_back(std::nextafter(values.back(), std::numeric_limits<double>::infinity()));

  ThresholdSweep best{candidates.front(), -1.0};
  for (double theta : candidates) {
    const double acc = accuracy(baseline_field_size(mean_field_size, theta), calibration);
    if (acc > best.accuracy) best = {theta, acc};
  }
  return best;
}

Predictions baseline_sentiment(const std::map<std::string, int>& total_sentiment) {
  Predictions out;
  for (const auto& [video, total] : total_sentiment) {
    out[video] = total < 0 ? TensionLevel::kHigh : TensionLevel::kLow;
  }
  return out;
}

}  // namespace tension::eval
