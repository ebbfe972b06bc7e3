// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "tension/caption.hpp"
#include "tension/error.hpp"
#include "tension/prosody.hpp"
#include "tension/visual.hpp"
#include "tension/wav.hpp"

namespace tension::pipeline {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    fn(line, number);
  }
}

json parse_line(std::string_view line, std::size_t number, const char* what) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, number, std::string(what) + ": " + e.what());
  }
}

json scores_json(const fusion::TensionScores& s) { return {{"low", s.low}, {"high", s.high}}; }

fusion::TensionScores scores_from(const json& j) {
  return {j.at("low").get<double>(), j.at("high").get<double>()};
}

std::string sentences_jsonl(const std::vector<sentiment::ScoredSentence>& scored) {
  std::string out;
  for (const auto& s : scored) {
    json scores = json::array();
    for (auto p : s.sentiment.scores) scores.push_back(sentiment::value(p));
    out += json{{"cue", s.sentence.source_cue},
                {"start", s.sentence.span.start},
                {"end", s.sentence.span.end},
                {"text", s.sentence.text},
                {"scores", scores},
                {"sum", s.sentiment.sum}}
               .dump();
    out += '\n';
  }
  return out;
}

std::optional<double> safe_accuracy(const eval::Predictions& p, std::span<const eval::GoldLabel> gold,
                                    std::size_t& correct) {
  if (gold.empty()) return std::nullopt;
  const auto hits = eval::correctness(p, gold);
  correct = static_cast<std::size_t>(std::count(hits.begin(), hits.end(), 1.0));
  return eval::accuracy(p, gold);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::vector<VideoManifest> parse_manifest(std::string_view jsonl,
                                          const std::filesystem::path& base_dir) {
  std::vector<VideoManifest> videos;
  std::set<std::string> ids;
  for_each_line(jsonl, [&](std::string_view line, std::size_t number) {
    const json j = parse_line(line, number, "manifest");
    auto field = [&](const char* key) -> const json& {
      if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorKind::kSchema, number, std::string("manifest record lacks '") + key + "'");
      }
      return j.at(key);
    };
    auto path_field = [&](const char* key) {
      const json& v = field(key);
      if (!v.is_string() || v.get<std::string>().empty()) {
        throw Error(ErrorKind::kSchema, number, std::string("'") + key + "' must be a path");
      }
      return base_dir / v.get<std::string>();
    };
    VideoManifest m;
    const json& id = field("video_id");
    if (!id.is_string() || id.get<std::string>().empty()) {
      throw Error(ErrorKind::kSchema, number, "'video_id' must be a non-empty string");
    }
    m.video_id = id.get<std::string>();
    m.wav_path = path_field("wav");
    m.visual_path = path_field("visual");
    if (j.contains("srt") && !j.at("srt").is_null()) m.srt_path = path_field("srt");
    const json& fps = field("fps");
    if (!fps.is_number() || !(fps.get<double>() > 0.0)) {
      throw Error(ErrorKind::kSchema, number, "'fps' must be a positive number");
    }
    m.fps = fps.get<double>();
    if (!ids.insert(m.video_id).second) {
      throw Error(ErrorKind::kData, number, "duplicate video_id '" + m.video_id + "'");
    }
    videos.push_back(std::move(m));
  });
  return videos;
}

VideoReport analyze_video(const VideoManifest& video, const RunConfig& config,
                          const sentiment::Ensemble& ensemble) {
  VideoReport report;
  report.video_id = video.video_id;
  try {
    // Step 3: prosody.
    const std::string wav_bytes = read_file(video.wav_path);
    const auto signal = prosody::decode_wav(std::span(
        reinterpret_cast<const std::uint8_t*>(wav_bytes.data()), wav_bytes.size()));

    fusion::VideoFeatures features;
    features.fps = video.fps;
    features.prosody = prosody::extract_prosody(signal, config.prosody);

    // Step 2: visual features from the recogniser output.
    const auto annotations = visual::load_visual_annotations(read_file(video.visual_path));
    features.visual = visual::visual_features(annotations.frames, annotations.frame_width,
                                              annotations.frame_height);

    // Step 4: captions -> sentences -> sentiment vectors.
    if (video.srt_path) {
      const auto cues = caption::parse_srt(read_file(*video.srt_path));
      features.sentiments =
          sentiment::score_captions(caption::segment_sentences(cues), ensemble);
    }

    // Step 5.
    report.breakdown = fusion::accumulate_detailed(features, config.fusion);
    report.level = fusion::classify(report.breakdown.total, config.fusion);

    auto& s = report.summary;
    s.visual_frames = features.visual.size();
    s.prosody_frames = features.prosody.size();
    s.sentences = features.sentiments.size();
    s.has_captions = video.srt_path.has_value();
    double field = 0.0;
    for (const auto& v : features.visual) {
      field += v.field_size;
      if (v.emotion != visual::EmotionLabel::kNonexistent) ++s.face_frames;
    }
    if (!features.visual.empty()) s.mean_field_size = field / features.visual.size();
    double loud = 0.0;
    std::size_t voiced = 0;
    for (const auto& f : features.prosody) {
      loud += f.loudness_db;
      if (f.voiced()) ++voiced;
    }
    if (!features.prosody.empty()) {
      s.mean_loudness_db = loud / features.prosody.size();
      s.voiced_fraction = static_cast<double>(voiced) / features.prosody.size();
    }
    for (const auto& scored : features.sentiments) s.total_sentiment += scored.sentiment.sum;

    if (config.write_intermediates) {
      write_file(video.wav_path.string() + ".prosody.csv", prosody::prosody_to_csv(features.prosody));
      if (video.srt_path) {
        write_file(video.srt_path->string() + ".sentiment.jsonl",
                   sentences_jsonl(features.sentiments));
      }
    }
    report.ok = true;
  } catch (const std::exception& e) {
    report.ok = false;
    report.error = e.what();
    report.breakdown = {};
    report.summary = {};
  }
  return report;
}

std::vector<VideoReport> run_analyze(const std::vector<VideoManifest>& videos,
                                     const RunConfig& config) {
  const sentiment::Ensemble ensemble = build_ensemble(config);
  std::vector<VideoReport> reports(videos.size());
  const int workers = config.workers > 0 ? config.workers : omp_get_max_threads();
  const auto count = static_cast<std::ptrdiff_t>(videos.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    reports[static_cast<std::size_t>(i)] =
        analyze_video(videos[static_cast<std::size_t>(i)], config, ensemble);
  }
  return reports;
}

json to_json(const VideoReport& report) {
  json j = {{"record", "video"}, {"video_id", report.video_id}};
  if (!report.ok) {
    j["status"] = "failed";
    j["error"] = report.error;
    return j;
  }
  const auto& s = report.summary;
  j["status"] = "ok";
  j["level"] = std::string(fusion::to_string(report.level));
  j["scores"] = scores_json(report.breakdown.total);
  j["subtotals"] = {{"visual", scores_json(report.breakdown.visual)},
                    {"sentiment", scores_json(report.breakdown.sentiment)}};
  j["summary"] = {{"visual_frames", s.visual_frames},
                  {"face_frames", s.face_frames},
                  {"prosody_frames", s.prosody_frames},
                  {"sentences", s.sentences},
                  {"mean_field_size", s.mean_field_size},
                  {"mean_loudness_db", s.mean_loudness_db},
                  {"voiced_fraction", s.voiced_fraction},
                  {"total_sentiment", s.total_sentiment},
                  {"has_captions", s.has_captions}};
  return j;
}

std::string reports_to_jsonl(const RunConfig& config, const std::vector<VideoReport>& reports) {
  json scorer_names = json::array();
  for (const auto& s : config.scorers) scorer_names.push_back(s.name);
  const json header = {{"record", "run"},
                       {"format", "newstension-report/1"},
                       {"config", to_json(config)},
                       {"ensemble_size", config.scorers.size()},
                       {"scorers", scorer_names},
                       {"videos", reports.size()},
                       {"failed", std::count_if(reports.begin(), reports.end(),
                                                [](const VideoReport& r) { return !r.ok; })}};
  std::string out = header.dump() + '\n';
  for (const auto& r : reports) out += to_json(r).dump() + '\n';
  return out;
}

ReportFile parse_reports_jsonl(std::string_view jsonl) {
  ReportFile file;
  for_each_line(jsonl, [&](std::string_view line, std::size_t number) {
    const json j = parse_line(line, number, "reports");
    try {
      const std::string kind = j.at("record").get<std::string>();
      if (kind == "run") {
        file.run = j;
        return;
      }
      if (kind != "video") throw Error(ErrorKind::kSchema, number, "unknown record '" + kind + "'");
      VideoReport r;
      r.video_id = j.at("video_id").get<std::string>();
      r.ok = j.at("status").get<std::string>() == "ok";
      if (!r.ok) {
        r.error = j.value("error", "");
      } else {
        const auto level = fusion::parse_level(j.at("level").get<std::string>());
        if (!level) throw Error(ErrorKind::kSchema, number, "bad level");
        r.level = *level;
        r.breakdown.total = scores_from(j.at("scores"));
        r.breakdown.visual = scores_from(j.at("subtotals").at("visual"));
        r.breakdown.sentiment = scores_from(j.at("subtotals").at("sentiment"));
        const json& s = j.at("summary");
        r.summary.visual_frames = s.at("visual_frames").get<std::size_t>();
        r.summary.face_frames = s.at("face_frames").get<std::size_t>();
        r.summary.prosody_frames = s.at("prosody_frames").get<std::size_t>();
        r.summary.sentences = s.at("sentences").get<std::size_t>();
        r.summary.mean_field_size = s.at("mean_field_size").get<double>();
        r.summary.mean_loudness_db = s.at("mean_loudness_db").get<double>();
        r.summary.voiced_fraction = s.at("voiced_fraction").get<double>();
        r.summary.total_sentiment = s.at("total_sentiment").get<int>();
        r.summary.has_captions = s.at("has_captions").get<bool>();
      }
      file.videos.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kSchema, number, std::string("report record: ") + e.what());
    }
  });
  return file;
}

EvalReport run_evaluate(const ReportFile& reports,
                        const std::vector<eval::AnnotationRecord>& annotations,
                        const EvalOptions& options) {
  EvalReport out;
  out.agreement = eval::agreement_stats(annotations);
  const auto gold = eval::gold_labels(annotations);
  out.gold_videos = gold.size();

  std::map<std::string, const VideoReport*> by_id;
  for (const auto& r : reports.videos) {
    if (!r.ok) {
      out.warnings.push_back("video '" + r.video_id + "' failed analysis; skipped");
      continue;
    }
    by_id[r.video_id] = &r;
  }
  std::set<std::string> annotated;
  for (const auto& a : annotations) annotated.insert(a.video_id);
  for (const auto& [id, r] : by_id) {
    if (!annotated.contains(id)) out.warnings.push_back("video '" + id + "' has no annotations");
  }

  eval::Predictions proposed;
  std::map<std::string, double> field_sizes;
  std::map<std::string, int> sentiment_totals;
  for (const auto& [id, r] : by_id) {
    proposed[id] = r->level;
    sentiment_totals[id] = r->summary.total_sentiment;
    if (r->summary.visual_frames > 0) {
      field_sizes[id] = r->summary.mean_field_size;
    } else if (options.field_size_baseline) {
      out.warnings.push_back("video '" + id + "' has no visual annotations; skipped by field-size baseline");
    }
  }

  std::vector<eval::GoldLabel> evaluated;
  for (const auto& g : gold) {
    if (!proposed.contains(g.video_id)) {
      out.warnings.push_back("annotated video '" + g.video_id + "' has no report; skipped");
      continue;
    }
    if (options.field_size_baseline && !field_sizes.contains(g.video_id)) continue;
    evaluated.push_back(g);
  }
  const auto concordant = eval::concordance_subset(evaluated);
  out.evaluated_all = evaluated.size();
  out.evaluated_concordance = concordant.size();

  std::vector<std::pair<std::string, eval::Predictions>> approaches;
  approaches.emplace_back("proposed", proposed);
  std::optional<double> threshold;
  if (options.field_size_baseline && !evaluated.empty()) {
    std::vector<eval::GoldLabel> calibration;
    for (const auto& g : evaluated) {
      if (!options.calibration || options.calibration->contains(g.video_id)) calibration.push_back(g);
    }
    if (calibration.empty()) {
      out.warnings.push_back("field-size calibration split is empty; baseline skipped");
    } else {
      threshold = eval::sweep_field_size_threshold(field_sizes, calibration).threshold;
      approaches.emplace_back("field_size", eval::baseline_field_size(field_sizes, *threshold));
    }
  }
  if (options.sentiment_baseline) {
    approaches.emplace_back("sentiment", eval::baseline_sentiment(sentiment_totals));
  }

  for (const auto& [name, predictions] : approaches) {
    ApproachResult a;
    a.name = name;
    a.accuracy_all = safe_accuracy(predictions, evaluated, a.correct_all);
    a.accuracy_concordance = safe_accuracy(predictions, concordant, a.correct_concordance);
    if (name == "field_size") a.threshold = threshold;
    out.approaches.push_back(std::move(a));
  }

  const std::pair<const char*, const std::vector<eval::GoldLabel>*> subsets[] = {
      {"all", &evaluated}, {"concordance", &concordant}};
  for (const auto& [subset, rows] : subsets) {
    if (rows->size() < 2) {
      if (approaches.size() > 1) {
        out.warnings.push_back(std::string("fewer than two videos in '") + subset +
                               "'; t-tests skipped");
      }
      continue;
    }
    for (std::size_t i = 0; i < approaches.size(); ++i) {
      for (std::size_t k = i + 1; k < approaches.size(); ++k) {
        const auto x = eval::correctness(approaches[i].second, *rows);
        const auto y = eval::correctness(approaches[k].second, *rows);
        out.comparisons.push_back(
            {approaches[i].first, approaches[k].first, subset, rows->size(), stats::paired_t_test(x, y)});
      }
    }
  }
  return out;
}

json to_json(const EvalReport& report) {
  const auto& a = report.agreement;
  json approaches = json::array();
  for (const auto& r : report.approaches) {
    json j = {{"name", r.name},
              {"accuracy_all", optional_number(r.accuracy_all)},
              {"correct_all", r.correct_all},
              {"accuracy_concordance", optional_number(r.accuracy_concordance)},
              {"correct_concordance", r.correct_concordance}};
    if (r.threshold) j["threshold"] = *r.threshold;
    approaches.push_back(std::move(j));
  }
  json comparisons = json::array();
  for (const auto& c : report.comparisons) {
    const auto t = std::isfinite(c.test.t) ? json(c.test.t) : json(c.test.t > 0 ? "inf" : "-inf");
    comparisons.push_back({{"first", c.first},
                           {"second", c.second},
                           {"subset", c.subset},
                           {"n", c.n},
                           {"t", t},
                           {"df", c.test.df},
                           {"p_two_sided", c.test.p_two_sided},
                           {"significant_at_95", c.test.p_two_sided < 0.05}});
  }
  return {
      {"record", "evaluation"},
      {"agreement",
       {{"videos", a.videos},
        {"unanimous", a.unanimous},
        {"three_quarters", a.three_quarters},
        {"lower", a.lower},
        {"ties", a.ties},
        {"full_agreement_rate", a.full_agreement_rate()},
        {"rate_at_0_75", a.rate_at_three_quarters()}}},
      {"denominators",
       {{"gold_videos", report.gold_videos},
        {"evaluated_all", report.evaluated_all},
        {"evaluated_concordance", report.evaluated_concordance},
        {"rule", "strict majority; tied videos abstain and are excluded"}}},
      {"approaches", approaches},
      {"paired_t_tests", comparisons},
      {"warnings", report.warnings},
  };
}

}  // namespace tension::pipeline
