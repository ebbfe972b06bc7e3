// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Usage: acceptance_test <newstension binary> <data dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tension/caption.hpp"
#include "tension/error.hpp"
#include "tension/eval.hpp"
#include "tension/fixtures.hpp"
#include "tension/fusion.hpp"
#include "tension/prosody.hpp"
#include "tension/sentiment.hpp"
#include "tension/student_t.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tension;

namespace {

// Collects failure messages for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool passed() const { return failed_ == 0; }
  std::string detail() const {
    std::string out = std::to_string(checks_ - failed_) + "/" + std::to_string(checks_) + " checks";
    for (const auto& f : failures_) out += "\n      " + f;
    return out;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 1. Agreement arithmetic on a 520-video, four-annotator file.
void agreement_arithmetic(Check& c) {
  std::string csv = "video_id,annotator_id,label\n";
  int id = 0;
  auto add = [&](const std::string& pattern) {
    char name[16];
    std::snprintf(name, sizeof name, "v%03d", id++);
    for (std::size_t a = 0; a < pattern.size(); ++a) {
      csv += std::string(name) + ",a" + std::to_string(a + 1) + "," +
             (pattern[a] == 'H' ? "high" : "low") + "\n";
    }
  };
  for (int i = 0; i < 381; ++i) add(i % 3 ? "HHHH" : "LLLL");
  for (int i = 0; i < 96; ++i) add(i % 2 ? "HLHH" : "LLHL");
  for (int i = 0; i < 43; ++i) add(i % 2 ? "HHLL" : "LHLH");

  const auto records = eval::parse_annotations_csv(csv);
  const auto stats = eval::agreement_stats(records);
  c.expect(stats.videos == 520, "videos = " + std::to_string(stats.videos));
  c.expect(std::abs(stats.full_agreement_rate() - 0.7327) <= 1e-4,
           "full agreement rate " + fmt(stats.full_agreement_rate()));
  c.expect(std::abs(stats.rate_at_three_quarters() - 0.1846) <= 1e-4,
           "rate at 0.75 " + fmt(stats.rate_at_three_quarters()));
  c.expect(eval::gold_labels(records).size() == 477, "ties must abstain");
}

// 2. Pitch, voicing and loudness on synthetic signals.
void dsp_correctness(Check& c) {
  const double duration = 2.0;
  // Frames whose centred pitch window lies inside the signal.
  const double margin = 3.0 / 50.0 / 2.0;
  for (double hz : {200.0, 120.0}) {
    const auto frames = prosody::extract_prosody(fixtures::sine(hz, 0.5, duration));
    std::size_t interior = 0, good = 0;
    for (const auto& f : frames) {
      if (f.time < margin || f.time > duration - margin) continue;
      ++interior;
      if (std::abs(f.f0_hz - hz) <= 2.0 && f.voicing_prob >= 0.9) ++good;
    }
    c.expect(interior > 150, "interior frame count " + std::to_string(interior));
    c.expect(good >= 0.95 * static_cast<double>(interior),
             fmt(hz) + " Hz: " + std::to_string(good) + "/" + std::to_string(interior) + " frames good");
  }

  for (std::uint32_t seed : {1u, 2u, 3u}) {
    const auto frames = prosody::extract_prosody(fixtures::white_noise(0.5, duration, seed));
    const auto unvoiced = std::count_if(frames.begin(), frames.end(),
                                        [](const auto& f) { return f.f0_hz == 0.0; });
    c.expect(static_cast<double>(unvoiced) >= 0.9 * static_cast<double>(frames.size()),
             "noise seed " + std::to_string(seed) + ": " + std::to_string(unvoiced) + "/" +
                 std::to_string(frames.size()) + " unvoiced");
  }

  for (const auto& base : {fixtures::sine(200.0, 0.25, 1.0), fixtures::white_noise(0.2, 1.0, 9)}) {
    auto doubled = base;
    for (double& v : doubled.samples) v *= 2.0;
    const auto a = prosody::extract_prosody(base);
    const auto b = prosody::extract_prosody(doubled);
    bool ok = a.size() == b.size();
    double worst = 0.0;
    for (std::size_t i = 0; ok && i < a.size(); ++i) {
      worst = std::max(worst, std::abs(b[i].loudness_db - a[i].loudness_db - 6.02));
    }
    c.expect(ok && worst <= 0.05, "doubling shift error " + fmt(worst) + " dB");
  }
}

// Random features with every stream in time order.
fusion::VideoFeatures random_video(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  fusion::VideoFeatures v;
  v.fps = unit(rng) < 0.5 ? 10.0 : 25.0;
  const double duration = 0.5 + 5.0 * unit(rng);
  const auto n_prosody = static_cast<std::size_t>(std::max(0.0, (duration - 0.025) / 0.01));
  for (std::size_t i = 0; i < n_prosody; ++i) {
    const double voicing = unit(rng) < 0.3 ? 0.0 : unit(rng);
    v.prosody.push_back({0.0125 + 0.01 * i, -96.0 + 96.0 * unit(rng), voicing >= 0.45 ? 150.0 : 0.0,
                         voicing});
  }
  const auto n_frames = static_cast<std::int64_t>(duration * v.fps);
  for (std::int64_t i = 0; i < n_frames; ++i) {
    if (unit(rng) < 0.3) continue;
    visual::VisualFeatures f;
    f.frame_index = i;
    f.emotion = static_cast<visual::EmotionLabel>(static_cast<int>(unit(rng) * 8));
    if (f.emotion != visual::EmotionLabel::kNonexistent) {
      f.intensity = 4.0 * unit(rng);
      f.field_size = unit(rng);
    }
    v.visual.push_back(f);
  }
  if (unit(rng) < 0.8) {
    double t = 0.2 * unit(rng);
    while (t < duration) {
      const double len = 0.1 + 1.5 * unit(rng);
      sentiment::ScoredSentence s;
      s.sentence = {"s", {t, t + len}, 1};
      s.sentiment.sum = static_cast<int>(unit(rng) * 37) - 18;
      v.sentiments.push_back(s);
      t += len + 0.3 * unit(rng);
    }
  }
  return v;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// 3. Fusion properties over randomized features.
void fusion_properties(Check& c) {
  using fusion::TensionLevel;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const fusion::FusionConfig config;
  fusion::FusionConfig high_ties;
  high_ties.tie_break = TensionLevel::kHigh;

  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = random_video(rng);
    const std::string tag = "instance " + std::to_string(trial) + ": ";
    const auto range = fusion::loudness_range(v.prosody, config.loudness_normalization);
    const auto whole = fusion::accumulate_detailed(v, config, range);

    // Scaling every contribution by k > 0 keeps the class.
    const double k = std::exp(8.0 * unit(rng) - 4.0);
    auto scaled_video = v;
    for (auto& f : scaled_video.visual) f.intensity *= k;
    const auto sd = fusion::accumulate_detailed(scaled_video, config, range);
    const fusion::TensionScores scaled{sd.visual.low + k * sd.sentiment.low,
                                       sd.visual.high + k * sd.sentiment.high};
    if (whole.total.low != whole.total.high) {
      c.expect(fusion::classify(scaled, config) == fusion::classify(whole.total, config),
               tag + "scaling changed the class");
    }

    // Splitting at a random time and summing the parts.
    const double cut = 6.0 * unit(rng);
    fusion::VideoFeatures a, b;
    a.fps = b.fps = v.fps;
    a.prosody = b.prosody = v.prosody;
    for (const auto& f : v.visual) {
      (static_cast<double>(f.frame_index) / v.fps < cut ? a : b).visual.push_back(f);
    }
    for (const auto& s : v.sentiments) (s.sentence.span.start < cut ? a : b).sentiments.push_back(s);
    const auto pa = fusion::accumulate_detailed(a, config, range).total;
    const auto pb = fusion::accumulate_detailed(b, config, range).total;
    c.expect(close(pa.low + pb.low, whole.total.low) && close(pa.high + pb.high, whole.total.high),
             tag + "partition sums differ");

    // Dropping captions leaves only the visual contribution.
    auto silent = v;
    silent.sentiments.clear();
    const auto nc = fusion::accumulate_detailed(silent, config, range);
    c.expect(nc.sentiment.low == 0.0 && nc.sentiment.high == 0.0 && nc.total.low == whole.visual.low &&
                 nc.total.high == whole.visual.high,
             tag + "no-caption path differs");

    // Mirror every contribution into the other bin to force an exact tie.
    auto tied = v;
    tied.visual.clear();
    for (const auto& f : v.visual) {
      tied.visual.push_back(f);
      if (f.emotion == visual::EmotionLabel::kNonexistent) continue;
      auto twin = f;
      twin.emotion = config.emotion_map.at(f.emotion) == TensionLevel::kLow
                         ? visual::EmotionLabel::kFear
                         : visual::EmotionLabel::kHappiness;
      tied.visual.push_back(twin);
    }
    tied.sentiments.clear();
    for (const auto& s : v.sentiments) {
      tied.sentiments.push_back(s);
      auto twin = s;
      twin.sentiment.sum = -s.sentiment.sum;
      tied.sentiments.push_back(twin);
    }
    const auto t1 = fusion::accumulate(tied, config);
    const auto t2 = fusion::accumulate(tied, config);
    c.expect(t1.low == t1.high, tag + "mirrored features did not tie");
    c.expect(t1.low == t2.low && t1.high == t2.high, tag + "accumulation not deterministic");
    c.expect(fusion::classify(t1, config) == TensionLevel::kLow &&
                 fusion::classify(t1, high_ties) == TensionLevel::kHigh,
             tag + "tie-break not honoured");
  }
}

// 4. Sentiment bounds for an 18-member ensemble.
void sentiment_bounds(Check& c) {
  std::mt19937 rng(18);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::string> vocab;
  for (int i = 0; i < 80; ++i) vocab.push_back("w" + std::string(1, static_cast<char>('a' + i % 26)) +
                                              std::string(1, static_cast<char>('a' + i / 26)));

  sentiment::Ensemble ensemble;
  std::vector<std::pair<std::set<std::string>, std::set<std::string>>> lists;
  for (int k = 0; k < 18; ++k) {
    std::set<std::string> pos, neg;
    for (const auto& w : vocab) {
      const double r = unit(rng);
      if (r < 0.15) pos.insert(w);
      else if (r < 0.3) neg.insert(w);
    }
    if (pos.empty()) pos.insert(vocab[k]);
    lists.emplace_back(pos, neg);
    ensemble.push_back(std::make_shared<sentiment::LexiconScorer>("s" + std::to_string(k),
                                                                  sentiment::Lexicon(pos, neg)));
  }

  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    std::vector<std::string> words;
    const int n = static_cast<int>(unit(rng) * 12);
    for (int i = 0; i < n; ++i) {
      words.push_back(vocab[static_cast<std::size_t>(unit(rng) * vocab.size())]);
      std::string shown = words.back();
      if (unit(rng) < 0.3) shown[0] = static_cast<char>(std::toupper(shown[0]));
      text += shown + (unit(rng) < 0.2 ? ", " : " ");
    }
    const auto v = sentiment::score_sentence({text, {0, 1}, 1}, ensemble);
    int plus = 0, minus = 0, expected = 0;
    for (std::size_t k = 0; k < 18; ++k) {
      plus += v.scores[k] == sentiment::Polarity::kPositive;
      minus += v.scores[k] == sentiment::Polarity::kNegative;
      int balance = 0;
      for (const auto& w : words) balance += lists[k].first.count(w) - lists[k].second.count(w);
      expected += (balance > 0) - (balance < 0);
    }
    c.expect(v.scores.size() == 18, "vector length");
    c.expect(v.sum >= -18 && v.sum <= 18, "sum out of bounds: " + std::to_string(v.sum));
    c.expect(v.sum == plus - minus, "sum differs from vote count");
    c.expect(v.sum == expected, "sum differs from word-count oracle for '" + text + "'");
  }
  for (const char* empty : {"", " ", "\t\n"}) {
    c.expect(sentiment::score_sentence({empty, {0, 1}, 1}, ensemble).sum == 0, "empty text sum");
  }
}

// 5. Paired t-test against frozen reference values.
void statistics_oracle(Check& c, const fs::path& data_dir) {
  const json doc = json::parse(read_file(data_dir / "ttest_reference.json"));
  std::size_t randomized = 0;
  for (const auto& item : doc.at("cases")) {
    const auto x = item.at("x").get<std::vector<double>>();
    const auto y = item.at("y").get<std::vector<double>>();
    if (x.size() >= 5 && x.size() <= 100) ++randomized;
    const auto r = stats::paired_t_test(x, y);
    const double dt = std::abs(r.t - item.at("t").get<double>());
    const double dp = std::abs(r.p_two_sided - item.at("p").get<double>());
    c.expect(dt <= 1e-6, "n=" + std::to_string(x.size()) + " |dt| = " + fmt(dt));
    c.expect(dp <= 1e-8, "n=" + std::to_string(x.size()) + " |dp| = " + fmt(dp));
    c.expect(r.df == item.at("df").get<int>(), "df");
    const auto back = stats::paired_t_test(y, x);
    c.expect(back.t == -r.t && back.p_two_sided == r.p_two_sided, "antisymmetry");
  }
  c.expect(randomized >= 50, "only " + std::to_string(randomized) + " randomized cases");
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 6. The command-line tool on the generated dataset.
void end_to_end(Check& c, const fs::path& tool) {
  const fs::path dir = fs::temp_directory_path() / "newstension_acceptance_e2e";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string bin = "\"" + tool.string() + "\"";
  const std::string data = "\"" + (dir / "data").string() + "\"";
  const std::string quiet = " > /dev/null 2>&1";

  c.expect(run(bin + " fixtures generate --out " + data + quiet) == 0, "fixtures generate failed");
  for (const char* name : {"r1.jsonl", "r2.jsonl"}) {
    c.expect(run(bin + " analyze --manifest " + data + "/manifest.jsonl --config " + data +
                 "/config.json --out \"" + (dir / name).string() + "\"" + quiet) == 0,
             std::string("analyze run ") + name + " failed");
  }
  c.expect(run(bin + " evaluate --reports \"" + (dir / "r1.jsonl").string() + "\" --annotations " +
               data + "/annotations.csv --baseline field-size --baseline sentiment --out \"" +
               (dir / "eval.json").string() + "\"" + quiet) == 0,
           "evaluate failed");

  const std::string r1 = read_file(dir / "r1.jsonl");
  c.expect(!r1.empty() && r1 == read_file(dir / "r2.jsonl"), "reports differ between runs");

  const std::map<std::string, std::string> expected = {
      {"v01", "low"},  {"v02", "high"}, {"v03", "high"}, {"v04", "low"},  {"v05", "high"},
      {"v06", "low"},  {"v07", "high"}, {"v08", "low"},  {"v09", "low"},  {"v10", "high"},
      {"v11", "high"}, {"v12", "low"},  {"v13", "high"}, {"v14", "low"},  {"v15", "high"},
      {"v16", "low"},  {"v17", "high"}, {"v18", "low"},  {"v19", "high"}, {"v20", "low"},
  };
  std::map<std::string, std::string> got;
  std::istringstream lines(r1);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || record.value("record", "") != "video") continue;
    got[record.value("video_id", "")] = record.value("level", "");
  }
  c.expect(got.size() == expected.size(), std::to_string(got.size()) + " labelled videos");
  for (const auto& [id, level] : expected) {
    const auto it = got.find(id);
    c.expect(it != got.end() && it->second == level,
             id + ": expected " + level + ", got " + (it == got.end() ? "nothing" : it->second));
  }
  const json eval_doc = json::parse(read_file(dir / "eval.json"), nullptr, false);
  c.expect(!eval_doc.is_discarded() && eval_doc.contains("approaches"), "evaluation report unreadable");
}

// Random text for a cue: words with stray whitespace and line breaks.
std::pair<std::string, std::string> random_cue_text(std::mt19937& rng) {
  static const std::vector<std::string> words = {
      "breaking", "news", "o", "presidente", "disse", "fire,", "crowd", "rain.", "Why?", "ação",
      "42", "-", "\"quoted\"", "end!", "multi-word", "voilà", "[music]", "<i>aside</i>"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> count(1, 9);
  std::uniform_int_distribution<int> sep(0, 5);
  std::string raw, normalized;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const std::string& w = words[pick(rng)];
    if (i > 0) {
      const int s = sep(rng);
      raw += s == 0 ? "\n" : s == 1 ? "  " : s == 2 ? " \t" : " ";
      normalized += " ";
    }
    raw += w;
    normalized += w;
  }
  return {raw, normalized};
}

// 7. SRT round-trip and malformed documents.
void parser_round_trip(Check& c) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<std::int64_t> gap(0, 3000);
  std::uniform_int_distribution<std::int64_t> length(1, 8000);
  std::uniform_int_distribution<int> cue_count(0, 25);
  auto stamp = [](std::int64_t ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld,%03lld", static_cast<long long>(ms / 3600000),
                  static_cast<long long>(ms / 60000 % 60), static_cast<long long>(ms / 1000 % 60),
                  static_cast<long long>(ms % 1000));
    return std::string(buf);
  };

  for (int doc = 0; doc < 100; ++doc) {
    const std::string eol = doc % 3 == 0 ? "\r\n" : "\n";
    std::string text = doc % 5 == 0 ? "\xEF\xBB\xBF" : "";
    std::vector<caption::CaptionCue> expected;
    std::int64_t t = doc % 7 == 0 ? 3599000 : 0;
    const int n = cue_count(rng);
    for (int i = 1; i <= n; ++i) {
      const std::int64_t start = t + gap(rng);
      const std::int64_t end = start + length(rng);
      t = end;
      auto [raw, normalized] = random_cue_text(rng);
      std::string body;
      for (char ch : raw) body += ch == '\n' ? eol : std::string(1, ch);
      text += std::to_string(i) + eol + stamp(start) + " --> " + stamp(end) + eol + body + eol + eol;
      expected.push_back({i, start, end, normalized});
    }
    try {
      const auto first = caption::parse_srt(text);
      c.expect(first == expected, "document " + std::to_string(doc) + ": parsed cues differ");
      const auto second = caption::parse_srt(caption::serialize_srt(first));
      c.expect(second == first, "document " + std::to_string(doc) + ": round trip differs");
    } catch (const Error& e) {
      c.expect(false, "document " + std::to_string(doc) + ": " + e.what());
    }
  }

  struct Malformed {
    std::string name;
    std::string text;
    ErrorKind kind;
    int line;
  };
  const std::vector<Malformed> bad = {
      {"malformed timestamp", "1\n00:00:01,000 --> 00:00:02,000\nok\n\n2\n00:00:03.000 --> 00:00:04,000\nx\n",
       ErrorKind::kParse, 6},
      {"end before start", "1\n00:00:05,000 --> 00:00:04,000\nbackwards\n", ErrorKind::kValidation, 0},
      {"overlap", "1\n00:00:01,000 --> 00:00:03,000\na\n\n2\n00:00:02,000 --> 00:00:04,000\nb\n",
       ErrorKind::kValidation, 0},
  };
  for (const auto& m : bad) {
    try {
      caption::parse_srt(m.text);
      c.expect(false, m.name + ": accepted");
    } catch (const Error& e) {
      c.expect(e.kind() == m.kind, m.name + ": wrong error kind " + std::string(to_string(e.kind())));
      if (m.line > 0) c.expect(e.line() == m.line, m.name + ": wrong line " + std::to_string(e.line().value_or(0)));
    }
  }
}

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;  // 0 for no runtime bound
  std::function<void(Check&)> body;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <newstension binary> <test data dir>\n", argv[0]);
    return 2;
  }
  const fs::path tool = argv[1];
  const fs::path data_dir = argv[2];

  const std::vector<Criterion> criteria = {
      {1, "agreement arithmetic", 1.0, agreement_arithmetic},
      {2, "DSP correctness", 5.0, dsp_correctness},
      {3, "fusion properties", 30.0, fusion_properties},
      {4, "sentiment bounds", 0.0, sentiment_bounds},
      {5, "statistics oracle", 0.0, [&](Check& c) { statistics_oracle(c, data_dir); }},
      {6, "end-to-end", 60.0, [&](Check& c) { end_to_end(c, tool); }},
      {7, "parser round-trip", 0.0, parser_round_trip},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criterion.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criterion.budget_seconds > 0.0) {
      check.expect(seconds < criterion.budget_seconds,
                   "runtime " + fmt(seconds) + " s exceeds " + fmt(criterion.budget_seconds) + " s");
    }
    const bool ok = check.passed();
    failures += ok ? 0 : 1;
    std::printf("[PRIMARY] %d %-22s %s  %.3f s  %s\n", criterion.number, criterion.title.c_str(),
                ok ? "PASS" : "FAIL", seconds, check.detail().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
