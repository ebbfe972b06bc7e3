// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_SENTIMENT_HPP
#define TENSION_SENTIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tension/caption.hpp"

namespace tension::sentiment {

enum class Polarity : std::int8_t { kNegative = -1, kNeutral = 0, kPositive = 1 };

inline int value(Polarity p) { return static_cast<int>(p); }

/// Lowercased tokens split on non-letter bytes. Bytes >= 0x80 count as
/// letters so UTF-8 words stay whole; only ASCII is case-folded.
std::vector<std::string> tokenize(std::string_view text);

/// Disjoint positive and negative word sets, stored lowercase.
class Lexicon {
 public:
  /// Throws Error(kConfiguration) if the sets overlap or are both empty.
  Lexicon(std::set<std::string> positive, std::set<std::string> negative);

  const std::set<std::string>& positive() const { return positive_; }
  const std::set<std::string>& negative() const { return negative_; }

 private:
  std::set<std::string> positive_;
  std::set<std::string> negative_;
};

/// Reads `positive.txt` and `negative.txt` (one word per line, `#` starts a comment line) from `dir`.
Lexicon load_lexicon(const std::filesystem::path& dir);

/// Compiled-in lexicons: "general" (broad polarity words) and "news"
/// (event vocabulary typical of news reporting). Throws
/// Error(kConfiguration) for any other name.
Lexicon builtin_lexicon(std::string_view name);
std::vector<std::string> builtin_lexicon_names();

/// sign(positive hits - negative hits).
Polarity lexicon_polarity(std::string_view text, const Lexicon& lexicon);

/// A sentence-level polarity method. Implementations must be deterministic,
/// total and safe to call concurrently.
class PolarityScorer {
 public:
  virtual ~PolarityScorer() = default;
  virtual const std::string& name() const = 0;
  virtual Polarity score(std::string_view text) const = 0;
};

class LexiconScorer final : public PolarityScorer {
 public:
  LexiconScorer(std::string name, Lexicon lexicon)
      : name_(std::move(name)), lexicon_(std::move(lexicon)) {}

  const std::string& name() const override { return name_; }
  Polarity score(std::string_view text) const override { return lexicon_polarity(text, lexicon_); }

 private:
  std::string name_;
  Lexicon lexicon_;
};

using Ensemble = std::vector<std::shared_ptr<const PolarityScorer>>;

struct SentimentVector {
  std::vector<Polarity> scores;
  int sum = 0;

  bool operator==(const SentimentVector&) const = default;
};

struct ScoredSentence {
  caption::Sentence sentence;
  SentimentVector sentiment;
};

/// One score per scorer, in ensemble order, plus their sum. Whitespace-only
/// text scores 0 from every scorer. Throws Error(kContract) for an empty
/// ensemble.
SentimentVector score_sentence(const caption::Sentence& sentence, const Ensemble& scorers);

std::vector<ScoredSentence> score_captions(const std::vector<caption::Sentence>& sentences,
                                           const Ensemble& scorers);

}  // namespace tension::sentiment

#endif  // TENSION_SENTIMENT_HPP
