// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/sentiment.hpp"

#include <fstream>

#include "tension/error.hpp"

namespace tension::sentiment {
namespace {

bool is_letter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char fold(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

std::set<std::string> lowercase_all(std::set<std::string> words) {
  std::set<std::string> out;
  for (const auto& w : words) {
    std::string lower;
    for (unsigned char c : w) lower.push_back(fold(c));
    if (!lower.empty()) out.insert(std::move(lower));
  }
  return out;
}

std::set<std::string> read_word_list(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::kIo, "cannot read lexicon file " + file.string());
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') continue;
    const auto tokens = tokenize(line);
    if (tokens.size() == 1) words.insert(tokens.front());
  }
  return words;
}

bool blank(std::string_view text) {
  for (unsigned char c : text) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_letter(c)) {
      current.push_back(fold(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Lexicon::Lexicon(std::set<std::string> positive, std::set<std::string> negative)
    : positive_(lowercase_all(std::move(positive))), negative_(lowercase_all(std::move(negative))) {
  if (positive_.empty() && negative_.empty()) {
    throw Error(ErrorKind::kConfiguration, "lexicon has no terms");
  }
  for (const auto& w : positive_) {
    if (negative_.contains(w)) {
      throw Error(ErrorKind::kConfiguration, "lexicon lists '" + w + "' as both polarities");
    }
  }
}

Lexicon load_lexicon(const std::filesystem::path& dir) {
  return Lexicon(read_word_list(dir / "positive.txt"), read_word_list(dir / "negative.txt"));
}

Polarity lexicon_polarity(std::string_view text, const Lexicon& lexicon) {
  int balance = 0;
  for (const auto& token : tokenize(text)) {
    if (lexicon.positive().contains(token)) ++balance;
    if (lexicon.negative().contains(token)) --balance;
  }
  if (balance > 0) return Polarity::kPositive;
  if (balance < 0) return Polarity::kNegative;
  return Polarity::kNeutral;
}

SentimentVector score_sentence(const caption::Sentence& sentence, const Ensemble& scorers) {
  if (scorers.empty()) throw Error(ErrorKind::kContract, "sentiment ensemble is empty");
  SentimentVector v;
  v.scores.assign(scorers.size(), Polarity::kNeutral);
  if (blank(sentence.text)) return v;
  for (std::size_t i = 0; i < scorers.size(); ++i) {
    v.scores[i] = scorers[i]->score(sentence.text);
    v.sum += value(v.scores[i]);
  }
  return v;
}

std::vector<ScoredSentence> score_captions(const std::vector<caption::Sentence>& sentences,
                                           const Ensemble& scorers) {
  std::vector<ScoredSentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back({s, score_sentence(s, scorers)});
  return out;
}

}  // namespace tension::sentiment
