// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>

#include "tension/error.hpp"
#include "tension/sentiment.hpp"

namespace tension::sentiment {
namespace {

constexpr std::array kGeneralPositive = {
    "good",      "great",     "excellent", "happy",    "joy",       "love",      "wonderful",
    "best",      "better",    "positive",  "success",  "win",       "wins",      "won",
    "celebrate", "beautiful", "hope",      "hopeful",  "calm",      "peace",     "peaceful",
    "pleasant",  "nice",      "glad",      "improve",  "improved",  "safe",      "benefit",
    "support",   "agree",     "fortunate", "brilliant","smile",     "gift",      "praise",
    "proud",     "relief",    "strong",    "healthy",  "friendly",  "fair",      "bom",
    "boa",       "feliz",     "alegria",   "sucesso",  "paz",       "vitória",   "melhor",
};

constexpr std::array kGeneralNegative = {
    "bad",     "terrible", "awful",   "sad",      "hate",     "worst",    "worse",
    "negative","fail",     "failure", "lose",     "lost",     "fear",     "afraid",
    "angry",   "anger",    "pain",    "hurt",     "cry",      "horrible", "ugly",
    "wrong",   "problem",  "danger",  "dangerous","threat",   "poor",     "sick",
    "weak",    "grief",    "shame",   "blame",    "ruin",     "suffer",   "mau",
    "ruim",    "triste",   "medo",    "raiva",    "pior",     "perigo",   "dor",
};

constexpr std::array kNewsPositive = {
    "rescue",    "rescued",   "recovery",  "growth",    "record",    "celebration", "award",
    "agreement", "peace",     "saved",     "survivors", "donation",  "festival",    "victory",
    "reopen",    "reopened",  "cure",      "vaccine",   "volunteers","champion",    "inauguration",
    "progress",  "stability", "resgate",   "acordo",    "vacina",    "festa",       "campeão",
};

constexpr std::array kNewsNegative = {
    "crisis",   "attack",    "killed",   "murder",   "crash",     "disaster", "war",
    "violence", "victims",   "death",    "dead",     "fire",      "flood",    "explosion",
    "shooting", "arrested",  "scandal",  "corruption","collapse", "protest",  "strike",
    "injured",  "emergency", "tragedy",  "robbery",  "hostage",   "crime",    "bomb",
    "crise",    "ataque",    "morte",    "mortos",   "incêndio",  "tragédia", "crime",
    "violência","corrupção", "assalto",
};

template <typename A>
std::set<std::string> as_set(const A& words) {
  return {words.begin(), words.end()};
}

}  // namespace

Lexicon builtin_lexicon(std::string_view name) {
  if (name == "general") return Lexicon(as_set(kGeneralPositive), as_set(kGeneralNegative));
  if (name == "news") return Lexicon(as_set(kNewsPositive), as_set(kNewsNegative));
  throw Error(ErrorKind::kConfiguration, "unknown built-in lexicon '" + std::string(name) + "'");
}

std::vector<std::string> builtin_lexicon_names() { return {"general", "news"}; }

}  // namespace tension::sentiment
