// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <tuple>

#include "veriphrase/errors.hpp"
#include "veriphrase/premise.hpp"

using namespace veriphrase;

namespace {

Claim trump_claim() {
  Claim c;
  c.id = "c1";
  c.text = "Donald Trump won the 2020 election.";
  c.phrases = {{"Donald Trump", 0, 12, PhraseKind::NamedEntity},
               {"won", 13, 16, PhraseKind::Verb},
               {"the 2020 election", 17, 34, PhraseKind::NounPhrase}};
  return c;
}

EvidenceSet biden_evidence() {
  EvidenceSet e;
  e.sentences.push_back({"Donald_Trump", 3, "Donald Trump lost the 2020 election to Joe Biden."});
  return e;
}

// Independent oracle: re-derives the stated span score with naive string
// handling, no shared code with the implementation.
namespace oracle {

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> split_words_cased(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      cur += ch;
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Brute force over all spans of 1..max_len tokens; returns ranked answers.
std::vector<std::string> rank_all(const std::string& cloze,
                                  const std::vector<std::string>& evidence_sentences,
                                  int max_len, int window) {
  const size_t mask = cloze.find("[MASK]");
  const std::vector<std::string> left = split_words(cloze.substr(0, mask));
  const std::vector<std::string> right = split_words(cloze.substr(mask + 6));

  struct Row {
    double score;
    int sent;
    int start;
    int len;
    std::string text;
  };
  std::vector<Row> rows;
  for (size_t si = 0; si < evidence_sentences.size(); ++si) {
    const auto cased = split_words_cased(evidence_sentences[si]);
    const auto lower = split_words(evidence_sentences[si]);
    for (size_t st = 0; st < lower.size(); ++st) {
      for (int len = 1; len <= max_len && st + len <= lower.size(); ++len) {
        double score = 0.0;
        for (int j = 1; j <= window; ++j) {
          const double w = std::pow(0.5, j - 1);
          if (static_cast<int>(st) - j >= 0 && j <= static_cast<int>(left.size()) &&
              lower[st - j] == left[left.size() - j]) {
            score += w;
          }
          if (st + len + j - 1 < lower.size() && j <= static_cast<int>(right.size()) &&
              lower[st + len + j - 1] == right[j - 1]) {
            score += w;
          }
        }
        std::string text = cased[st];
        for (int k = 1; k < len; ++k) text += " " + cased[st + k];
        rows.push_back({score, static_cast<int>(si), static_cast<int>(st), len, text});
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(b.score, a.sent, a.start, a.len) <
           std::tie(a.score, b.sent, b.start, b.len);
  });
  std::vector<std::string> answers;
  for (const Row& r : rows) {
    if (std::find(answers.begin(), answers.end(), r.text) == answers.end()) {
      answers.push_back(r.text);
    }
  }
  return answers;
}

}  // namespace oracle

}  // namespace

TEST_SUITE("premise") {

TEST_CASE("cloze question replaces the span with the mask token") {
  const Claim c = trump_claim();
  const ClozeQuestion q = make_cloze_question(c, 1);
  CHECK(q.text == "Donald Trump [MASK] the 2020 election.");
  CHECK(q.masked_phrase == "won");

  const ClozeQuestion q0 = make_cloze_question(c, 0);
  CHECK(q0.text == "[MASK] won the 2020 election.");

  CHECK_THROWS_AS(make_cloze_question(c, 3), ValidationError);
  CHECK_THROWS_AS(make_cloze_question(c, -1), ValidationError);
}

TEST_CASE("cloze round trip reconstructs the claim") {
  const Claim c = trump_claim();
  for (int i = 0; i < 3; ++i) {
    const ClozeQuestion q = make_cloze_question(c, i);
    std::string rebuilt = q.text;
    rebuilt.replace(rebuilt.find("[MASK]"), 6, q.masked_phrase);
    CHECK(rebuilt == c.text);
  }
}

TEST_CASE("answerer finds the corrected verb, verified against a brute-force oracle") {
  const Claim c = trump_claim();
  const ClozeQuestion q = make_cloze_question(c, 1);
  const EvidenceSet ev = biden_evidence();

  const auto top1 = answer_question(q, ev, 1);
  REQUIRE(top1.size() == 1);
  // Frozen from the oracle below: "lost" maximizes the context-overlap score.
  CHECK(top1[0] == "lost");

  const auto top3 = answer_question(q, ev, 3);
  REQUIRE(top3.size() == 3);
  CHECK(top3[0] == "lost");

  const AnswererConfig cfg;
  const auto expected = oracle::rank_all(q.text, {ev.sentences[0].text},
                                         cfg.max_span_tokens, cfg.context_window);
  REQUIRE(expected.size() >= 3);
  CHECK(expected[0] == "lost");
  for (int i = 0; i < 3; ++i) CHECK(top3[i] == expected[i]);
}

TEST_CASE("answerer ranking matches the oracle on messier evidence") {
  Claim c;
  c.id = "c2";
  c.text = "Elena Vasquez composed the requiem score.";
  c.phrases = {{"Elena Vasquez", 0, 13, PhraseKind::NamedEntity},
               {"composed", 14, 22, PhraseKind::Verb},
               {"the requiem score", 23, 40, PhraseKind::NounPhrase}};
  EvidenceSet ev;
  ev.sentences.push_back({"p", 0, "Elena Vasquez composed the symphony score in 1999."});
  ev.sentences.push_back({"p", 1, "Bob Keller visited the citadel landmark in 2003."});
  ev.sentences.push_back({"q", 0, "Elena Vasquez translated the memoir edition in 2001."});

  const AnswererConfig cfg;
  std::vector<std::string> texts;
  for (const auto& s : ev.sentences) texts.push_back(s.text);
  for (int idx = 0; idx < 3; ++idx) {
    const ClozeQuestion q = make_cloze_question(c, idx);
    const auto got = answer_question(q, ev, 5, cfg);
    const auto expected =
        oracle::rank_all(q.text, texts, cfg.max_span_tokens, cfg.context_window);
    REQUIRE(got.size() <= expected.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expected[i]);
  }
}

TEST_CASE("answerer is deterministic and echoes the phrase on empty evidence") {
  const Claim c = trump_claim();
  const ClozeQuestion q = make_cloze_question(c, 1);
  CHECK(answer_question(q, EvidenceSet{}, 3) == std::vector<std::string>{"won"});
  const EvidenceSet ev = biden_evidence();
  CHECK(answer_question(q, ev, 3) == answer_question(q, ev, 3));
  CHECK_THROWS_AS(answer_question(q, ev, 0), ValidationError);
}

TEST_CASE("local premise substitution and dedup") {
  const Claim c = trump_claim();
  const LocalPremise p = build_local_premise(c, 1, {"lost"});
  CHECK(p.text == "Donald Trump lost the 2020 election.");

  const LocalPremise p2 = build_local_premise(c, 1, {"lost", "conceded", "lost"});
  CHECK(p2.answers == std::vector<std::string>{"lost", "conceded"});
  CHECK(p2.text == "Donald Trump lost / conceded the 2020 election.");

  const LocalPremise p3 = build_local_premise(c, 1, {"won"});
  CHECK(p3.text == c.text);  // fixed point when the answer equals the phrase

  CHECK_THROWS_AS(build_local_premise(c, 1, {}), ValidationError);
}

TEST_CASE("mrc training set uses only SUP records") {
  const Claim c = trump_claim();
  const EvidenceSet ev = biden_evidence();
  std::vector<MrcSource> records = {
      {&c, &ev, Veracity::Sup},
      {&c, &ev, Veracity::Ref},
  };
  const auto examples = build_mrc_training_set(records);
  REQUIRE(examples.size() == 3);  // one per phrase of the single SUP record
  for (const MrcExample& ex : examples) {
    // Gold answers always appear verbatim in the source claim.
    CHECK(c.text.find(ex.gold_answer) != std::string::npos);
    CHECK(ex.context == ev.sentences[0].text);
  }

  records = {{&c, &ev, Veracity::Ref}, {&c, &ev, Veracity::Nei}};
  CHECK(build_mrc_training_set(records).empty());
}

TEST_CASE("premise masking: endpoints and the binomial middle") {
  const Claim base = trump_claim();
  std::vector<Claim> claims(1000, base);
  auto fresh = [&]() {
    std::vector<std::vector<LocalPremise>> all;
    for (int i = 0; i < 1000; ++i) {
      all.push_back({build_local_premise(base, 1, {"lost"})});
    }
    return all;
  };

  auto premises = fresh();
  CHECK(mask_premises(claims, premises, 0.0, 7) == 0);
  CHECK(premises[0][0].text == "Donald Trump lost the 2020 election.");

  premises = fresh();
  CHECK(mask_premises(claims, premises, 1.0, 7) == 1000);
  CHECK(premises[0][0].text == "Donald Trump [MASK] the 2020 election.");
  CHECK(premises[0][0].answers == std::vector<std::string>{"[MASK]"});

  premises = fresh();
  const size_t masked = mask_premises(claims, premises, 0.5, 123);
  CHECK(masked >= 450);
  CHECK(masked <= 550);

  // Seeded determinism.
  auto again = fresh();
  CHECK(mask_premises(claims, again, 0.5, 123) == masked);

  premises = fresh();
  CHECK_THROWS_AS(mask_premises(claims, premises, 1.5, 7), ValidationError);
}

}  // TEST_SUITE
