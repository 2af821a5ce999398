// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/premise.hpp"

#include <algorithm>
#include <tuple>

#include "veriphrase/errors.hpp"
#include "veriphrase/text.hpp"

namespace veriphrase {

ClozeQuestion make_cloze_question(const Claim& claim, int phrase_index) {
  if (phrase_index < 0 || static_cast<size_t>(phrase_index) >= claim.phrases.size()) {
    throw ValidationError("cloze: phrase index " + std::to_string(phrase_index) +
                          " out of range for claim '" + claim.id + "'");
  }
  const ClaimPhrase& p = claim.phrases[phrase_index];
  ClozeQuestion q;
  q.phrase_index = phrase_index;
  q.masked_phrase = p.text;
  q.text = claim.text.substr(0, p.start) + kMaskToken + claim.text.substr(p.end);
  return q;
}

namespace {

struct Candidate {
  double score;
  int sentence;
  int start;
  int len;
  std::string answer;
};

// Higher score first; ties by earlier evidence position, then shorter span.
bool better(const Candidate& a, const Candidate& b) {
  return std::tie(b.score, a.sentence, a.start, a.len) <
         std::tie(a.score, b.sentence, b.start, b.len);
}

}  // namespace

std::vector<std::string> answer_question(const ClozeQuestion& question,
                                         const EvidenceSet& evidence, int k,
                                         const AnswererConfig& cfg) {
  if (k < 1) throw ValidationError("answer_question: k must be >= 1");

  const size_t mask_pos = question.text.find(kMaskToken);
  const std::vector<std::string> left_ctx =
      text::lower_tokens(question.text.substr(0, mask_pos));
  const std::vector<std::string> right_ctx =
      text::lower_tokens(question.text.substr(mask_pos + std::string(kMaskToken).size()));

  std::vector<Candidate> candidates;
  for (size_t si = 0; si < evidence.sentences.size(); ++si) {
    const std::vector<text::Token> toks = text::word_tokens(evidence.sentences[si].text);
    std::vector<std::string> lower(toks.size());
    for (size_t i = 0; i < toks.size(); ++i) lower[i] = text::to_lower(toks[i].text);

    for (size_t start = 0; start < toks.size(); ++start) {
      for (int len = 1; len <= cfg.max_span_tokens && start + len <= toks.size(); ++len) {
        double score = 0.0;
        double w = 1.0;
        for (int j = 1; j <= cfg.context_window; ++j, w *= 0.5) {
          if (static_cast<int>(start) - j >= 0 && j <= static_cast<int>(left_ctx.size()) &&
              lower[start - j] == left_ctx[left_ctx.size() - j]) {
            score += w;
          }
        }
        w = 1.0;
        for (int j = 1; j <= cfg.context_window; ++j, w *= 0.5) {
          const size_t ev = start + len + j - 1;
          if (ev < toks.size() && j <= static_cast<int>(right_ctx.size()) &&
              lower[ev] == right_ctx[j - 1]) {
            score += w;
          }
        }
        std::string answer = toks[start].text;
        for (int t = 1; t < len; ++t) answer += " " + toks[start + t].text;
        candidates.push_back({score, static_cast<int>(si), static_cast<int>(start), len,
                              std::move(answer)});
      }
    }
  }

  if (candidates.empty()) return {question.masked_phrase};

  std::sort(candidates.begin(), candidates.end(), better);
  std::vector<std::string> answers;
  for (const Candidate& c : candidates) {
    if (std::find(answers.begin(), answers.end(), c.answer) == answers.end()) {
      answers.push_back(c.answer);
      if (static_cast<int>(answers.size()) == k) break;
    }
  }
  return answers;
}

LocalPremise build_local_premise(const Claim& claim, int phrase_index,
                                 const std::vector<std::string>& answers) {
  if (answers.empty()) throw ValidationError("build_local_premise: empty answer list");
  if (phrase_index < 0 || static_cast<size_t>(phrase_index) >= claim.phrases.size()) {
    throw ValidationError("build_local_premise: phrase index out of range");
  }
  LocalPremise premise;
  premise.phrase_index = phrase_index;
  for (const std::string& a : answers) {
    if (std::find(premise.answers.begin(), premise.answers.end(), a) ==
        premise.answers.end()) {
      premise.answers.push_back(a);
    }
  }
  std::string joined = premise.answers[0];
  for (size_t i = 1; i < premise.answers.size(); ++i) {
    joined += kAnswerSeparator + premise.answers[i];
  }
  const ClaimPhrase& p = claim.phrases[phrase_index];
  premise.text = claim.text.substr(0, p.start) + joined + claim.text.substr(p.end);
  return premise;
}

std::vector<MrcExample> build_mrc_training_set(std::span<const MrcSource> records) {
  std::vector<MrcExample> out;
  for (const MrcSource& r : records) {
    if (r.label != Veracity::Sup) continue;
    std::string context;
    for (const EvidenceSentence& s : r.evidence->sentences) {
      if (!context.empty()) context += " ";
      context += s.text;
    }
    for (size_t i = 0; i < r.claim->phrases.size(); ++i) {
      MrcExample ex;
      ex.question = make_cloze_question(*r.claim, static_cast<int>(i));
      ex.context = context;
      ex.gold_answer = r.claim->phrases[i].text;
      out.push_back(std::move(ex));
    }
  }
  return out;
}

size_t mask_premises(std::span<const Claim> claims,
                     std::span<std::vector<LocalPremise>> premises, double rho,
                     uint64_t seed) {
  if (rho < 0.0 || rho > 1.0) {
    throw ValidationError("mask_premises: rho must be in [0, 1]");
  }
  Rng rng(seed);
  size_t masked = 0;
  for (size_t r = 0; r < premises.size(); ++r) {
    for (LocalPremise& premise : premises[r]) {
      // uniform01() < 1.0 always holds, so rho = 1 masks every slot.
      if (!(rng.uniform01() < rho)) continue;
      const ClaimPhrase& p = claims[r].phrases[premise.phrase_index];
      premise.answers = {kMaskToken};
      premise.text = claims[r].text.substr(0, p.start) + kMaskToken +
                     claims[r].text.substr(p.end);
      ++masked;
    }
  }
  return masked;
}

}  // namespace veriphrase
