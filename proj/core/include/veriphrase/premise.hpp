// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Local premise construction. Each claim phrase is masked into a cloze
// question, the evidence is probed for answer spans, and the answers are
// substituted back into the claim. The resulting local premise is the
// context against which that phrase's veracity is judged.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "veriphrase/phrase.hpp"
#include "veriphrase/rng.hpp"
#include "veriphrase/veracity.hpp"

namespace veriphrase {

inline constexpr const char* kMaskToken = "[MASK]";
inline constexpr const char* kAnswerSeparator = " / ";

struct EvidenceSentence {
  std::string page_id;
  int line_no = 0;
  std::string text;
};

/// Pre-retrieved evidence; may be empty only for NEI-labeled records.
struct EvidenceSet {
  std::vector<EvidenceSentence> sentences;
  bool empty() const { return sentences.empty(); }
};

struct ClozeQuestion {
  std::string text;           // claim with exactly one "[MASK]"
  int phrase_index = 0;
  std::string masked_phrase;  // original span text, needed for reconstruction
};

struct LocalPremise {
  int phrase_index = 0;
  std::vector<std::string> answers;  // ranked, deduplicated
  std::string text;                  // claim with the span replaced by the answers
};

struct MrcExample {
  ClozeQuestion question;
  std::string context;      // concatenated evidence text
  std::string gold_answer;  // the masked phrase
};

struct AnswererConfig {
  int max_span_tokens = 6;   // candidate spans of 1..L evidence tokens
  int context_window = 3;    // tokens compared on each side of the slot
};

/// Replaces the phrase span verbatim with "[MASK]".
/// Throws ValidationError on an out-of-range index.
ClozeQuestion make_cloze_question(const Claim& claim, int phrase_index);

/// Baseline extractive answerer. Every span of 1..L tokens in the evidence
/// is scored by weighted context overlap: for offsets j = 1..W on each side
/// of the slot, a match between the j-th evidence token and the j-th cloze
/// token (case-folded) contributes 2^(1-j). Ties break toward the earlier
/// evidence position, then the shorter span. Returns up to k distinct
/// answers; with no evidence tokens it echoes the masked phrase.
/// Throws ValidationError when k < 1.
std::vector<std::string> answer_question(const ClozeQuestion& question,
                                         const EvidenceSet& evidence, int k,
                                         const AnswererConfig& cfg = {});

/// Substitutes the ranked answers (deduplicated, joined by " / ") for the
/// phrase span. Throws ValidationError on empty answers.
LocalPremise build_local_premise(const Claim& claim, int phrase_index,
                                 const std::vector<std::string>& answers);

struct MrcSource {
  const Claim* claim = nullptr;
  const EvidenceSet* evidence = nullptr;
  Veracity label = Veracity::Nei;
};

/// Self-supervised reading-comprehension set: one example per phrase of
/// every SUP-labeled record; REF/NEI records contribute nothing.
std::vector<MrcExample> build_mrc_training_set(std::span<const MrcSource> records);

/// Independently masks each premise's answer slot with probability rho,
/// replacing it with "[MASK]". claims[i] provides the spans for premises[i].
/// Returns the number of masked premises. Throws ValidationError unless
/// 0 <= rho <= 1.
size_t mask_premises(std::span<const Claim> claims,
                     std::span<std::vector<LocalPremise>> premises, double rho,
                     uint64_t seed);

}  // namespace veriphrase
