// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Claim decomposition: a claim sentence plus the ordered phrase spans the
// verifier judges individually. Spans come from annotations when the input
// carries them, otherwise from a deterministic heuristic over
// capitalization, a verb lexicon and stopword boundaries.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace veriphrase {

enum class PhraseKind : uint8_t { NamedEntity, Verb, NounPhrase, Adjective };

/// Wire names: "NE" / "VERB" / "NP" / "ADJ".
std::string to_string(PhraseKind k);
PhraseKind phrase_kind_from_string(const std::string& s);

struct ClaimPhrase {
  std::string text;
  size_t start = 0;  // byte offsets, half-open
  size_t end = 0;
  PhraseKind kind = PhraseKind::NounPhrase;
};

struct Claim {
  std::string id;
  std::string text;
  std::vector<ClaimPhrase> phrases;
};

using VerbLexicon = std::unordered_set<std::string>;

/// One lowercase token per line, UTF-8; '#' lines are comments.
VerbLexicon load_verb_lexicon(const std::string& path);

/// Deterministic surrogate phrase extraction:
///   - runs of two or more capitalized tokens become NE spans;
///   - remaining tokens found in the verb lexicon become VERB spans;
///   - remaining content-word runs (stopword-delimited, but keeping a
///     leading article) become NP spans.
/// Output is ordered by span position and never overlaps. May be empty.
/// Throws ValidationError on an empty sentence.
std::vector<ClaimPhrase> heuristic_extract(const std::string& sentence,
                                           const VerbLexicon& verbs);

/// Annotation-first resolution: validates and keeps provided spans
/// (deduplicated, overlaps pruned keeping the leftmost span), otherwise
/// falls back to heuristic_extract. Truncates to the first max_phrases.
/// Throws ValidationError when a provided span does not match its slice.
std::vector<ClaimPhrase> resolve_phrases(
    const std::string& claim_text,
    const std::optional<std::vector<ClaimPhrase>>& provided, size_t max_phrases,
    const VerbLexicon& verbs);

}  // namespace veriphrase
