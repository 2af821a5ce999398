// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/phrase.hpp"

#include <algorithm>
#include <fstream>

#include "veriphrase/errors.hpp"
#include "veriphrase/text.hpp"

namespace veriphrase {

std::string to_string(PhraseKind k) {
  switch (k) {
    case PhraseKind::NamedEntity: return "NE";
    case PhraseKind::Verb: return "VERB";
    case PhraseKind::NounPhrase: return "NP";
    default: return "ADJ";
  }
}

PhraseKind phrase_kind_from_string(const std::string& s) {
  if (s == "NE") return PhraseKind::NamedEntity;
  if (s == "VERB") return PhraseKind::Verb;
  if (s == "NP") return PhraseKind::NounPhrase;
  if (s == "ADJ") return PhraseKind::Adjective;
  throw ValidationError("unknown phrase kind: '" + s + "'");
}

VerbLexicon load_verb_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open verb lexicon: " + path);
  VerbLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lex.insert(text::to_lower(line));
  }
  return lex;
}

std::vector<ClaimPhrase> heuristic_extract(const std::string& sentence,
                                           const VerbLexicon& verbs) {
  if (sentence.empty()) throw ValidationError("heuristic_extract: empty sentence");

  const std::vector<text::Token> toks = text::word_tokens(sentence);
  const size_t n = toks.size();
  std::vector<bool> claimed(n, false);
  std::vector<ClaimPhrase> out;

  // NE: maximal runs of >= 2 capitalized tokens.
  for (size_t i = 0; i < n;) {
    if (!text::is_capitalized(toks[i].text)) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n && text::is_capitalized(toks[j].text)) ++j;
    if (j - i >= 2) {
      const size_t s = toks[i].start, e = toks[j - 1].end;
      out.push_back({sentence.substr(s, e - s), s, e, PhraseKind::NamedEntity});
      for (size_t k = i; k < j; ++k) claimed[k] = true;
    }
    i = j;
  }

  // VERB: unclaimed tokens present in the lexicon, one span per occurrence.
  for (size_t i = 0; i < n; ++i) {
    if (claimed[i]) continue;
    if (verbs.contains(text::to_lower(toks[i].text))) {
      out.push_back({toks[i].text, toks[i].start, toks[i].end, PhraseKind::Verb});
      claimed[i] = true;
    }
  }

  // NP: within each run of unclaimed tokens, content-word chunks delimited
  // by stopwords; a leading article stays attached to its chunk.
  for (size_t i = 0; i < n;) {
    if (claimed[i]) {
      ++i;
      continue;
    }
    size_t run_end = i;
    while (run_end < n && !claimed[run_end]) ++run_end;
    size_t k = i;
    while (k < run_end) {
      if (text::is_stopword(text::to_lower(toks[k].text))) {
        ++k;
        continue;
      }
      size_t c = k;
      while (c < run_end && !text::is_stopword(text::to_lower(toks[c].text))) ++c;
      size_t first = k;
      if (k > i && text::is_article(text::to_lower(toks[k - 1].text))) first = k - 1;
      const size_t s = toks[first].start, e = toks[c - 1].end;
      out.push_back({sentence.substr(s, e - s), s, e, PhraseKind::NounPhrase});
      k = c;
    }
    i = run_end;
  }

  std::sort(out.begin(), out.end(), [](const ClaimPhrase& a, const ClaimPhrase& b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  });
  return out;
}

std::vector<ClaimPhrase> resolve_phrases(
    const std::string& claim_text,
    const std::optional<std::vector<ClaimPhrase>>& provided, size_t max_phrases,
    const VerbLexicon& verbs) {
  std::vector<ClaimPhrase> phrases;
  if (provided.has_value() && !provided->empty()) {
    for (const ClaimPhrase& p : *provided) {
      if (p.start >= p.end || p.end > claim_text.size()) {
        throw ValidationError("phrase span (" + std::to_string(p.start) + "," +
                              std::to_string(p.end) + ") out of bounds for claim '" +
                              claim_text + "'");
      }
      if (claim_text.substr(p.start, p.end - p.start) != p.text) {
        throw ValidationError("phrase text '" + p.text + "' does not match claim slice '" +
                              claim_text.substr(p.start, p.end - p.start) + "'");
      }
    }
    phrases = *provided;
    std::stable_sort(phrases.begin(), phrases.end(),
                     [](const ClaimPhrase& a, const ClaimPhrase& b) {
                       return a.start != b.start ? a.start < b.start : a.end < b.end;
                     });
    // Dedup identical spans, then prune overlaps keeping the leftmost span.
    std::vector<ClaimPhrase> kept;
    size_t last_end = 0;
    for (const ClaimPhrase& p : phrases) {
      if (!kept.empty() && kept.back().start == p.start && kept.back().end == p.end) continue;
      if (!kept.empty() && p.start < last_end) continue;
      kept.push_back(p);
      last_end = p.end;
    }
    phrases = std::move(kept);
  } else {
    phrases = heuristic_extract(claim_text, verbs);
  }
  if (phrases.size() > max_phrases) phrases.resize(max_phrases);
  return phrases;
}

}  // namespace veriphrase
