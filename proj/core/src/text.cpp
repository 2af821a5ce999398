// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/text.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace veriphrase::text {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace

std::vector<Token> word_tokens(std::string_view s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    if (!is_word_byte(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < s.size() && is_word_byte(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back(Token{std::string(s.substr(i, j - i)), i, j});
    i = j;
  }
  return out;
}

std::vector<std::string> lower_tokens(std::string_view s) {
  std::vector<std::string> out;
  for (const Token& t : word_tokens(s)) out.push_back(to_lower(t.text));
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_capitalized(std::string_view token) {
  return !token.empty() && token[0] >= 'A' && token[0] <= 'Z';
}

bool is_stopword(const std::string& w) {
  static const std::unordered_set<std::string> kStopwords = {
      "a",     "an",    "the",   "of",    "in",    "on",    "at",   "to",
      "for",   "with",  "by",    "from",  "as",    "and",   "or",   "but",
      "not",   "no",    "nor",   "it",    "its",   "his",   "her",  "hers",
      "their", "theirs","our",   "ours",  "your",  "yours", "my",   "mine",
      "this",  "that",  "these", "those", "he",    "she",   "they", "we",
      "you",   "i",     "them",  "him",   "us",    "me",    "there","here",
      "than",  "then",  "so",    "such",  "about", "into",  "over", "under",
      "out",   "up",    "down",  "off",   "only",  "also",  "both", "each",
      "any",   "all",   "some",  "if",    "while", "when",  "where","which",
      "who",   "whom",  "whose", "what",  "how",   "why",   "too",  "again",
      "once",  "per",   "via",   "upon",  "d",     "s",     "t",    "ll",
      "re",    "ve",    "m",
  };
  return kStopwords.contains(w);
}

bool is_article(const std::string& w) { return w == "the" || w == "a" || w == "an"; }

}  // namespace veriphrase::text
