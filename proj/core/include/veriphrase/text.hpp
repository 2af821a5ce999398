// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Byte-level tokenization shared by phrase extraction, the span answerer
// and the featurizer. Tokens are maximal ASCII alphanumeric runs; offsets
// are byte offsets into the original string (non-ASCII bytes act as
// separators).

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace veriphrase::text {

struct Token {
  std::string text;
  size_t start = 0;  // byte offset, half-open [start, end)
  size_t end = 0;
};

std::vector<Token> word_tokens(std::string_view s);

/// Lowercased token strings, offsets dropped.
std::vector<std::string> lower_tokens(std::string_view s);

std::string to_lower(std::string_view s);

/// First byte is an ASCII uppercase letter.
bool is_capitalized(std::string_view token);

/// Small closed-class list (articles, prepositions, pronouns, auxiliaries).
bool is_stopword(const std::string& lower_token);

/// "the", "a", "an".
bool is_article(const std::string& lower_token);

}  // namespace veriphrase::text
