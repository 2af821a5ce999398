// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Deterministic text-pair featurization and the encoder-side graph pieces:
// hashed n-gram features with a learned tanh projection, an elementwise
// sigmoid gate, and attention pooling of the per-phrase vectors against
// the global vector.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "veriphrase/autodiff.hpp"
#include "veriphrase/params.hpp"

namespace veriphrase {

struct EncoderConfig {
  int d = 64;
  int n_hash_buckets = 4096;
  int ngram_max = 2;          // word n-gram orders 1..ngram_max
  int global_token_cap = 256; // (claim, evidence) pair, total tagged tokens
  int local_token_cap = 128;  // (claim, premise) pair
};

/// Sorted (bucket, value) pairs; values are l2-normalized n-gram counts.
using SparseFeatures = std::vector<std::pair<int32_t, double>>;

/// Hashed bag of word n-grams over the side-tagged token stream
/// "a|tok ... b|tok ...", truncated to cap tokens.
SparseFeatures featurize_pair(std::string_view text_a, std::string_view text_b,
                              const EncoderConfig& cfg, int token_cap);

// Tape-level graph builders shared by training and decoding.
namespace graph {

/// tanh(W_proj x + b_proj) for sparse features x.
std::vector<ad::Var> encode(ad::Tape& t, const ParamLayout& l, const SparseFeatures& x);

/// Elementwise gate: sigmoid(W_gate h) ⊙ h.
std::vector<ad::Var> self_select(ad::Tape& t, const ParamLayout& l,
                                 std::span<const ad::Var> h);

struct AttentionOut {
  std::vector<ad::Var> pooled;  // tanh of the attention-weighted sum
  std::vector<ad::Var> alphas;  // over unmasked positions, sums to 1
};

/// alpha_i = softmax_i(w_att . [h_global; h_local_i]); masked positions are
/// excluded before the softmax and get alpha = 0. An empty mask means all
/// positions are live.
AttentionOut culprit_attention(ad::Tape& t, const ParamLayout& l,
                               std::span<const ad::Var> h_global,
                               std::span<const std::vector<ad::Var>> h_locals,
                               const std::vector<bool>& mask);

}  // namespace graph

// Value-level surface (forward only, no gradients retained).

std::vector<double> encode_pair(std::string_view text_a, std::string_view text_b,
                                const ModelParams& params, const EncoderConfig& cfg,
                                bool global_pair);

std::vector<double> self_select(std::span<const double> h, const ModelParams& params);

struct AttentionResult {
  std::vector<double> pooled;
  std::vector<double> alphas;
};

AttentionResult culprit_attention(std::span<const double> h_global,
                                  const std::vector<std::vector<double>>& h_locals,
                                  const std::vector<bool>& mask, const ModelParams& params);

}  // namespace veriphrase
