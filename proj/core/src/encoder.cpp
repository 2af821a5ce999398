// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "veriphrase/rng.hpp"
#include "veriphrase/text.hpp"

namespace veriphrase {

SparseFeatures featurize_pair(std::string_view text_a, std::string_view text_b,
                              const EncoderConfig& cfg, int token_cap) {
  std::vector<std::string> stream;
  stream.reserve(token_cap);
  for (const std::string& tok : text::lower_tokens(text_a)) {
    if (static_cast<int>(stream.size()) >= token_cap) break;
    stream.push_back("a|" + tok);
  }
  for (const std::string& tok : text::lower_tokens(text_b)) {
    if (static_cast<int>(stream.size()) >= token_cap) break;
    stream.push_back("b|" + tok);
  }

  std::map<int32_t, double> counts;
  std::string key;
  for (size_t i = 0; i < stream.size(); ++i) {
    key = stream[i];
    counts[static_cast<int32_t>(fnv1a64(key) % cfg.n_hash_buckets)] += 1.0;
    for (int order = 2; order <= cfg.ngram_max; ++order) {
      if (i + order > stream.size()) break;
      key += '\x1e';
      key += stream[i + order - 1];
      counts[static_cast<int32_t>(fnv1a64(key) % cfg.n_hash_buckets)] += 1.0;
    }
  }

  double norm = 0.0;
  for (const auto& [bucket, value] : counts) norm += value * value;
  norm = norm > 0.0 ? std::sqrt(norm) : 1.0;

  SparseFeatures out;
  out.reserve(counts.size());
  for (const auto& [bucket, value] : counts) out.emplace_back(bucket, value / norm);
  return out;
}

namespace graph {

std::vector<ad::Var> encode(ad::Tape& t, const ParamLayout& l, const SparseFeatures& x) {
  std::vector<ad::Var> h(l.d);
  for (int j = 0; j < l.d; ++j) {
    ad::Var acc = t.param(l.b_proj + j);
    const int row = l.w_proj + j * l.n_buckets;
    for (const auto& [bucket, value] : x) acc = t.axpy_param(row + bucket, value, acc);
    h[j] = t.tanh_(acc);
  }
  return h;
}

std::vector<ad::Var> self_select(ad::Tape& t, const ParamLayout& l,
                                 std::span<const ad::Var> h) {
  std::vector<ad::Var> out(l.d);
  for (int j = 0; j < l.d; ++j) {
    ad::Var acc = t.constant(0.0);
    const int row = l.w_gate + j * l.d;
    for (int k = 0; k < l.d; ++k) acc = t.fma_param(row + k, h[k], acc);
    out[j] = t.mul(t.sigmoid_(acc), h[j]);
  }
  return out;
}

AttentionOut culprit_attention(ad::Tape& t, const ParamLayout& l,
                               std::span<const ad::Var> h_global,
                               std::span<const std::vector<ad::Var>> h_locals,
                               const std::vector<bool>& mask) {
  AttentionOut out;
  std::vector<size_t> live;
  for (size_t i = 0; i < h_locals.size(); ++i) {
    if (mask.empty() || mask[i]) live.push_back(i);
  }

  std::vector<ad::Var> scores;
  scores.reserve(live.size());
  for (size_t i : live) {
    ad::Var acc = t.constant(0.0);
    for (int k = 0; k < l.d; ++k) acc = t.fma_param(l.w_att + k, h_global[k], acc);
    for (int k = 0; k < l.d; ++k) acc = t.fma_param(l.w_att + l.d + k, h_locals[i][k], acc);
    scores.push_back(acc);
  }
  const std::vector<ad::Var> live_alphas = ad::softmax(t, scores);

  const ad::Var zero = t.constant(0.0);
  out.alphas.assign(h_locals.size(), zero);
  for (size_t k = 0; k < live.size(); ++k) out.alphas[live[k]] = live_alphas[k];

  out.pooled.resize(l.d);
  for (int j = 0; j < l.d; ++j) {
    ad::Var acc = t.constant(0.0);
    for (size_t k = 0; k < live.size(); ++k) {
      acc = t.add(acc, t.mul(live_alphas[k], h_locals[live[k]][j]));
    }
    out.pooled[j] = t.tanh_(acc);
  }
  return out;
}

}  // namespace graph

namespace {

std::vector<double> values_of(const ad::Tape& t, const std::vector<ad::Var>& vars) {
  std::vector<double> out(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) out[i] = t.val(vars[i]);
  return out;
}

std::vector<ad::Var> constants_of(ad::Tape& t, std::span<const double> values) {
  std::vector<ad::Var> out(values.size());
  for (size_t i = 0; i < values.size(); ++i) out[i] = t.constant(values[i]);
  return out;
}

}  // namespace

std::vector<double> encode_pair(std::string_view text_a, std::string_view text_b,
                                const ModelParams& params, const EncoderConfig& cfg,
                                bool global_pair) {
  const int cap = global_pair ? cfg.global_token_cap : cfg.local_token_cap;
  const SparseFeatures x = featurize_pair(text_a, text_b, cfg, cap);
  ad::Tape t(params.theta, nullptr);
  return values_of(t, graph::encode(t, params.layout, x));
}

std::vector<double> self_select(std::span<const double> h, const ModelParams& params) {
  ad::Tape t(params.theta, nullptr);
  return values_of(t, graph::self_select(t, params.layout, constants_of(t, h)));
}

AttentionResult culprit_attention(std::span<const double> h_global,
                                  const std::vector<std::vector<double>>& h_locals,
                                  const std::vector<bool>& mask, const ModelParams& params) {
  ad::Tape t(params.theta, nullptr);
  std::vector<std::vector<ad::Var>> locals(h_locals.size());
  for (size_t i = 0; i < h_locals.size(); ++i) locals[i] = constants_of(t, h_locals[i]);
  const graph::AttentionOut out =
      graph::culprit_attention(t, params.layout, constants_of(t, h_global), locals, mask);
  return {values_of(t, out.pooled), values_of(t, out.alphas)};
}

}  // namespace veriphrase
