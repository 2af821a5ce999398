// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/decode.hpp"

#include <algorithm>

namespace veriphrase {

namespace {

struct DecodeState {
  Veracity y;
  std::vector<Veracity> z;
  bool operator==(const DecodeState& other) const = default;
};

Distribution3 dist_of(const ad::Tape& t, const graph::Var3& v) {
  return {t.val(v[0]), t.val(v[1]), t.val(v[2])};
}

}  // namespace

LatentState init_latent(int n_phrases, int max_phrases, Rng& rng) {
  LatentState state = LatentState::for_phrases(n_phrases, max_phrases);
  for (int i = 0; i < n_phrases; ++i) {
    const auto p = rng.simplex3();
    state.slots[i] = {p[0], p[1], p[2]};
  }
  return state;
}

VerificationResult verify(const ModelInput& input, const ModelParams& params,
                          const DecodeConfig& cfg) {
  const ParamLayout& l = params.layout;
  Rng rng(cfg.seed ^ fnv1a64(input.id));

  ad::Tape t(params.theta, nullptr);
  const graph::EncodedRecord enc = graph::encode_record(t, params, input);

  VerificationResult out;
  out.id = input.id;
  out.attention.resize(enc.alphas.size());
  for (size_t i = 0; i < enc.alphas.size(); ++i) out.attention[i] = t.val(enc.alphas[i]);

  const int n = input.n_phrases;
  if (n == 0) {
    // Degenerate path: no latents to alternate over.
    const graph::Var3 p = graph::claim_classifier(t, l, {}, {}, enc.h_global, enc.h_pooled);
    out.claim_dist = dist_of(t, p);
    out.claim_label = out.claim_dist.argmax();
    out.aggregate_soft = Distribution3::one_hot(Veracity::Sup);  // vacuous
    out.aggregate_hard = Veracity::Sup;
    out.iterations = 1;
    out.converged = true;
    out.no_phrases = true;
    return out;
  }

  std::vector<Distribution3> z(n);
  {
    const LatentState init = init_latent(n, l.max_phrases, rng);
    for (int i = 0; i < n; ++i) z[i] = init.slots[i];
  }

  const std::vector<bool> all_real(n, true);
  std::vector<DecodeState> seen;
  Distribution3 claim_dist;
  Veracity y = Veracity::Nei;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    out.iterations = iter;

    std::vector<graph::Var3> z_hard(n);
    for (int i = 0; i < n; ++i) {
      const Distribution3 oh = Distribution3::one_hot(z[i].argmax());
      z_hard[i] = {t.constant(oh.sup), t.constant(oh.ref), t.constant(oh.nei)};
    }
    const graph::Var3 p =
        graph::claim_classifier(t, l, z_hard, all_real, enc.h_global, enc.h_pooled);
    claim_dist = dist_of(t, p);
    y = claim_dist.argmax();

    const std::vector<ad::Var> emb = graph::label_embedding(t, l, y);
    for (int i = 0; i < n; ++i) {
      const graph::Var3 qi =
          graph::phrase_posterior(t, l, emb, enc.h_locals[i], enc.h_global);
      z[i] = dist_of(t, qi);
    }

    DecodeState state{y, {}};
    state.z.resize(n);
    for (int i = 0; i < n; ++i) state.z[i] = z[i].argmax();

    if (!seen.empty() && state == seen.back()) {
      out.converged = true;
      break;
    }
    if (std::find(seen.begin(), seen.end(), state) != seen.end()) {
      out.converged = false;  // cycle of length > 1
      break;
    }
    seen.push_back(std::move(state));
  }

  out.claim_dist = claim_dist;
  out.claim_label = y;
  out.phrase_dists = z;
  out.phrase_labels.resize(n);
  for (int i = 0; i < n; ++i) {
    out.phrase_labels[i] = z[i].argmax();
    if (out.phrase_labels[i] == Veracity::Ref) out.culprits.push_back(i);
  }
  out.aggregate_soft = soft_aggregate(out.phrase_dists);
  out.aggregate_hard = hard_aggregate(out.phrase_labels);
  return out;
}

}  // namespace veriphrase
