// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// The logic-regularized latent verifier. Phrase veracities are three-valued
// latent variables: a posterior head predicts them per phrase conditioned
// on the claim label, a classifier head predicts the claim label from the
// discretized latents, and a soft-logic aggregation of the posterior acts
// as a teacher whose KL to the classifier distills the aggregation rules.
//
// Loss for one record with gold label y*:
//   l_var   = -log p(y* | z~, x) + sum_i KL(q(z_i) || prior(z_i))
//   l_logic = KL(p(y | z~, x) || soft_aggregate(q))
//   l_final = (1 - lambda) * l_var + lambda * l_logic
// where z~ is a straight-through Gumbel sample from q.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veriphrase/autodiff.hpp"
#include "veriphrase/encoder.hpp"
#include "veriphrase/params.hpp"
#include "veriphrase/rng.hpp"
#include "veriphrase/veracity.hpp"

namespace veriphrase {

inline constexpr double kProbFloor = 1e-8;  // floor inside every KL / log
inline constexpr Distribution3 kNeutralPad{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

enum class PriorKind : uint8_t { ExternalNli, PseudoLogical, Uniform };
std::string to_string(PriorKind k);
PriorKind prior_kind_from_string(const std::string& s);

struct PriorSpec {
  PriorKind kind = PriorKind::PseudoLogical;
  std::string source;  // triples file, required for ExternalNli
  std::optional<uint64_t> seed;
};

struct TrainConfig {
  double lambda = 0.5;  // weight of the distillation term, in [0, 1]
  double learning_rate = 1e-3;
  int batch_size = 32;
  int epochs = 20;
  double gumbel_temperature = 1.0;
  uint64_t seed = 42;
};

/// Per-phrase latent distributions padded to max_phrases. Masked (padding)
/// slots are inert: excluded from losses, aggregation and attention.
struct LatentState {
  std::vector<Distribution3> slots;
  std::vector<bool> mask;  // true = real phrase

  int n_real() const {
    int n = 0;
    for (bool m : mask) n += m ? 1 : 0;
    return n;
  }

  static LatentState for_phrases(int n_phrases, int max_phrases);
};

/// External per-phrase prior triples: record id -> phrase index -> triple.
using PriorData = std::map<std::string, std::map<int, Distribution3>>;

/// One record as the model consumes it: cached features, no text.
struct ModelInput {
  std::string id;
  bool has_gold = false;
  Veracity gold = Veracity::Nei;
  int n_phrases = 0;
  SparseFeatures global_features;
  std::vector<SparseFeatures> local_features;  // one per phrase
};

enum class DiscretizeMode : uint8_t {
  StraightThrough,  // forward one-hot, backward tempered-softmax surrogate
  Relaxed,          // forward the surrogate too (used for gradient checks)
};

namespace graph {

using Var3 = std::array<ad::Var, 3>;

std::vector<ad::Var> label_embedding(ad::Tape& t, const ParamLayout& l, Veracity y);

/// q(z_i | y, x): softmax over the shared label embeddings applied to a
/// tanh hidden layer of [label_embedding(y); h_local_i; h_global].
Var3 phrase_posterior(ad::Tape& t, const ParamLayout& l,
                      std::span<const ad::Var> label_emb,
                      std::span<const ad::Var> h_local,
                      std::span<const ad::Var> h_global);

/// p(y | z, x): same structure over [flatten(z, padded); h_global; h_local].
/// Positions with mask false (and positions beyond z.size()) are replaced
/// by the fixed neutral pad, so pad content can never leak in.
Var3 claim_classifier(ad::Tape& t, const ParamLayout& l, std::span<const Var3> z,
                      const std::vector<bool>& mask, std::span<const ad::Var> h_global,
                      std::span<const ad::Var> h_local);

/// Product t-norm aggregation, differentiable twin of logic soft_aggregate.
Var3 soft_aggregate(ad::Tape& t, std::span<const Var3> dists);

/// KL(a || b) over three categories, both ends floored at kProbFloor.
ad::Var kl3(ad::Tape& t, const Var3& a, const Var3& b);

/// KL(a || b) with a constant right-hand side.
ad::Var kl3_const(ad::Tape& t, const Var3& a, const Distribution3& b);

/// Straight-through Gumbel discretization of a simplex triple.
/// Categories with exactly zero mass are never selected in the forward pass.
Var3 gumbel_discretize(ad::Tape& t, const Var3& q, double temperature, Rng& rng,
                       DiscretizeMode mode);

struct EncodedRecord {
  std::vector<ad::Var> h_global;                // gated global vector
  std::vector<std::vector<ad::Var>> h_locals;   // per phrase
  std::vector<ad::Var> h_pooled;                // culprit-attention pool
  std::vector<ad::Var> alphas;                  // size n_phrases
};

EncodedRecord encode_record(ad::Tape& t, const ModelParams& params,
                            const ModelInput& input);

struct LossGraph {
  std::vector<Var3> q;          // per real phrase
  Var3 p_out;
  ad::Var recon = ad::kNoVar;   // -log p(y* | z~, x)
  ad::Var kl_prior = ad::kNoVar;
  ad::Var l_var = ad::kNoVar;
  ad::Var l_logic = ad::kNoVar;
  ad::Var l_final = ad::kNoVar;
};

/// Builds the full per-record training loss on the tape. The prior is
/// treated as constant data. With lambda = 0 the distillation term is not
/// built at all, so it cannot influence gradients.
LossGraph build_loss_graph(ad::Tape& t, const ModelParams& params,
                           const EncodedRecord& enc, Veracity gold,
                           const LatentState& prior, double lambda,
                           double temperature, DiscretizeMode mode, Rng& noise);

}  // namespace graph

// Value-level surface.

/// Per-phrase posterior given the conditioning label. h_locals carries one
/// vector per real phrase; the result is padded to max_phrases.
LatentState posterior_q(Veracity y, const std::vector<std::vector<double>>& h_locals,
                        std::span<const double> h_global, const ModelParams& params);

/// Claim-label distribution from discretized latents. Masked slot content
/// is ignored and replaced by the neutral pad.
Distribution3 classifier_p(const LatentState& z, std::span<const double> h_global,
                           std::span<const double> h_local, const ModelParams& params);

struct GumbelSample {
  Distribution3 hard;       // exact one-hot
  Distribution3 surrogate;  // tempered softmax of the same perturbed logits
  Veracity category;
};

GumbelSample gumbel_discretize(const Distribution3& d, double temperature, Rng& rng);

/// -E_q[log p(y*|z,x)] (single-sample, already evaluated by the caller as
/// p_out_under_sample) plus the closed-form KL to the prior, summed over
/// unmasked slots. Emits a stderr warning when the prior is zero where q
/// is not; the floor keeps the value finite.
double elbo_loss(Veracity y_star, const LatentState& q, const LatentState& prior,
                 const Distribution3& p_out_under_sample);

/// KL(p_out || teacher), floored.
double distillation_loss(const Distribution3& p_out, const Distribution3& teacher);

/// (1 - lambda) * l_var + lambda * l_logic. Throws ValidationError when
/// lambda is outside [0, 1].
double final_loss(double lambda, double l_var, double l_logic);

/// Prior construction per record; alphas drive the pseudo-logical culprit
/// sampling. nli may be null unless spec.kind == ExternalNli.
LatentState make_prior(const PriorSpec& spec, Veracity gold_label, int n_phrases,
                       int max_phrases, std::span<const double> alphas,
                       const PriorData* nli, const std::string& record_id, Rng& rng);

}  // namespace veriphrase
