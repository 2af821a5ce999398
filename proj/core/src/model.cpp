// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/model.hpp"

#include <cmath>
#include <cstdio>

#include "veriphrase/errors.hpp"

namespace veriphrase {

std::string to_string(PriorKind k) {
  switch (k) {
    case PriorKind::ExternalNli: return "nli";
    case PriorKind::PseudoLogical: return "pseudo";
    default: return "uniform";
  }
}

PriorKind prior_kind_from_string(const std::string& s) {
  if (s == "nli") return PriorKind::ExternalNli;
  if (s == "pseudo") return PriorKind::PseudoLogical;
  if (s == "uniform") return PriorKind::Uniform;
  throw ValidationError("unknown prior kind: '" + s + "' (expected nli|pseudo|uniform)");
}

LatentState LatentState::for_phrases(int n_phrases, int max_phrases) {
  LatentState s;
  s.slots.assign(max_phrases, kNeutralPad);
  s.mask.assign(max_phrases, false);
  for (int i = 0; i < n_phrases && i < max_phrases; ++i) s.mask[i] = true;
  return s;
}

namespace graph {

std::vector<ad::Var> label_embedding(ad::Tape& t, const ParamLayout& l, Veracity y) {
  const int row = l.e_label + static_cast<int>(y) * l.d_label;
  std::vector<ad::Var> emb(l.d_label);
  for (int k = 0; k < l.d_label; ++k) emb[k] = t.param(row + k);
  return emb;
}

namespace {

// tanh hidden layer followed by the shared label-embedding output layer.
Var3 mlp_head(ad::Tape& t, const ParamLayout& l, int w1, int b1,
              std::span<const ad::Var> input) {
  std::vector<ad::Var> hidden(l.d_label);
  const int in_dim = static_cast<int>(input.size());
  for (int j = 0; j < l.d_label; ++j) {
    ad::Var acc = t.param(b1 + j);
    const int row = w1 + j * in_dim;
    for (int k = 0; k < in_dim; ++k) acc = t.fma_param(row + k, input[k], acc);
    hidden[j] = t.tanh_(acc);
  }
  std::array<ad::Var, 3> logits;
  for (int c = 0; c < 3; ++c) {
    ad::Var acc = t.constant(0.0);
    const int row = l.e_label + c * l.d_label;
    for (int k = 0; k < l.d_label; ++k) acc = t.fma_param(row + k, hidden[k], acc);
    logits[c] = acc;
  }
  const std::vector<ad::Var> probs = ad::softmax(t, logits);
  return {probs[0], probs[1], probs[2]};
}

}  // namespace

Var3 phrase_posterior(ad::Tape& t, const ParamLayout& l,
                      std::span<const ad::Var> label_emb,
                      std::span<const ad::Var> h_local,
                      std::span<const ad::Var> h_global) {
  std::vector<ad::Var> input;
  input.reserve(l.q_in_dim());
  input.insert(input.end(), label_emb.begin(), label_emb.end());
  input.insert(input.end(), h_local.begin(), h_local.end());
  input.insert(input.end(), h_global.begin(), h_global.end());
  return mlp_head(t, l, l.w1_q, l.b1_q, input);
}

Var3 claim_classifier(ad::Tape& t, const ParamLayout& l, std::span<const Var3> z,
                      const std::vector<bool>& mask, std::span<const ad::Var> h_global,
                      std::span<const ad::Var> h_local) {
  std::vector<ad::Var> input;
  input.reserve(l.p_in_dim());
  const ad::Var pad = t.constant(1.0 / 3.0);
  for (int slot = 0; slot < l.max_phrases; ++slot) {
    const bool real = slot < static_cast<int>(z.size()) &&
                      (mask.empty() || (slot < static_cast<int>(mask.size()) && mask[slot]));
    if (real) {
      for (int c = 0; c < 3; ++c) input.push_back(z[slot][c]);
    } else {
      for (int c = 0; c < 3; ++c) input.push_back(pad);
    }
  }
  input.insert(input.end(), h_global.begin(), h_global.end());
  input.insert(input.end(), h_local.begin(), h_local.end());
  return mlp_head(t, l, l.w1_p, l.b1_p, input);
}

Var3 soft_aggregate(ad::Tape& t, std::span<const Var3> dists) {
  ad::Var sup = t.constant(1.0);
  ad::Var not_ref = t.constant(1.0);
  const ad::Var one = t.constant(1.0);
  for (const Var3& d : dists) {
    sup = t.mul(sup, d[0]);
    not_ref = t.mul(not_ref, t.sub(one, d[1]));
  }
  const ad::Var ref = t.sub(one, not_ref);
  const ad::Var nei = t.sub(t.sub(one, sup), ref);
  return {sup, ref, nei};
}

ad::Var kl3(ad::Tape& t, const Var3& a, const Var3& b) {
  ad::Var acc = t.constant(0.0);
  for (int c = 0; c < 3; ++c) {
    const ad::Var la = t.log_(t.floor_at(a[c], kProbFloor));
    const ad::Var lb = t.log_(t.floor_at(b[c], kProbFloor));
    acc = t.add(acc, t.mul(a[c], t.sub(la, lb)));
  }
  return acc;
}

ad::Var kl3_const(ad::Tape& t, const Var3& a, const Distribution3& b) {
  const double lb[3] = {std::log(std::max(b.sup, kProbFloor)),
                        std::log(std::max(b.ref, kProbFloor)),
                        std::log(std::max(b.nei, kProbFloor))};
  ad::Var acc = t.constant(0.0);
  for (int c = 0; c < 3; ++c) {
    const ad::Var la = t.log_(t.floor_at(a[c], kProbFloor));
    acc = t.add(acc, t.mul(a[c], t.sub(la, t.constant(lb[c]))));
  }
  return acc;
}

Var3 gumbel_discretize(ad::Tape& t, const Var3& q, double temperature, Rng& rng,
                       DiscretizeMode mode) {
  Var3 perturbed;
  for (int c = 0; c < 3; ++c) {
    perturbed[c] = t.add(t.log_(t.floor_at(q[c], kProbFloor)), t.constant(rng.gumbel()));
  }
  const std::vector<ad::Var> soft = ad::softmax_tempered(t, perturbed, temperature);
  if (mode == DiscretizeMode::Relaxed) return {soft[0], soft[1], soft[2]};

  // Argmax over the perturbed logits; zero-mass categories stay unreachable.
  int best = -1;
  for (int c = 0; c < 3; ++c) {
    if (t.val(q[c]) == 0.0) continue;
    if (best < 0 || t.val(perturbed[c]) > t.val(perturbed[best])) best = c;
  }
  if (best < 0) best = 0;
  Var3 out;
  for (int c = 0; c < 3; ++c) {
    out[c] = t.straight_through(soft[c], c == best ? 1.0 : 0.0);
  }
  return out;
}

EncodedRecord encode_record(ad::Tape& t, const ModelParams& params,
                            const ModelInput& input) {
  const ParamLayout& l = params.layout;
  EncodedRecord enc;
  enc.h_global = self_select(t, l, encode(t, l, input.global_features));
  enc.h_locals.reserve(input.n_phrases);
  for (int i = 0; i < input.n_phrases; ++i) {
    enc.h_locals.push_back(encode(t, l, input.local_features[i]));
  }
  if (input.n_phrases > 0) {
    const std::vector<bool> all_live(input.n_phrases, true);
    AttentionOut att = culprit_attention(t, l, enc.h_global, enc.h_locals, all_live);
    enc.h_pooled = std::move(att.pooled);
    enc.alphas = std::move(att.alphas);
  } else {
    enc.h_pooled.assign(l.d, t.constant(0.0));
  }
  return enc;
}

LossGraph build_loss_graph(ad::Tape& t, const ModelParams& params,
                           const EncodedRecord& enc, Veracity gold,
                           const LatentState& prior, double lambda,
                           double temperature, DiscretizeMode mode, Rng& noise) {
  const ParamLayout& l = params.layout;
  const int n = static_cast<int>(enc.h_locals.size());
  LossGraph g;

  const std::vector<ad::Var> emb = label_embedding(t, l, gold);
  std::vector<Var3> z_tilde;
  g.q.reserve(n);
  z_tilde.reserve(n);
  g.kl_prior = t.constant(0.0);
  for (int i = 0; i < n; ++i) {
    const Var3 qi = phrase_posterior(t, l, emb, enc.h_locals[i], enc.h_global);
    g.q.push_back(qi);
    z_tilde.push_back(gumbel_discretize(t, qi, temperature, noise, mode));
    g.kl_prior = t.add(g.kl_prior, kl3_const(t, qi, prior.slots[i]));
  }

  const std::vector<bool> all_real(n, true);
  g.p_out = claim_classifier(t, l, z_tilde, all_real, enc.h_global, enc.h_pooled);
  g.recon = t.neg(t.log_(t.floor_at(g.p_out[static_cast<int>(gold)], kProbFloor)));
  g.l_var = t.add(g.recon, g.kl_prior);

  if (lambda > 0.0 && n > 0) {
    const Var3 teacher = soft_aggregate(t, g.q);
    g.l_logic = kl3(t, g.p_out, teacher);
  } else {
    g.l_logic = t.constant(0.0);
  }
  g.l_final = t.add(t.mul(t.constant(1.0 - lambda), g.l_var),
                    t.mul(t.constant(lambda), g.l_logic));
  return g;
}

}  // namespace graph

namespace {

std::vector<ad::Var> constants_of(ad::Tape& t, std::span<const double> values) {
  std::vector<ad::Var> out(values.size());
  for (size_t i = 0; i < values.size(); ++i) out[i] = t.constant(values[i]);
  return out;
}

Distribution3 dist_of(const ad::Tape& t, const graph::Var3& v) {
  return {t.val(v[0]), t.val(v[1]), t.val(v[2])};
}

double kl_value(const Distribution3& a, const Distribution3& b, bool warn) {
  const double av[3] = {a.sup, a.ref, a.nei};
  const double bv[3] = {b.sup, b.ref, b.nei};
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    if (av[c] <= 0.0) continue;
    if (warn && bv[c] < kProbFloor) {
      std::fprintf(stderr,
                   "veriphrase: warning: prior mass ~0 where posterior mass is %g; "
                   "KL floored at %g\n",
                   av[c], kProbFloor);
    }
    acc += av[c] * (std::log(std::max(av[c], kProbFloor)) -
                    std::log(std::max(bv[c], kProbFloor)));
  }
  return acc;
}

}  // namespace

LatentState posterior_q(Veracity y, const std::vector<std::vector<double>>& h_locals,
                        std::span<const double> h_global, const ModelParams& params) {
  const ParamLayout& l = params.layout;
  ad::Tape t(params.theta, nullptr);
  const std::vector<ad::Var> emb = graph::label_embedding(t, l, y);
  const std::vector<ad::Var> hg = constants_of(t, h_global);
  LatentState state = LatentState::for_phrases(static_cast<int>(h_locals.size()),
                                               l.max_phrases);
  for (size_t i = 0; i < h_locals.size(); ++i) {
    const graph::Var3 qi =
        graph::phrase_posterior(t, l, emb, constants_of(t, h_locals[i]), hg);
    state.slots[i] = dist_of(t, qi);
  }
  return state;
}

Distribution3 classifier_p(const LatentState& z, std::span<const double> h_global,
                           std::span<const double> h_local, const ModelParams& params) {
  const ParamLayout& l = params.layout;
  ad::Tape t(params.theta, nullptr);
  std::vector<graph::Var3> slots(z.slots.size());
  for (size_t i = 0; i < z.slots.size(); ++i) {
    slots[i] = {t.constant(z.slots[i].sup), t.constant(z.slots[i].ref),
                t.constant(z.slots[i].nei)};
  }
  std::vector<bool> mask = z.mask;
  const graph::Var3 p = graph::claim_classifier(t, l, slots, mask,
                                                constants_of(t, h_global),
                                                constants_of(t, h_local));
  return dist_of(t, p);
}

GumbelSample gumbel_discretize(const Distribution3& d, double temperature, Rng& rng) {
  if (temperature <= 0.0) throw ValidationError("gumbel_discretize: temperature must be > 0");
  const double p[3] = {d.sup, d.ref, d.nei};
  double perturbed[3];
  for (int c = 0; c < 3; ++c) {
    perturbed[c] = std::log(std::max(p[c], kProbFloor)) + rng.gumbel();
  }
  int best = -1;
  for (int c = 0; c < 3; ++c) {
    if (p[c] == 0.0) continue;
    if (best < 0 || perturbed[c] > perturbed[best]) best = c;
  }
  if (best < 0) best = 0;

  double m = std::max({perturbed[0], perturbed[1], perturbed[2]});
  double e[3], z = 0.0;
  for (int c = 0; c < 3; ++c) {
    e[c] = std::exp((perturbed[c] - m) / temperature);
    z += e[c];
  }
  GumbelSample out;
  out.category = static_cast<Veracity>(best);
  out.hard = Distribution3::one_hot(out.category);
  out.surrogate = {e[0] / z, e[1] / z, e[2] / z};
  return out;
}

double elbo_loss(Veracity y_star, const LatentState& q, const LatentState& prior,
                 const Distribution3& p_out_under_sample) {
  if (q.slots.size() != prior.slots.size()) {
    throw ValidationError("elbo_loss: posterior and prior slot counts differ");
  }
  double loss = -std::log(std::max(p_out_under_sample[y_star], kProbFloor));
  for (size_t i = 0; i < q.slots.size(); ++i) {
    if (!q.mask[i]) continue;
    loss += kl_value(q.slots[i], prior.slots[i], /*warn=*/true);
  }
  return loss;
}

double distillation_loss(const Distribution3& p_out, const Distribution3& teacher) {
  return kl_value(p_out, teacher, /*warn=*/false);
}

double final_loss(double lambda, double l_var, double l_logic) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw ValidationError("final_loss: lambda must be in [0, 1]");
  }
  return (1.0 - lambda) * l_var + lambda * l_logic;
}

LatentState make_prior(const PriorSpec& spec, Veracity gold_label, int n_phrases,
                       int max_phrases, std::span<const double> alphas,
                       const PriorData* nli, const std::string& record_id, Rng& rng) {
  constexpr Distribution3 kPeakedSup{0.8, 0.1, 0.1};
  constexpr Distribution3 kPeakedRef{0.1, 0.8, 0.1};
  constexpr Distribution3 kPeakedNei{0.1, 0.1, 0.8};
  constexpr Distribution3 kPeakedNonRef{0.45, 0.1, 0.45};

  LatentState prior = LatentState::for_phrases(n_phrases, max_phrases);
  switch (spec.kind) {
    case PriorKind::Uniform:
      for (int i = 0; i < n_phrases; ++i) prior.slots[i] = Distribution3::uniform();
      break;
    case PriorKind::ExternalNli: {
      if (nli == nullptr) throw ValidationError("nli prior requested but no prior data loaded");
      auto rec = nli->find(record_id);
      for (int i = 0; i < n_phrases; ++i) {
        if (rec == nli->end() || !rec->second.contains(i)) {
          throw ValidationError("nli prior missing entry for record '" + record_id +
                                "' phrase " + std::to_string(i));
        }
        prior.slots[i] = rec->second.at(i);
      }
      break;
    }
    case PriorKind::PseudoLogical: {
      switch (gold_label) {
        case Veracity::Sup:
          for (int i = 0; i < n_phrases; ++i) prior.slots[i] = kPeakedSup;
          break;
        case Veracity::Ref: {
          for (int i = 0; i < n_phrases; ++i) prior.slots[i] = kPeakedNonRef;
          std::vector<double> w(alphas.begin(), alphas.begin() + n_phrases);
          // Single culprits dominate refuted claims; two are the exception.
          int culprits = 1 + (rng.uniform01() < 0.3 ? 1 : 0);
          if (culprits > n_phrases) culprits = n_phrases;
          for (int c = 0; c < culprits; ++c) {
            const size_t pick = rng.categorical(w);
            prior.slots[pick] = kPeakedRef;
            w[pick] = 0.0;
          }
          break;
        }
        case Veracity::Nei: {
          for (int i = 0; i < n_phrases; ++i) prior.slots[i] = kPeakedSup;
          if (n_phrases > 0) {
            std::vector<double> w(alphas.begin(), alphas.begin() + n_phrases);
            prior.slots[rng.categorical(w)] = kPeakedNei;
          }
          break;
        }
      }
      break;
    }
  }
  return prior;
}

}  // namespace veriphrase
