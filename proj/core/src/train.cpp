// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/train.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "veriphrase/errors.hpp"

namespace veriphrase {

namespace {

struct Adam {
  std::vector<double> m, v;
  int step = 0;
  double lr;
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;

  Adam(size_t n, double learning_rate) : m(n, 0.0), v(n, 0.0), lr(learning_rate) {}

  void update(std::vector<double>& theta, const std::vector<double>& grad) {
    ++step;
    const double bc1 = 1.0 - std::pow(kBeta1, step);
    const double bc2 = 1.0 - std::pow(kBeta2, step);
    for (size_t i = 0; i < theta.size(); ++i) {
      m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * grad[i];
      v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      theta[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + kEps);
    }
  }
};

}  // namespace

TrainResult train(const std::vector<ModelInput>& inputs, const ParamLayout& layout,
                  const TrainConfig& cfg, const PriorSpec& prior_spec,
                  const PriorData* nli) {
  if (cfg.lambda < 0.0 || cfg.lambda > 1.0) {
    throw ValidationError("train: lambda must be in [0, 1]");
  }
  if (inputs.empty()) throw ValidationError("train: empty dataset");
  for (const ModelInput& in : inputs) {
    if (!in.has_gold) throw ValidationError("train: record '" + in.id + "' has no gold label");
  }
  if (prior_spec.kind == PriorKind::ExternalNli && nli == nullptr) {
    throw ValidationError("train: nli prior requires a loaded prior file");
  }

  TrainResult result;
  result.params = init_params(layout, cfg.seed);
  std::vector<double>& theta = result.params.theta;
  std::vector<double> grad(layout.total, 0.0);
  Adam adam(layout.total, cfg.learning_rate);

  // Distinct deterministic streams per role.
  Rng shuffle_rng(cfg.seed * 0x9E3779B97F4A7C15ull + 1);
  Rng noise_rng(cfg.seed * 0xBF58476D1CE4E5B9ull + 2);
  Rng prior_rng(prior_spec.seed.value_or(cfg.seed * 0x94D049BB133111EBull + 3));

  std::vector<size_t> train_idx, val_idx;
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (inputs.size() >= 20 && i % 10 == 9) {
      val_idx.push_back(i);
    } else {
      train_idx.push_back(i);
    }
  }

  ad::Tape tape(theta, &grad);
  tape.reserve(1 << 16);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(train_idx);
    double loss_sum = 0.0;

    for (size_t batch_start = 0; batch_start < train_idx.size();
         batch_start += cfg.batch_size) {
      const size_t batch_end =
          std::min(batch_start + cfg.batch_size, train_idx.size());
      const double inv_n = 1.0 / static_cast<double>(batch_end - batch_start);
      std::fill(grad.begin(), grad.end(), 0.0);

      for (size_t bi = batch_start; bi < batch_end; ++bi) {
        const ModelInput& input = inputs[train_idx[bi]];
        tape.reset();
        const graph::EncodedRecord enc = graph::encode_record(tape, result.params, input);

        std::vector<double> alphas(input.n_phrases);
        for (int i = 0; i < input.n_phrases; ++i) alphas[i] = tape.val(enc.alphas[i]);
        const LatentState prior =
            make_prior(prior_spec, input.gold, input.n_phrases, layout.max_phrases,
                       alphas, nli, input.id, prior_rng);

        const graph::LossGraph g = graph::build_loss_graph(
            tape, result.params, enc, input.gold, prior, cfg.lambda,
            cfg.gumbel_temperature, DiscretizeMode::StraightThrough, noise_rng);
        const double loss = tape.val(g.l_final);
        if (!std::isfinite(loss)) {
          throw NumericError("train: non-finite loss " + std::to_string(loss) +
                             " at epoch " + std::to_string(epoch) + ", record '" +
                             input.id + "'");
        }
        loss_sum += loss;
        tape.backward(g.l_final);
      }

      for (double& gval : grad) gval *= inv_n;
      adam.update(theta, grad);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.mean_loss = loss_sum / static_cast<double>(train_idx.size());
    if (!val_idx.empty()) {
      int hits = 0;
      for (size_t vi : val_idx) {
        const VerificationResult r =
            verify(inputs[vi], result.params, DecodeConfig{10, cfg.seed});
        hits += r.claim_label == inputs[vi].gold ? 1 : 0;
      }
      stats.val_la = static_cast<double>(hits) / static_cast<double>(val_idx.size());
    }
    result.log.push_back(stats);
  }
  return result;
}

}  // namespace veriphrase
