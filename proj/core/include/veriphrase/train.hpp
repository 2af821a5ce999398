// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Mini-batch Adam training of the latent verifier. Fully reproducible:
// the config seed fixes initialization, shuffling, Gumbel noise and the
// pseudo-prior sampling, and records are reduced in a deterministic order.

#pragma once

#include <vector>

#include "veriphrase/decode.hpp"
#include "veriphrase/model.hpp"

namespace veriphrase {

struct EpochStats {
  int epoch = 0;
  double mean_loss = 0.0;
  double val_la = 0.0;  // label accuracy on the held-out slice
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochStats> log;
};

/// Trains on inputs with gold labels. Every 10th record is held out as the
/// validation slice for per-epoch label accuracy (none if the dataset is
/// too small). Throws ValidationError on unlabeled inputs and NumericError
/// on a non-finite loss.
TrainResult train(const std::vector<ModelInput>& inputs, const ParamLayout& layout,
                  const TrainConfig& cfg, const PriorSpec& prior_spec,
                  const PriorData* nli = nullptr);

}  // namespace veriphrase
