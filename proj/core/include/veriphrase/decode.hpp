// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Iterative inference: start from a random latent assignment, then
// alternate the claim classifier (y from discretized z) and the phrase
// posterior (z from y) until the discrete (y, argmax z) state repeats.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "veriphrase/model.hpp"
#include "veriphrase/veracity.hpp"

namespace veriphrase {

struct VerificationResult {
  std::string id;
  Distribution3 claim_dist;                  // final classifier output
  Veracity claim_label = Veracity::Nei;
  std::vector<Distribution3> phrase_dists;   // final per-phrase posteriors
  std::vector<Veracity> phrase_labels;
  Distribution3 aggregate_soft;              // soft aggregation of phrase_dists
  Veracity aggregate_hard = Veracity::Nei;   // hard aggregation of phrase_labels
  std::vector<double> attention;
  int iterations = 0;
  bool converged = false;
  bool no_phrases = false;
  std::vector<int> culprits;                 // indices with argmax z = REF
};

struct DecodeConfig {
  int max_iters = 10;
  uint64_t seed = 0;  // mixed with the record id for per-record streams
};

/// Each real slot drawn uniformly from the simplex.
LatentState init_latent(int n_phrases, int max_phrases, Rng& rng);

/// Runs the alternating decode. An exact repeat of the previous discrete
/// state is convergence; revisiting an older state is a cycle and leaves
/// converged = false. Records without phrases are classified from the
/// global vector alone and flagged no_phrases, with a vacuous all-SUP
/// aggregate.
VerificationResult verify(const ModelInput& input, const ModelParams& params,
                          const DecodeConfig& cfg);

}  // namespace veriphrase
