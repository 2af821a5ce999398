// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Run configuration shared by the CLI commands: encoder, training, prior
// and pipeline knobs, loadable from a flat key=value file with per-key
// overrides.

#pragma once

#include <string>

#include "veriphrase/encoder.hpp"
#include "veriphrase/model.hpp"
#include "veriphrase/premise.hpp"

namespace veriphrase {

struct RunConfig {
  EncoderConfig encoder;
  int d_label = 0;  // 0 means "same as encoder.d"
  TrainConfig train;
  PriorSpec prior;
  int max_phrases = 8;
  int top_k = 3;
  AnswererConfig answerer;
  double mask_rate = 0.0;
  int max_iters = 10;
  int threads = 1;
  std::string verb_lexicon = "data/verbs.txt";

  int label_dim() const { return d_label > 0 ? d_label : encoder.d; }
  ParamLayout layout() const {
    return ParamLayout::make(encoder.d, label_dim(), encoder.n_hash_buckets, max_phrases);
  }
};

/// Applies `key = value`; unknown keys raise ValidationError.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value file, one entry per line, '#' comments.
RunConfig load_config_file(const std::string& path);

std::string config_to_string(const RunConfig& cfg);

}  // namespace veriphrase
