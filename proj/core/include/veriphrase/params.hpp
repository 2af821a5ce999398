// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Flat parameter storage for the verifier. All weights live in one vector
// so the tape can address them by index; the layout records the offsets.
// The label-embedding block doubles as the shared last layer of both MLP
// heads and as the label input to the phrase posterior.

#pragma once

#include <cstdint>
#include <vector>

namespace veriphrase {

struct ParamLayout {
  int d = 0;            // encoder hidden width
  int d_label = 0;      // label embedding width (= hidden width of both heads)
  int n_buckets = 0;    // hash feature dimension
  int max_phrases = 0;  // padded latent slots

  // Offsets into the flat parameter vector.
  int w_proj = 0;   // d x n_buckets, row-major by output dim
  int b_proj = 0;   // d
  int w_gate = 0;   // d x d
  int w_att = 0;    // 2d (scores [h_global; h_local_i])
  int e_label = 0;  // 3 x d_label
  int w1_q = 0;     // d_label x (d_label + 2d)
  int b1_q = 0;     // d_label
  int w1_p = 0;     // d_label x (3*max_phrases + 2d)
  int b1_p = 0;     // d_label
  int total = 0;

  int q_in_dim() const { return d_label + 2 * d; }
  int p_in_dim() const { return 3 * max_phrases + 2 * d; }

  static ParamLayout make(int d, int d_label, int n_buckets, int max_phrases);
};

struct ModelParams {
  ParamLayout layout;
  std::vector<double> theta;
};

/// Seeded scaled-normal initialization.
ModelParams init_params(const ParamLayout& layout, uint64_t seed);

}  // namespace veriphrase
