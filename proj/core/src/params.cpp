// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/params.hpp"

#include <cmath>

#include "veriphrase/rng.hpp"

namespace veriphrase {

ParamLayout ParamLayout::make(int d, int d_label, int n_buckets, int max_phrases) {
  ParamLayout l;
  l.d = d;
  l.d_label = d_label;
  l.n_buckets = n_buckets;
  l.max_phrases = max_phrases;
  int off = 0;
  l.w_proj = off;
  off += d * n_buckets;
  l.b_proj = off;
  off += d;
  l.w_gate = off;
  off += d * d;
  l.w_att = off;
  off += 2 * d;
  l.e_label = off;
  off += 3 * d_label;
  l.w1_q = off;
  off += d_label * l.q_in_dim();
  l.b1_q = off;
  off += d_label;
  l.w1_p = off;
  off += d_label * l.p_in_dim();
  l.b1_p = off;
  off += d_label;
  l.total = off;
  return l;
}

namespace {

// Box-Muller over the deterministic uniform source.
double normal(Rng& rng) {
  const double u1 = rng.uniform_open();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

void fill_normal(std::vector<double>& theta, int off, int count, double scale, Rng& rng) {
  for (int i = 0; i < count; ++i) theta[off + i] = scale * normal(rng);
}

}  // namespace

ModelParams init_params(const ParamLayout& l, uint64_t seed) {
  ModelParams p;
  p.layout = l;
  p.theta.assign(l.total, 0.0);
  Rng rng(seed);

  // Features are l2-normalized, so the projection sees unit-norm sparse
  // inputs; a fixed moderate scale works better than fan-in scaling here.
  fill_normal(p.theta, l.w_proj, l.d * l.n_buckets, 0.5, rng);
  // b_proj stays zero.
  fill_normal(p.theta, l.w_gate, l.d * l.d, 1.0 / std::sqrt(l.d), rng);
  fill_normal(p.theta, l.w_att, 2 * l.d, 1.0 / std::sqrt(2.0 * l.d), rng);
  fill_normal(p.theta, l.e_label, 3 * l.d_label, 1.0 / std::sqrt(l.d_label), rng);
  fill_normal(p.theta, l.w1_q, l.d_label * l.q_in_dim(), 1.0 / std::sqrt(l.q_in_dim()), rng);
  fill_normal(p.theta, l.w1_p, l.d_label * l.p_in_dim(), 1.0 / std::sqrt(l.p_in_dim()), rng);
  // Head biases stay zero.
  return p;
}

}  // namespace veriphrase
