// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include <doctest.h>

#include "veriphrase/errors.hpp"
#include "veriphrase/experiment.hpp"
#include "veriphrase/train.hpp"

using namespace veriphrase;

namespace {

RunConfig tiny_config() {
  RunConfig cfg;
  cfg.encoder.d = 16;
  cfg.encoder.n_hash_buckets = 512;
  cfg.max_phrases = 4;
  cfg.train.epochs = 2;
  cfg.train.seed = 5;
  return cfg;
}

const VerbLexicon& synth_verbs() {
  static const VerbLexicon verbs = {"won",     "directed",  "founded",
                                    "visited", "composed",  "translated"};
  return verbs;
}

}  // namespace

TEST_SUITE("train") {

TEST_CASE("loss decreases over repeated steps on a small batch") {
  const SyntheticOutput synth = generate_synthetic(8, 21);
  RunConfig cfg = tiny_config();
  cfg.train.epochs = 25;  // small set, many passes ~ repeated steps
  const PipelineArtifacts art = build_pipeline(synth.records, cfg, synth_verbs());

  const TrainResult result =
      train(art.prepared.inputs, cfg.layout(), cfg.train, cfg.prior);
  REQUIRE(result.log.size() == 25);
  CHECK(result.log.back().mean_loss < result.log.front().mean_loss);
}

TEST_CASE("training is bitwise reproducible under a fixed seed") {
  const SyntheticOutput synth = generate_synthetic(6, 31);
  const RunConfig cfg = tiny_config();
  const PipelineArtifacts art = build_pipeline(synth.records, cfg, synth_verbs());

  const TrainResult a = train(art.prepared.inputs, cfg.layout(), cfg.train, cfg.prior);
  const TrainResult b = train(art.prepared.inputs, cfg.layout(), cfg.train, cfg.prior);
  CHECK(a.params.theta == b.params.theta);
  REQUIRE(a.log.size() == b.log.size());
  for (size_t i = 0; i < a.log.size(); ++i) {
    CHECK(a.log[i].mean_loss == b.log[i].mean_loss);
    CHECK(a.log[i].val_la == b.log[i].val_la);
  }

  TrainConfig other = cfg.train;
  other.seed = 6;
  const TrainResult c = train(art.prepared.inputs, cfg.layout(), other, cfg.prior);
  CHECK(c.params.theta != a.params.theta);
}

TEST_CASE("training rejects unlabeled data and bad lambda") {
  const SyntheticOutput synth = generate_synthetic(2, 41);
  const RunConfig cfg = tiny_config();
  PipelineArtifacts art = build_pipeline(synth.records, cfg, synth_verbs());

  art.prepared.inputs[0].has_gold = false;
  CHECK_THROWS_AS(train(art.prepared.inputs, cfg.layout(), cfg.train, cfg.prior),
                  ValidationError);

  TrainConfig bad = cfg.train;
  bad.lambda = 1.5;
  PipelineArtifacts ok = build_pipeline(synth.records, cfg, synth_verbs());
  CHECK_THROWS_AS(train(ok.prepared.inputs, cfg.layout(), bad, cfg.prior), ValidationError);

  PriorSpec nli{PriorKind::ExternalNli, "", std::nullopt};
  CHECK_THROWS_AS(train(ok.prepared.inputs, cfg.layout(), cfg.train, nli, nullptr),
                  ValidationError);
}

TEST_CASE("verify_all is deterministic and thread-count independent") {
  const SyntheticOutput synth = generate_synthetic(10, 51);
  const RunConfig cfg = tiny_config();
  const PipelineArtifacts art = build_pipeline(synth.records, cfg, synth_verbs());
  const ModelParams params = init_params(cfg.layout(), 3);

  const auto seq = verify_all(art.prepared.inputs, params, DecodeConfig{10, 9}, 1);
  const auto par = verify_all(art.prepared.inputs, params, DecodeConfig{10, 9}, 4);
  REQUIRE(seq.size() == par.size());
  for (size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].id == par[i].id);
    CHECK(seq[i].claim_label == par[i].claim_label);
    CHECK(seq[i].claim_dist.sup == par[i].claim_dist.sup);
    CHECK(seq[i].iterations == par[i].iterations);
  }
}

}  // TEST_SUITE
