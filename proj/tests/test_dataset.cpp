// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "veriphrase/errors.hpp"
#include "veriphrase/experiment.hpp"
#include "veriphrase/io.hpp"

using namespace veriphrase;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("fixture parses with exact class counts") {
  const auto records =
      load_dataset(std::string(VERIPHRASE_TEST_DATA_DIR) + "/fixture.jsonl");
  REQUIRE(records.size() == 3);
  const ClassCounts counts = count_labels(records);
  CHECK(counts.sup == 1);
  CHECK(counts.ref == 1);
  CHECK(counts.nei == 1);
  CHECK(counts.unlabeled == 0);

  CHECK(records[0].evidence.sentences.size() == 2);
  CHECK(records[0].gold_evidence.size() == 1);
  REQUIRE(records[1].culprits.has_value());
  CHECK(records[1].culprits->contains(2));
  REQUIRE(records[0].phrases.has_value());
  CHECK((*records[0].phrases)[0].kind == PhraseKind::NamedEntity);
  CHECK(records[2].gold_evidence.empty());
}

TEST_CASE("loader reports malformed lines and unknown labels by line number") {
  const std::string bad_json = tmp_path("veriphrase-bad1.jsonl");
  {
    std::ofstream out(bad_json);
    out << R"({"id": "a", "claim": "x", "label": "SUPPORTS"})" << "\n";
    out << "{nope\n";
  }
  CHECK_THROWS_WITH_AS(load_dataset(bad_json),
                       doctest::Contains(":2:"), ValidationError);

  const std::string bad_label = tmp_path("veriphrase-bad2.jsonl");
  {
    std::ofstream out(bad_label);
    out << R"({"id": "a", "claim": "x", "label": "MAYBE"})" << "\n";
  }
  CHECK_THROWS_AS(load_dataset(bad_label), ValidationError);
  std::remove(bad_json.c_str());
  std::remove(bad_label.c_str());
}

TEST_CASE("synthetic generation is reproducible and structurally sound") {
  const SyntheticOutput a = generate_synthetic(20, 11);
  const SyntheticOutput b = generate_synthetic(20, 11);
  REQUIRE(a.records.size() == 60);
  REQUIRE(b.records.size() == 60);
  for (size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].claim_text == b.records[i].claim_text);
    CHECK(a.records[i].label == b.records[i].label);
  }
  const ClassCounts counts = count_labels(a.records);
  CHECK(counts.sup == 20);
  CHECK(counts.ref == 20);
  CHECK(counts.nei == 20);

  for (const InputRecord& rec : a.records) {
    REQUIRE(rec.phrases.has_value());
    CHECK(rec.phrases->size() == 3);
    for (const ClaimPhrase& p : *rec.phrases) {
      CHECK(rec.claim_text.substr(p.start, p.end - p.start) == p.text);
    }
    if (rec.label == Veracity::Ref) {
      REQUIRE(rec.culprits.has_value());
      CHECK(rec.culprits->size() >= 1);
      CHECK(rec.culprits->size() <= 2);
      CHECK_FALSE(rec.evidence.sentences.empty());
    }
    if (rec.label == Veracity::Sup) {
      // Evidence contains every claim phrase verbatim.
      std::string joined;
      for (const auto& s : rec.evidence.sentences) joined += s.text + " ";
      for (const ClaimPhrase& p : *rec.phrases) {
        CHECK(joined.find(p.text) != std::string::npos);
      }
      CHECK_FALSE(rec.gold_evidence.empty());
    }
    if (rec.label == Veracity::Nei) {
      CHECK(rec.gold_evidence.empty());
    } else {
      // Gold evidence refers to sentences actually present.
      for (const auto& set : rec.gold_evidence) {
        for (const auto& [page, line] : set) {
          bool found = false;
          for (const auto& s : rec.evidence.sentences) {
            found |= s.page_id == page && s.line_no == line;
          }
          CHECK(found);
        }
      }
    }
  }

  // Different seeds change the corpus.
  const SyntheticOutput c = generate_synthetic(20, 12);
  bool any_diff = false;
  for (size_t i = 0; i < c.records.size(); ++i) {
    any_diff |= c.records[i].claim_text != a.records[i].claim_text;
  }
  CHECK(any_diff);

  // Simulated prior file covers every (record, phrase).
  CHECK(a.nli_prior.size() == 3 * a.records.size());
}

TEST_CASE("dataset save/load round trip") {
  const SyntheticOutput synth = generate_synthetic(5, 3);
  const std::string path = tmp_path("veriphrase-roundtrip.jsonl");
  save_dataset(path, synth.records);
  const auto loaded = load_dataset(path);
  REQUIRE(loaded.size() == synth.records.size());
  for (size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].id == synth.records[i].id);
    CHECK(loaded[i].claim_text == synth.records[i].claim_text);
    CHECK(loaded[i].label == synth.records[i].label);
    CHECK(loaded[i].evidence.sentences.size() == synth.records[i].evidence.sentences.size());
    CHECK(loaded[i].gold_evidence == synth.records[i].gold_evidence);
    CHECK(loaded[i].culprits == synth.records[i].culprits);
  }
  std::remove(path.c_str());
}

TEST_CASE("prior file round trip and missing-entry diagnostics") {
  const SyntheticOutput synth = generate_synthetic(3, 5);
  const std::string path = tmp_path("veriphrase-prior.jsonl");
  save_prior_file(path, synth.nli_prior);
  const PriorData data = load_prior_file(path);
  CHECK(data.size() == synth.records.size());
  const PriorFileEntry& first = synth.nli_prior.front();
  CHECK(data.at(first.record_id).at(first.phrase_index).sup ==
        doctest::Approx(first.dist.sup));
  std::remove(path.c_str());
}

TEST_CASE("config file parsing, overrides and unknown keys") {
  const std::string path = tmp_path("veriphrase-config.txt");
  {
    std::ofstream out(path);
    out << "# comment\n";
    out << "d = 32\n";
    out << "lambda = 0.7\n";
    out << "prior = uniform\n";
    out << "verb_lexicon = some/path.txt\n";
  }
  RunConfig cfg = load_config_file(path);
  CHECK(cfg.encoder.d == 32);
  CHECK(cfg.train.lambda == 0.7);
  CHECK(cfg.prior.kind == PriorKind::Uniform);
  CHECK(cfg.verb_lexicon == "some/path.txt");

  apply_config_entry(cfg, "epochs", "7");
  CHECK(cfg.train.epochs == 7);
  CHECK_THROWS_AS(apply_config_entry(cfg, "nonsense", "1"), ValidationError);
  CHECK_THROWS_AS(apply_config_entry(cfg, "epochs", "seven"), ValidationError);
  std::remove(path.c_str());
}

TEST_CASE("checkpoint round trip preserves parameters and config echo") {
  RunConfig cfg;
  cfg.encoder.d = 12;
  cfg.encoder.n_hash_buckets = 128;
  cfg.max_phrases = 4;
  cfg.train.lambda = 0.3;
  const ModelParams params = init_params(cfg.layout(), 77);

  const std::string path = tmp_path("veriphrase-ckpt.json");
  save_checkpoint(path, params, cfg);
  const Checkpoint loaded = load_checkpoint(path);
  CHECK(loaded.config.encoder.d == 12);
  CHECK(loaded.config.train.lambda == 0.3);
  CHECK(loaded.params.theta == params.theta);
  CHECK(loaded.params.layout.total == params.layout.total);
  std::remove(path.c_str());
}

TEST_CASE("prepared dataset aligns features, golds and retrieval sets") {
  const SyntheticOutput synth = generate_synthetic(4, 9);
  RunConfig cfg;
  cfg.encoder.d = 16;
  cfg.encoder.n_hash_buckets = 512;
  const VerbLexicon verbs = {"won", "directed", "founded", "visited", "composed",
                             "translated"};
  const PipelineArtifacts art = build_pipeline(synth.records, cfg, verbs);
  REQUIRE(art.prepared.inputs.size() == synth.records.size());
  for (size_t i = 0; i < art.prepared.inputs.size(); ++i) {
    const ModelInput& in = art.prepared.inputs[i];
    CHECK(in.n_phrases == 3);
    CHECK(in.local_features.size() == 3);
    CHECK_FALSE(in.global_features.empty());
    CHECK(in.has_gold);
    CHECK(art.prepared.golds[i].gold_label == synth.records[i].label);
    CHECK(art.prepared.retrieved[i].size() == synth.records[i].evidence.sentences.size());
  }
}

TEST_CASE("results file round trip") {
  VerificationResult r;
  r.id = "x";
  r.claim_dist = {0.7, 0.2, 0.1};
  r.claim_label = Veracity::Sup;
  r.phrase_dists = {{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}};
  r.phrase_labels = {Veracity::Sup, Veracity::Ref};
  r.aggregate_soft = {0.12, 0.65, 0.23};
  r.aggregate_hard = Veracity::Ref;
  r.attention = {0.4, 0.6};
  r.iterations = 3;
  r.converged = true;
  r.culprits = {1};

  const std::string path = tmp_path("veriphrase-results.jsonl");
  save_results(path, {r});
  const auto loaded = load_results(path);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].id == "x");
  CHECK(loaded[0].claim_dist.sup == 0.7);
  CHECK(loaded[0].phrase_labels == r.phrase_labels);
  CHECK(loaded[0].attention == r.attention);
  CHECK(loaded[0].iterations == 3);
  CHECK(loaded[0].culprits == r.culprits);
  std::remove(path.c_str());
}

}  // TEST_SUITE
