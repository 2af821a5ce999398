// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Input records and dataset plumbing: the wire schema for claims with
// pre-retrieved evidence, a seeded synthetic corpus generator with culprit
// annotations, and the featurization step that turns records plus premises
// into model inputs.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "veriphrase/metrics.hpp"
#include "veriphrase/model.hpp"
#include "veriphrase/phrase.hpp"
#include "veriphrase/premise.hpp"

namespace veriphrase {

/// One dataset record. Labels use the dataset strings SUPPORTS / REFUTES /
/// NOT ENOUGH INFO on the wire, mapped to SUP / REF / NEI here.
struct InputRecord {
  std::string id;
  std::string claim_text;
  bool has_label = false;
  Veracity label = Veracity::Nei;
  EvidenceSet evidence;
  std::vector<std::set<EvidenceKey>> gold_evidence;  // empty for NEI
  std::optional<std::vector<ClaimPhrase>> phrases;   // pre-annotated spans
  std::optional<std::set<int>> culprits;             // REF records only
};

struct ClassCounts {
  int sup = 0;
  int ref = 0;
  int nei = 0;
  int unlabeled = 0;
};

ClassCounts count_labels(const std::vector<InputRecord>& records);

struct PriorFileEntry {
  std::string record_id;
  int phrase_index = 0;
  Distribution3 dist;
};

struct SyntheticOutput {
  std::vector<InputRecord> records;
  std::vector<PriorFileEntry> nli_prior;  // simulated per-phrase judgments
};

/// Template-generated claims over entity/verb/object vocabularies with
/// paired evidence. Balanced classes (3 * n_per_class records):
///   SUP - evidence states the claimed fact;
///   REF - the claim perturbs 1-2 phrases of a fact the evidence states,
///         perturbed indices recorded as gold culprits;
///   NEI - the evidence never covers the claimed relation (sometimes no
///         evidence at all).
/// Also emits peaked-but-noisy per-phrase judgments usable as an external
/// prior file.
SyntheticOutput generate_synthetic(int n_per_class, uint64_t seed);

/// Resolves each record's phrase spans (annotation-first, heuristics as
/// fallback) into Claim objects.
std::vector<Claim> resolve_claims(const std::vector<InputRecord>& records,
                                  const VerbLexicon& verbs, int max_phrases);

/// Baseline premises for one record: cloze + answer + substitution per
/// phrase, using the record's own evidence.
std::vector<LocalPremise> build_record_premises(const Claim& claim,
                                                const EvidenceSet& evidence, int top_k,
                                                const AnswererConfig& cfg);

struct PreparedDataset {
  std::vector<ModelInput> inputs;
  std::vector<GoldRecord> golds;
  std::vector<std::set<EvidenceKey>> retrieved;
};

/// Featurizes records against their premises; all three vectors align with
/// `records`. Throws ValidationError when a labeled record is missing
/// premises for a phrase.
PreparedDataset prepare_dataset(const std::vector<InputRecord>& records,
                                const std::vector<Claim>& claims,
                                const std::vector<std::vector<LocalPremise>>& premises,
                                const EncoderConfig& enc, int max_phrases);

}  // namespace veriphrase
