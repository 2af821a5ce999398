// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// End-to-end orchestration: records -> claims -> premises -> features ->
// train -> verify -> metrics, plus the ablation sweeps over lambda, prior
// choice and premise mask rate.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "veriphrase/config.hpp"
#include "veriphrase/dataset.hpp"
#include "veriphrase/train.hpp"

namespace veriphrase {

struct PipelineArtifacts {
  std::vector<Claim> claims;
  std::vector<std::vector<LocalPremise>> premises;
  PreparedDataset prepared;
};

/// Claims, premises and features for one dataset. `answers` substitutes an
/// external answerer keyed by "<record_id>#<phrase_index>"; mask_override
/// replaces cfg.mask_rate when set.
PipelineArtifacts build_pipeline(
    const std::vector<InputRecord>& records, const RunConfig& cfg,
    const VerbLexicon& verbs,
    const std::map<std::string, std::vector<std::string>>* answers = nullptr,
    std::optional<double> mask_override = std::nullopt);

/// Decodes every input; parallel over records with deterministic output
/// order (each record's stream is derived from its id).
std::vector<VerificationResult> verify_all(const std::vector<ModelInput>& inputs,
                                           const ModelParams& params,
                                           const DecodeConfig& cfg, int threads);

struct ExperimentOutcome {
  TrainResult trained;
  std::vector<VerificationResult> results;  // on the eval set
  MetricReport report;
};

/// Trains on train_records and evaluates on eval_records under cfg.
/// The premise mask rate applies to both sides, mirroring an unreliable
/// answerer at training and inference alike.
ExperimentOutcome train_and_eval(const std::vector<InputRecord>& train_records,
                                 const std::vector<InputRecord>& eval_records,
                                 const RunConfig& cfg, const VerbLexicon& verbs);

enum class AblationKind : uint8_t { Lambda, Prior, MaskRate };

AblationKind ablation_kind_from_string(const std::string& s);

struct AblationRow {
  std::string point;
  MetricReport report;
};

std::vector<std::string> default_ablation_grid(AblationKind kind);

/// One full train+eval per grid point.
std::vector<AblationRow> run_ablation(AblationKind kind,
                                      const std::vector<std::string>& grid,
                                      const RunConfig& base,
                                      const std::vector<InputRecord>& train_records,
                                      const std::vector<InputRecord>& eval_records,
                                      const VerbLexicon& verbs);

/// Fixed-width text table of an ablation sweep.
std::string ablation_table_to_string(AblationKind kind,
                                     const std::vector<AblationRow>& rows);

/// JSON document for the same table.
std::string ablation_table_to_json(AblationKind kind,
                                   const std::vector<AblationRow>& rows);

}  // namespace veriphrase
