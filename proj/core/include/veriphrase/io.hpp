// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// File formats. Datasets, premises, priors and results are JSON-lines;
// checkpoints and metric reports are single JSON documents. All writers
// are deterministic (fixed key order via serializer, no timestamps).

#pragma once

#include <map>
#include <string>
#include <vector>

#include "veriphrase/config.hpp"
#include "veriphrase/dataset.hpp"
#include "veriphrase/decode.hpp"
#include "veriphrase/metrics.hpp"

namespace veriphrase {

/// JSON-lines dataset. Errors carry the 1-based line number.
std::vector<InputRecord> load_dataset(const std::string& path);
void save_dataset(const std::string& path, const std::vector<InputRecord>& records);

/// Premises, one line per (record, phrase):
/// {"record_id", "phrase_index", "answers", "premise_text"}.
void save_premises(const std::string& path, const std::vector<Claim>& claims,
                   const std::vector<std::vector<LocalPremise>>& premises);
std::map<std::string, std::vector<LocalPremise>> load_premises(const std::string& path);

/// External per-phrase prior triples:
/// {"record_id", "phrase_index", "p_ref", "p_nei", "p_sup"}.
void save_prior_file(const std::string& path, const std::vector<PriorFileEntry>& entries);
PriorData load_prior_file(const std::string& path);

/// External-answerer exchange. Requests:
/// {"qid", "cloze_text", "evidence_texts"}; responses: {"qid", "answers"}.
/// qid is "<record_id>#<phrase_index>".
void save_answer_requests(const std::string& path, const std::vector<InputRecord>& records,
                          const std::vector<Claim>& claims);
std::map<std::string, std::vector<std::string>> load_answer_responses(const std::string& path);

/// Verification results, one JSON line per record.
void save_results(const std::string& path, const std::vector<VerificationResult>& results);
std::vector<VerificationResult> load_results(const std::string& path);

/// Versioned JSON checkpoint with a config echo.
void save_checkpoint(const std::string& path, const ModelParams& params,
                     const RunConfig& cfg);
struct Checkpoint {
  ModelParams params;
  RunConfig config;
};
Checkpoint load_checkpoint(const std::string& path);

std::string metric_report_to_json(const MetricReport& report);
void save_metric_report(const std::string& path, const MetricReport& report);

}  // namespace veriphrase
