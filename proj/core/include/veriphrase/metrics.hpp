// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Evaluation: label accuracy, the evidence-conditioned score, accuracy and
// faithfulness of the aggregated phrase verdicts, and culprit finding.

#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "veriphrase/decode.hpp"
#include "veriphrase/veracity.hpp"

namespace veriphrase {

using EvidenceKey = std::pair<std::string, int>;  // (page_id, line_no)

struct GoldRecord {
  Veracity gold_label = Veracity::Nei;
  std::vector<std::set<EvidenceKey>> gold_evidence_sets;  // empty iff NEI
  std::optional<std::set<int>> culprit_indices;           // REF records only
};

enum class AggregationMode : uint8_t { Hard, Soft };

/// Fraction of records whose predicted label matches gold.
/// Throws ValidationError on empty or misaligned inputs.
double label_accuracy(std::span<const VerificationResult> results,
                      std::span<const GoldRecord> golds);

/// A record scores iff the label is correct and (the gold is NEI, or some
/// gold evidence set is fully contained in the retrieved set).
double fever_score(std::span<const VerificationResult> results,
                   std::span<const std::set<EvidenceKey>> retrieved,
                   std::span<const GoldRecord> golds);

/// Accuracy of the aggregated phrase verdicts against gold labels.
/// Recomputed from the raw phrase distributions, never from cached fields.
double aggregated_label_accuracy(std::span<const VerificationResult> results,
                                 std::span<const GoldRecord> golds,
                                 AggregationMode mode);

/// Fraction of records where the aggregated verdict equals the predicted
/// label; needs no gold labels.
double agreement(std::span<const VerificationResult> results, AggregationMode mode);

struct CulpaResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int n_records = 0;  // gold-REF records with culprit annotations
  int n_skipped = 0;  // gold-REF records lacking annotations
};

/// Micro-averaged culprit P/R/F1 over gold-REF records carrying culprit
/// annotations; predicted culprits are phrases with argmax z = REF.
/// Empty predictions score precision 0 by convention.
CulpaResult culpa(std::span<const VerificationResult> results,
                  std::span<const GoldRecord> golds);

struct MetricReport {
  double la = 0.0;
  double fev = 0.0;
  double la_z_hard = 0.0;
  double la_z_soft = 0.0;
  double agree_hard = 0.0;
  double agree_soft = 0.0;
  CulpaResult culpa;
};

MetricReport compute_metrics(std::span<const VerificationResult> results,
                             std::span<const std::set<EvidenceKey>> retrieved,
                             std::span<const GoldRecord> golds);

}  // namespace veriphrase
