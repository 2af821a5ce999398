// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/metrics.hpp"

#include <algorithm>

#include "veriphrase/errors.hpp"

namespace veriphrase {

namespace {

void check_aligned(size_t a, size_t b, const char* what) {
  if (a == 0) throw ValidationError(std::string(what) + ": empty input");
  if (a != b) throw ValidationError(std::string(what) + ": misaligned inputs");
}

Veracity aggregate_of(const VerificationResult& r, AggregationMode mode) {
  if (r.phrase_dists.empty()) return r.aggregate_hard;  // degenerate no-phrase record
  if (mode == AggregationMode::Hard) {
    std::vector<Veracity> labels(r.phrase_dists.size());
    for (size_t i = 0; i < r.phrase_dists.size(); ++i) labels[i] = r.phrase_dists[i].argmax();
    return hard_aggregate(labels);
  }
  return soft_aggregate(r.phrase_dists).argmax();
}

}  // namespace

double label_accuracy(std::span<const VerificationResult> results,
                      std::span<const GoldRecord> golds) {
  check_aligned(results.size(), golds.size(), "label_accuracy");
  int hits = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    hits += results[i].claim_label == golds[i].gold_label ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

double fever_score(std::span<const VerificationResult> results,
                   std::span<const std::set<EvidenceKey>> retrieved,
                   std::span<const GoldRecord> golds) {
  check_aligned(results.size(), golds.size(), "fever_score");
  check_aligned(results.size(), retrieved.size(), "fever_score");
  int hits = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    if (results[i].claim_label != golds[i].gold_label) continue;
    if (golds[i].gold_label == Veracity::Nei) {
      ++hits;  // no evidence needed for NEI
      continue;
    }
    const auto covered = [&](const std::set<EvidenceKey>& gold_set) {
      return std::includes(retrieved[i].begin(), retrieved[i].end(), gold_set.begin(),
                           gold_set.end());
    };
    if (std::any_of(golds[i].gold_evidence_sets.begin(), golds[i].gold_evidence_sets.end(),
                    covered)) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

double aggregated_label_accuracy(std::span<const VerificationResult> results,
                                 std::span<const GoldRecord> golds,
                                 AggregationMode mode) {
  check_aligned(results.size(), golds.size(), "aggregated_label_accuracy");
  int hits = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    hits += aggregate_of(results[i], mode) == golds[i].gold_label ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

double agreement(std::span<const VerificationResult> results, AggregationMode mode) {
  if (results.empty()) throw ValidationError("agreement: empty input");
  int hits = 0;
  for (const VerificationResult& r : results) {
    hits += aggregate_of(r, mode) == r.claim_label ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

CulpaResult culpa(std::span<const VerificationResult> results,
                  std::span<const GoldRecord> golds) {
  check_aligned(results.size(), golds.size(), "culpa");
  CulpaResult out;
  long tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    if (golds[i].gold_label != Veracity::Ref) continue;
    if (!golds[i].culprit_indices.has_value()) {
      ++out.n_skipped;
      continue;
    }
    ++out.n_records;
    const std::set<int>& gold = *golds[i].culprit_indices;
    std::set<int> predicted(results[i].culprits.begin(), results[i].culprits.end());
    for (int p : predicted) {
      if (gold.contains(p)) {
        ++tp;
      } else {
        ++fp;
      }
    }
    for (int g : gold) {
      if (!predicted.contains(g)) ++fn;
    }
  }
  out.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  out.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  out.f1 = out.precision + out.recall > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

MetricReport compute_metrics(std::span<const VerificationResult> results,
                             std::span<const std::set<EvidenceKey>> retrieved,
                             std::span<const GoldRecord> golds) {
  MetricReport report;
  report.la = label_accuracy(results, golds);
  report.fev = fever_score(results, retrieved, golds);
  report.la_z_hard = aggregated_label_accuracy(results, golds, AggregationMode::Hard);
  report.la_z_soft = aggregated_label_accuracy(results, golds, AggregationMode::Soft);
  report.agree_hard = agreement(results, AggregationMode::Hard);
  report.agree_soft = agreement(results, AggregationMode::Soft);
  report.culpa = culpa(results, golds);
  return report;
}

}  // namespace veriphrase
