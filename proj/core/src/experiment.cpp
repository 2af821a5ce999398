// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/experiment.hpp"

#include <cstdio>
#include <thread>

#include <json.hpp>

#include "veriphrase/errors.hpp"
#include "veriphrase/io.hpp"

namespace veriphrase {

PipelineArtifacts build_pipeline(
    const std::vector<InputRecord>& records, const RunConfig& cfg,
    const VerbLexicon& verbs,
    const std::map<std::string, std::vector<std::string>>* answers,
    std::optional<double> mask_override) {
  PipelineArtifacts art;
  art.claims = resolve_claims(records, verbs, cfg.max_phrases);
  art.premises.resize(records.size());

  for (size_t r = 0; r < records.size(); ++r) {
    if (answers != nullptr) {
      for (size_t i = 0; i < art.claims[r].phrases.size(); ++i) {
        const std::string qid = art.claims[r].id + "#" + std::to_string(i);
        const auto it = answers->find(qid);
        if (it == answers->end()) {
          throw ValidationError("answers file has no entry for qid '" + qid + "'");
        }
        art.premises[r].push_back(
            build_local_premise(art.claims[r], static_cast<int>(i), it->second));
      }
    } else {
      art.premises[r] =
          build_record_premises(art.claims[r], records[r].evidence, cfg.top_k, cfg.answerer);
    }
  }

  const double rho = mask_override.value_or(cfg.mask_rate);
  if (rho > 0.0) {
    mask_premises(art.claims, art.premises, rho, cfg.train.seed);
  }

  art.prepared = prepare_dataset(records, art.claims, art.premises, cfg.encoder,
                                 cfg.max_phrases);
  return art;
}

std::vector<VerificationResult> verify_all(const std::vector<ModelInput>& inputs,
                                           const ModelParams& params,
                                           const DecodeConfig& cfg, int threads) {
  std::vector<VerificationResult> results(inputs.size());
  if (threads < 2 || inputs.size() < 2) {
    for (size_t i = 0; i < inputs.size(); ++i) results[i] = verify(inputs[i], params, cfg);
    return results;
  }
  const size_t n_workers = std::min<size_t>(threads, inputs.size());
  std::vector<std::thread> workers;
  workers.reserve(n_workers);
  for (size_t w = 0; w < n_workers; ++w) {
    workers.emplace_back([&, w]() {
      for (size_t i = w; i < inputs.size(); i += n_workers) {
        results[i] = verify(inputs[i], params, cfg);
      }
    });
  }
  for (std::thread& t : workers) t.join();
  return results;
}

ExperimentOutcome train_and_eval(const std::vector<InputRecord>& train_records,
                                 const std::vector<InputRecord>& eval_records,
                                 const RunConfig& cfg, const VerbLexicon& verbs) {
  const PipelineArtifacts train_art = build_pipeline(train_records, cfg, verbs);
  const PipelineArtifacts eval_art = build_pipeline(eval_records, cfg, verbs);

  PriorData prior_data;
  const PriorData* prior_ptr = nullptr;
  if (cfg.prior.kind == PriorKind::ExternalNli) {
    if (cfg.prior.source.empty()) {
      throw ValidationError("nli prior requires nli_prior_file in the config");
    }
    prior_data = load_prior_file(cfg.prior.source);
    prior_ptr = &prior_data;
  }

  ExperimentOutcome out;
  out.trained = train(train_art.prepared.inputs, cfg.layout(), cfg.train, cfg.prior,
                      prior_ptr);
  out.results = verify_all(eval_art.prepared.inputs, out.trained.params,
                           DecodeConfig{cfg.max_iters, cfg.train.seed}, cfg.threads);
  out.report = compute_metrics(out.results, eval_art.prepared.retrieved,
                               eval_art.prepared.golds);
  return out;
}

AblationKind ablation_kind_from_string(const std::string& s) {
  if (s == "lambda") return AblationKind::Lambda;
  if (s == "prior") return AblationKind::Prior;
  if (s == "mask") return AblationKind::MaskRate;
  throw ValidationError("unknown ablation kind: '" + s + "' (expected lambda|prior|mask)");
}

std::vector<std::string> default_ablation_grid(AblationKind kind) {
  switch (kind) {
    case AblationKind::Lambda: return {"0", "0.3", "0.5", "0.7", "0.9"};
    case AblationKind::Prior: return {"nli", "pseudo", "uniform"};
    default: return {"0", "0.25", "0.5", "0.75", "1.0"};
  }
}

std::vector<AblationRow> run_ablation(AblationKind kind,
                                      const std::vector<std::string>& grid,
                                      const RunConfig& base,
                                      const std::vector<InputRecord>& train_records,
                                      const std::vector<InputRecord>& eval_records,
                                      const VerbLexicon& verbs) {
  std::vector<AblationRow> rows;
  for (const std::string& point : grid) {
    RunConfig cfg = base;
    switch (kind) {
      case AblationKind::Lambda: apply_config_entry(cfg, "lambda", point); break;
      case AblationKind::Prior: apply_config_entry(cfg, "prior", point); break;
      case AblationKind::MaskRate: apply_config_entry(cfg, "mask_rate", point); break;
    }
    const ExperimentOutcome outcome = train_and_eval(train_records, eval_records, cfg, verbs);
    rows.push_back({point, outcome.report});
  }
  return rows;
}

namespace {

const char* kind_label(AblationKind kind) {
  switch (kind) {
    case AblationKind::Lambda: return "lambda";
    case AblationKind::Prior: return "prior";
    default: return "mask_rate";
  }
}

}  // namespace

std::string ablation_table_to_string(AblationKind kind,
                                     const std::vector<AblationRow>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-10s %6s %8s %8s %10s %10s %7s %7s %7s\n",
                kind_label(kind), "LA", "LAz-h", "LAz-s", "Agree-h", "Agree-s", "CulpP",
                "CulpR", "CulpF1");
  out += buf;
  for (const AblationRow& row : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%-10s %6.3f %8.3f %8.3f %10.3f %10.3f %7.3f %7.3f %7.3f\n",
                  row.point.c_str(), row.report.la, row.report.la_z_hard,
                  row.report.la_z_soft, row.report.agree_hard, row.report.agree_soft,
                  row.report.culpa.precision, row.report.culpa.recall, row.report.culpa.f1);
    out += buf;
  }
  return out;
}

std::string ablation_table_to_json(AblationKind kind,
                                   const std::vector<AblationRow>& rows) {
  nlohmann::json j;
  j["kind"] = kind_label(kind);
  nlohmann::json jrows = nlohmann::json::array();
  for (const AblationRow& row : rows) {
    nlohmann::json r;
    r["point"] = row.point;
    r["report"] = nlohmann::json::parse(metric_report_to_json(row.report));
    jrows.push_back(r);
  }
  j["rows"] = jrows;
  return j.dump(2);
}

}  // namespace veriphrase
