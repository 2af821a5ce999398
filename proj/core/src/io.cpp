// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/io.hpp"

#include <fstream>

#include <json.hpp>

#include "veriphrase/errors.hpp"

namespace veriphrase {

using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  return out;
}

json parse_line(const std::string& line, const std::string& path, int line_no) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw ValidationError(path + ":" + std::to_string(line_no) +
                          ": malformed JSON: " + e.what());
  }
}

Veracity label_from_dataset_string(const std::string& s, const std::string& path,
                                   int line_no) {
  if (s == "SUPPORTS") return Veracity::Sup;
  if (s == "REFUTES") return Veracity::Ref;
  if (s == "NOT ENOUGH INFO") return Veracity::Nei;
  throw ValidationError(path + ":" + std::to_string(line_no) + ": unknown label '" + s +
                        "'");
}

std::string label_to_dataset_string(Veracity v) {
  switch (v) {
    case Veracity::Sup: return "SUPPORTS";
    case Veracity::Ref: return "REFUTES";
    default: return "NOT ENOUGH INFO";
  }
}

json dist_to_json(const Distribution3& d) {
  return json{{"sup", d.sup}, {"ref", d.ref}, {"nei", d.nei}};
}

Distribution3 dist_from_json(const json& j) {
  return {j.at("sup").get<double>(), j.at("ref").get<double>(), j.at("nei").get<double>()};
}

}  // namespace

std::vector<InputRecord> load_dataset(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<InputRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = parse_line(line, path, line_no);
    InputRecord rec;
    try {
      rec.id = j.at("id").get<std::string>();
      rec.claim_text = j.at("claim").get<std::string>();
      if (j.contains("label")) {
        rec.has_label = true;
        rec.label = label_from_dataset_string(j.at("label").get<std::string>(), path, line_no);
      }
      for (const json& e : j.value("evidence", json::array())) {
        rec.evidence.sentences.push_back({e.at(0).get<std::string>(), e.at(1).get<int>(),
                                          e.at(2).get<std::string>()});
      }
      for (const json& set : j.value("gold_evidence", json::array())) {
        std::set<EvidenceKey> keys;
        for (const json& e : set) {
          keys.insert({e.at(0).get<std::string>(), e.at(1).get<int>()});
        }
        rec.gold_evidence.push_back(std::move(keys));
      }
      if (j.contains("phrases")) {
        std::vector<ClaimPhrase> phrases;
        for (const json& p : j.at("phrases")) {
          phrases.push_back({p.at("text").get<std::string>(), p.at("start").get<size_t>(),
                             p.at("end").get<size_t>(),
                             phrase_kind_from_string(p.at("kind").get<std::string>())});
        }
        rec.phrases = std::move(phrases);
      }
      if (j.contains("culprits")) {
        std::set<int> culprits;
        for (const json& c : j.at("culprits")) culprits.insert(c.get<int>());
        rec.culprits = std::move(culprits);
      }
    } catch (const json::exception& e) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": bad record: " +
                            e.what());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void save_dataset(const std::string& path, const std::vector<InputRecord>& records) {
  std::ofstream out = open_out(path);
  for (const InputRecord& rec : records) {
    json j;
    j["id"] = rec.id;
    j["claim"] = rec.claim_text;
    if (rec.has_label) j["label"] = label_to_dataset_string(rec.label);
    json evidence = json::array();
    for (const EvidenceSentence& s : rec.evidence.sentences) {
      evidence.push_back(json::array({s.page_id, s.line_no, s.text}));
    }
    j["evidence"] = evidence;
    json gold = json::array();
    for (const std::set<EvidenceKey>& set : rec.gold_evidence) {
      json keys = json::array();
      for (const EvidenceKey& k : set) keys.push_back(json::array({k.first, k.second}));
      gold.push_back(keys);
    }
    j["gold_evidence"] = gold;
    if (rec.phrases.has_value()) {
      json phrases = json::array();
      for (const ClaimPhrase& p : *rec.phrases) {
        phrases.push_back({{"text", p.text},
                           {"start", p.start},
                           {"end", p.end},
                           {"kind", to_string(p.kind)}});
      }
      j["phrases"] = phrases;
    }
    if (rec.culprits.has_value()) {
      j["culprits"] = std::vector<int>(rec.culprits->begin(), rec.culprits->end());
    }
    out << j.dump() << "\n";
  }
}

void save_premises(const std::string& path, const std::vector<Claim>& claims,
                   const std::vector<std::vector<LocalPremise>>& premises) {
  std::ofstream out = open_out(path);
  for (size_t r = 0; r < premises.size(); ++r) {
    for (const LocalPremise& p : premises[r]) {
      json j;
      j["record_id"] = claims[r].id;
      j["phrase_index"] = p.phrase_index;
      j["answers"] = p.answers;
      j["premise_text"] = p.text;
      out << j.dump() << "\n";
    }
  }
}

std::map<std::string, std::vector<LocalPremise>> load_premises(const std::string& path) {
  std::ifstream in = open_in(path);
  std::map<std::string, std::vector<LocalPremise>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = parse_line(line, path, line_no);
    LocalPremise p;
    p.phrase_index = j.at("phrase_index").get<int>();
    p.answers = j.at("answers").get<std::vector<std::string>>();
    p.text = j.at("premise_text").get<std::string>();
    out[j.at("record_id").get<std::string>()].push_back(std::move(p));
  }
  return out;
}

void save_prior_file(const std::string& path, const std::vector<PriorFileEntry>& entries) {
  std::ofstream out = open_out(path);
  for (const PriorFileEntry& e : entries) {
    json j;
    j["record_id"] = e.record_id;
    j["phrase_index"] = e.phrase_index;
    j["p_ref"] = e.dist.ref;
    j["p_nei"] = e.dist.nei;
    j["p_sup"] = e.dist.sup;
    out << j.dump() << "\n";
  }
}

PriorData load_prior_file(const std::string& path) {
  std::ifstream in = open_in(path);
  PriorData data;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = parse_line(line, path, line_no);
    Distribution3 d{j.at("p_sup").get<double>(), j.at("p_ref").get<double>(),
                    j.at("p_nei").get<double>()};
    data[j.at("record_id").get<std::string>()][j.at("phrase_index").get<int>()] = d;
  }
  return data;
}

void save_answer_requests(const std::string& path, const std::vector<InputRecord>& records,
                          const std::vector<Claim>& claims) {
  std::ofstream out = open_out(path);
  for (size_t r = 0; r < records.size(); ++r) {
    std::vector<std::string> evidence_texts;
    for (const EvidenceSentence& s : records[r].evidence.sentences) {
      evidence_texts.push_back(s.text);
    }
    for (size_t i = 0; i < claims[r].phrases.size(); ++i) {
      const ClozeQuestion q = make_cloze_question(claims[r], static_cast<int>(i));
      json j;
      j["qid"] = claims[r].id + "#" + std::to_string(i);
      j["cloze_text"] = q.text;
      j["evidence_texts"] = evidence_texts;
      out << j.dump() << "\n";
    }
  }
}

std::map<std::string, std::vector<std::string>> load_answer_responses(
    const std::string& path) {
  std::ifstream in = open_in(path);
  std::map<std::string, std::vector<std::string>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = parse_line(line, path, line_no);
    out[j.at("qid").get<std::string>()] = j.at("answers").get<std::vector<std::string>>();
  }
  return out;
}

void save_results(const std::string& path, const std::vector<VerificationResult>& results) {
  std::ofstream out = open_out(path);
  for (const VerificationResult& r : results) {
    json j;
    j["id"] = r.id;
    j["claim"] = dist_to_json(r.claim_dist);
    j["claim_label"] = to_string(r.claim_label);
    json phrases = json::array();
    for (const Distribution3& d : r.phrase_dists) phrases.push_back(dist_to_json(d));
    j["phrases"] = phrases;
    json labels = json::array();
    for (Veracity v : r.phrase_labels) labels.push_back(to_string(v));
    j["phrase_labels"] = labels;
    j["aggregate_soft"] = dist_to_json(r.aggregate_soft);
    j["aggregate_hard"] = to_string(r.aggregate_hard);
    j["attention"] = r.attention;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["no_phrases"] = r.no_phrases;
    j["culprits"] = r.culprits;
    out << j.dump() << "\n";
  }
}

std::vector<VerificationResult> load_results(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<VerificationResult> results;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = parse_line(line, path, line_no);
    VerificationResult r;
    r.id = j.at("id").get<std::string>();
    r.claim_dist = dist_from_json(j.at("claim"));
    r.claim_label = veracity_from_string(j.at("claim_label").get<std::string>());
    for (const json& d : j.at("phrases")) r.phrase_dists.push_back(dist_from_json(d));
    for (const json& v : j.at("phrase_labels")) {
      r.phrase_labels.push_back(veracity_from_string(v.get<std::string>()));
    }
    r.aggregate_soft = dist_from_json(j.at("aggregate_soft"));
    r.aggregate_hard = veracity_from_string(j.at("aggregate_hard").get<std::string>());
    r.attention = j.at("attention").get<std::vector<double>>();
    r.iterations = j.at("iterations").get<int>();
    r.converged = j.at("converged").get<bool>();
    r.no_phrases = j.at("no_phrases").get<bool>();
    r.culprits = j.at("culprits").get<std::vector<int>>();
    results.push_back(std::move(r));
  }
  return results;
}

namespace {

json config_to_json(const RunConfig& cfg) {
  json j;
  j["d"] = cfg.encoder.d;
  j["n_hash_buckets"] = cfg.encoder.n_hash_buckets;
  j["ngram_max"] = cfg.encoder.ngram_max;
  j["global_token_cap"] = cfg.encoder.global_token_cap;
  j["local_token_cap"] = cfg.encoder.local_token_cap;
  j["d_label"] = cfg.d_label;
  j["lambda"] = cfg.train.lambda;
  j["learning_rate"] = cfg.train.learning_rate;
  j["batch_size"] = cfg.train.batch_size;
  j["epochs"] = cfg.train.epochs;
  j["gumbel_temperature"] = cfg.train.gumbel_temperature;
  j["seed"] = cfg.train.seed;
  j["prior"] = to_string(cfg.prior.kind);
  j["nli_prior_file"] = cfg.prior.source;
  j["max_phrases"] = cfg.max_phrases;
  j["top_k"] = cfg.top_k;
  j["answer_span_max"] = cfg.answerer.max_span_tokens;
  j["answer_context_window"] = cfg.answerer.context_window;
  j["mask_rate"] = cfg.mask_rate;
  j["max_iters"] = cfg.max_iters;
  j["threads"] = cfg.threads;
  j["verb_lexicon"] = cfg.verb_lexicon;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      apply_config_entry(cfg, key, value.get<std::string>());
    } else {
      apply_config_entry(cfg, key, value.dump());
    }
  }
  return cfg;
}

}  // namespace

void save_checkpoint(const std::string& path, const ModelParams& params,
                     const RunConfig& cfg) {
  json j;
  j["format"] = "veriphrase-checkpoint";
  j["version"] = 1;
  j["config"] = config_to_json(cfg);
  j["theta"] = params.theta;
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError(path + ": malformed checkpoint: " + e.what());
  }
  if (j.value("format", "") != "veriphrase-checkpoint") {
    throw ValidationError(path + ": not a veriphrase checkpoint");
  }
  if (j.value("version", 0) != 1) {
    throw ValidationError(path + ": unsupported checkpoint version");
  }
  Checkpoint ckpt;
  ckpt.config = config_from_json(j.at("config"));
  ckpt.params.layout = ckpt.config.layout();
  ckpt.params.theta = j.at("theta").get<std::vector<double>>();
  if (static_cast<int>(ckpt.params.theta.size()) != ckpt.params.layout.total) {
    throw ValidationError(path + ": parameter count does not match the config layout");
  }
  return ckpt;
}

std::string metric_report_to_json(const MetricReport& report) {
  json j;
  j["la"] = report.la;
  j["fev"] = report.fev;
  j["la_z_hard"] = report.la_z_hard;
  j["la_z_soft"] = report.la_z_soft;
  j["agree_hard"] = report.agree_hard;
  j["agree_soft"] = report.agree_soft;
  j["culpa"] = {{"p", report.culpa.precision},
                {"r", report.culpa.recall},
                {"f1", report.culpa.f1},
                {"n_records", report.culpa.n_records},
                {"n_skipped", report.culpa.n_skipped}};
  return j.dump(2);
}

void save_metric_report(const std::string& path, const MetricReport& report) {
  std::ofstream out = open_out(path);
  out << metric_report_to_json(report) << "\n";
}

}  // namespace veriphrase
