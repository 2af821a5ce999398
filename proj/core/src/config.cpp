// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/config.hpp"

#include <fstream>
#include <sstream>

#include "veriphrase/errors.hpp"

namespace veriphrase {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

int to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config: key '" + key + "' expects an integer, got '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config: key '" + key + "' expects a number, got '" + v + "'");
  }
}

uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const uint64_t x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config: key '" + key + "' expects an unsigned integer, got '" +
                          v + "'");
  }
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "d") {
    cfg.encoder.d = to_int(key, value);
  } else if (key == "n_hash_buckets") {
    cfg.encoder.n_hash_buckets = to_int(key, value);
  } else if (key == "ngram_max") {
    cfg.encoder.ngram_max = to_int(key, value);
  } else if (key == "global_token_cap") {
    cfg.encoder.global_token_cap = to_int(key, value);
  } else if (key == "local_token_cap") {
    cfg.encoder.local_token_cap = to_int(key, value);
  } else if (key == "d_label") {
    cfg.d_label = to_int(key, value);
  } else if (key == "lambda") {
    cfg.train.lambda = to_double(key, value);
  } else if (key == "learning_rate") {
    cfg.train.learning_rate = to_double(key, value);
  } else if (key == "batch_size") {
    cfg.train.batch_size = to_int(key, value);
  } else if (key == "epochs") {
    cfg.train.epochs = to_int(key, value);
  } else if (key == "gumbel_temperature") {
    cfg.train.gumbel_temperature = to_double(key, value);
  } else if (key == "seed") {
    cfg.train.seed = to_u64(key, value);
  } else if (key == "prior") {
    cfg.prior.kind = prior_kind_from_string(value);
  } else if (key == "nli_prior_file") {
    cfg.prior.source = value;
  } else if (key == "prior_seed") {
    cfg.prior.seed = to_u64(key, value);
  } else if (key == "max_phrases") {
    cfg.max_phrases = to_int(key, value);
  } else if (key == "top_k") {
    cfg.top_k = to_int(key, value);
  } else if (key == "answer_span_max") {
    cfg.answerer.max_span_tokens = to_int(key, value);
  } else if (key == "answer_context_window") {
    cfg.answerer.context_window = to_int(key, value);
  } else if (key == "mask_rate") {
    cfg.mask_rate = to_double(key, value);
  } else if (key == "max_iters") {
    cfg.max_iters = to_int(key, value);
  } else if (key == "threads") {
    cfg.threads = to_int(key, value);
  } else if (key == "verb_lexicon") {
    cfg.verb_lexicon = value;
  } else {
    throw ValidationError("config: unknown key '" + key + "'");
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config: line " + std::to_string(line_no) +
                            " is not 'key = value': " + stripped);
    }
    apply_config_entry(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

std::string config_to_string(const RunConfig& cfg) {
  std::ostringstream out;
  out << "d = " << cfg.encoder.d << "\n"
      << "n_hash_buckets = " << cfg.encoder.n_hash_buckets << "\n"
      << "ngram_max = " << cfg.encoder.ngram_max << "\n"
      << "global_token_cap = " << cfg.encoder.global_token_cap << "\n"
      << "local_token_cap = " << cfg.encoder.local_token_cap << "\n"
      << "d_label = " << cfg.d_label << "\n"
      << "lambda = " << cfg.train.lambda << "\n"
      << "learning_rate = " << cfg.train.learning_rate << "\n"
      << "batch_size = " << cfg.train.batch_size << "\n"
      << "epochs = " << cfg.train.epochs << "\n"
      << "gumbel_temperature = " << cfg.train.gumbel_temperature << "\n"
      << "seed = " << cfg.train.seed << "\n"
      << "prior = " << to_string(cfg.prior.kind) << "\n"
      << "nli_prior_file = " << cfg.prior.source << "\n"
      << "max_phrases = " << cfg.max_phrases << "\n"
      << "top_k = " << cfg.top_k << "\n"
      << "answer_span_max = " << cfg.answerer.max_span_tokens << "\n"
      << "answer_context_window = " << cfg.answerer.context_window << "\n"
      << "mask_rate = " << cfg.mask_rate << "\n"
      << "max_iters = " << cfg.max_iters << "\n"
      << "threads = " << cfg.threads << "\n"
      << "verb_lexicon = " << cfg.verb_lexicon << "\n";
  return out.str();
}

}  // namespace veriphrase
