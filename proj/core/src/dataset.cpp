// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/dataset.hpp"

#include <algorithm>
#include <array>

#include "veriphrase/errors.hpp"
#include "veriphrase/rng.hpp"

namespace veriphrase {

ClassCounts count_labels(const std::vector<InputRecord>& records) {
  ClassCounts c;
  for (const InputRecord& r : records) {
    if (!r.has_label) {
      ++c.unlabeled;
    } else if (r.label == Veracity::Sup) {
      ++c.sup;
    } else if (r.label == Veracity::Ref) {
      ++c.ref;
    } else {
      ++c.nei;
    }
  }
  return c;
}

namespace {

struct Relation {
  const char* verb;
  std::array<const char*, 3> objects;
  const char* evidence_suffix;  // fixed per relation: evidence stays a small
                                // closed sentence set, nothing to memorize
};

constexpr std::array<const char*, 8> kEntities = {
    "Alice Moreno",  "Bob Keller",     "Clara Whitfield", "Daniel Okafor",
    "Elena Vasquez", "Frank Harlow",   "Grace Lindqvist", "Henry Abara"};

constexpr std::array<Relation, 6> kRelations = {{
    {"won", {"the marathon trophy", "the regatta trophy", "the decathlon trophy"},
     "at the spring games"},
    {"directed", {"the documentary film", "the musical film", "the thriller film"},
     "for the city studio"},
    {"founded", {"the bakery venture", "the observatory venture", "the vineyard venture"},
     "near the old harbor"},
    {"visited", {"the lighthouse landmark", "the citadel landmark", "the monastery landmark"},
     "during the winter tour"},
    {"composed", {"the symphony score", "the nocturne score", "the overture score"},
     "for the royal ensemble"},
    {"translated", {"the memoir edition", "the almanac edition", "the gazette edition"},
     "for the coastal press"},
}};

struct Fact {
  int entity;
  int relation;
  int object;
};

std::string page_of(int entity) {
  std::string page = "wiki_";
  for (char c : std::string(kEntities[entity])) page += c == ' ' ? '_' : c;
  return page;
}

std::string fact_sentence(const Fact& f) {
  return std::string(kEntities[f.entity]) + " " + kRelations[f.relation].verb + " " +
         kRelations[f.relation].objects[f.object] + " " +
         kRelations[f.relation].evidence_suffix + ".";
}

// Claim text plus the three annotated spans (entity NE, verb VERB, object NP).
void fill_claim(InputRecord& rec, int entity, int relation_verb, int object_rel,
                int object_idx) {
  const std::string e = kEntities[entity];
  const std::string v = kRelations[relation_verb].verb;
  const std::string o = kRelations[object_rel].objects[object_idx];
  rec.claim_text = e + " " + v + " " + o + ".";
  std::vector<ClaimPhrase> phrases;
  size_t pos = 0;
  phrases.push_back({e, pos, pos + e.size(), PhraseKind::NamedEntity});
  pos += e.size() + 1;
  phrases.push_back({v, pos, pos + v.size(), PhraseKind::Verb});
  pos += v.size() + 1;
  phrases.push_back({o, pos, pos + o.size(), PhraseKind::NounPhrase});
  rec.phrases = std::move(phrases);
}

Fact random_fact(Rng& rng) {
  return {static_cast<int>(rng.next_u64() % kEntities.size()),
          static_cast<int>(rng.next_u64() % kRelations.size()),
          static_cast<int>(rng.next_u64() % 3)};
}

}  // namespace

SyntheticOutput generate_synthetic(int n_per_class, uint64_t seed) {
  if (n_per_class < 1) throw ValidationError("generate_synthetic: n_per_class must be >= 1");
  Rng rng(seed);
  SyntheticOutput out;
  out.records.reserve(3 * n_per_class);

  int serial = 0;
  for (int i = 0; i < n_per_class; ++i) {
    for (Veracity cls : {Veracity::Sup, Veracity::Ref, Veracity::Nei}) {
      InputRecord rec;
      rec.id = "synth-" + std::to_string(seed % 100000) + "-" + std::to_string(serial++);
      rec.has_label = true;
      rec.label = cls;

      const Fact fact = random_fact(rng);
      std::vector<std::string> structural(3, "SUP");  // per-slot truth for the prior file
      int claim_entity = fact.entity;

      if (cls == Veracity::Sup) {
        fill_claim(rec, fact.entity, fact.relation, fact.relation, fact.object);
      } else if (cls == Veracity::Ref) {
        int claim_verb = fact.relation;
        int claim_object = fact.object;
        const int n_culprits = 1 + (rng.uniform01() < 0.3 ? 1 : 0);
        // Verb and object perturbations dominate; entity swaps are rarer,
        // mirroring how refuted claims usually go wrong.
        std::vector<double> slot_weights = {0.15, 0.45, 0.40};
        std::set<int> culprits;
        for (int c = 0; c < n_culprits; ++c) {
          const int slot = static_cast<int>(rng.categorical(slot_weights));
          slot_weights[slot] = 0.0;
          culprits.insert(slot);
          structural[slot] = "REF";
          if (slot == 0) {
            while (claim_entity == fact.entity) {
              claim_entity = static_cast<int>(rng.next_u64() % kEntities.size());
            }
          } else if (slot == 1) {
            while (claim_verb == fact.relation) {
              claim_verb = static_cast<int>(rng.next_u64() % kRelations.size());
            }
          } else {
            while (claim_object == fact.object) {
              claim_object = static_cast<int>(rng.next_u64() % 3);
            }
          }
        }
        fill_claim(rec, claim_entity, claim_verb, fact.relation, claim_object);
        rec.culprits = culprits;
      } else {
        fill_claim(rec, fact.entity, fact.relation, fact.relation, fact.object);
      }

      // Evidence assembly.
      const bool empty_evidence = cls == Veracity::Nei && rng.uniform01() < 0.1;
      if (!empty_evidence) {
        std::vector<std::string> sentences;
        std::vector<std::string> pages;
        int gold_idx = -1;
        if (cls == Veracity::Nei) {
          // Same entity, different relation; the claimed relation stays uncovered.
          Fact other = fact;
          while (other.relation == fact.relation) {
            other.relation = static_cast<int>(rng.next_u64() % kRelations.size());
          }
          other.object = static_cast<int>(rng.next_u64() % 3);
          sentences.push_back(fact_sentence(other));
          pages.push_back(page_of(fact.entity));
          for (int s : {0, 1, 2}) structural[s] = s == 0 ? "SUP" : "NEI";
        } else {
          sentences.push_back(fact_sentence(fact));
          pages.push_back(page_of(fact.entity));
          gold_idx = 0;
        }
        for (size_t s = 0; s < sentences.size(); ++s) {
          rec.evidence.sentences.push_back(
              {pages[s], static_cast<int>(s), sentences[s]});
        }
        if (gold_idx >= 0) {
          rec.gold_evidence.push_back({{pages[gold_idx], gold_idx}});
        }
      } else {
        for (int s : {0, 1, 2}) structural[s] = "NEI";
      }

      // Simulated external per-phrase judgments: mostly peaked at the
      // structural truth, sometimes washed out or flipped.
      for (int s = 0; s < 3; ++s) {
        PriorFileEntry entry;
        entry.record_id = rec.id;
        entry.phrase_index = s;
        const double u = rng.uniform01();
        std::string label = structural[s];
        if (u < 0.04) {
          const std::array<const char*, 3> all = {"SUP", "REF", "NEI"};
          label = all[rng.next_u64() % 3];
        }
        if (u >= 0.04 && u < 0.14) {
          entry.dist = Distribution3::uniform();
        } else {
          const Veracity v = veracity_from_string(label);
          entry.dist = v == Veracity::Sup   ? Distribution3{0.8, 0.1, 0.1}
                       : v == Veracity::Ref ? Distribution3{0.1, 0.8, 0.1}
                                            : Distribution3{0.1, 0.1, 0.8};
        }
        out.nli_prior.push_back(std::move(entry));
      }

      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<Claim> resolve_claims(const std::vector<InputRecord>& records,
                                  const VerbLexicon& verbs, int max_phrases) {
  std::vector<Claim> claims;
  claims.reserve(records.size());
  for (const InputRecord& r : records) {
    Claim c;
    c.id = r.id;
    c.text = r.claim_text;
    c.phrases = resolve_phrases(r.claim_text, r.phrases, max_phrases, verbs);
    claims.push_back(std::move(c));
  }
  return claims;
}

std::vector<LocalPremise> build_record_premises(const Claim& claim,
                                                const EvidenceSet& evidence, int top_k,
                                                const AnswererConfig& cfg) {
  std::vector<LocalPremise> premises;
  premises.reserve(claim.phrases.size());
  for (size_t i = 0; i < claim.phrases.size(); ++i) {
    const ClozeQuestion q = make_cloze_question(claim, static_cast<int>(i));
    const std::vector<std::string> answers = answer_question(q, evidence, top_k, cfg);
    premises.push_back(build_local_premise(claim, static_cast<int>(i), answers));
  }
  return premises;
}

PreparedDataset prepare_dataset(const std::vector<InputRecord>& records,
                                const std::vector<Claim>& claims,
                                const std::vector<std::vector<LocalPremise>>& premises,
                                const EncoderConfig& enc, int max_phrases) {
  if (records.size() != claims.size() || records.size() != premises.size()) {
    throw ValidationError("prepare_dataset: misaligned records/claims/premises");
  }
  PreparedDataset out;
  out.inputs.reserve(records.size());
  out.golds.reserve(records.size());
  out.retrieved.reserve(records.size());

  for (size_t r = 0; r < records.size(); ++r) {
    const InputRecord& rec = records[r];
    const Claim& claim = claims[r];

    ModelInput input;
    input.id = rec.id;
    input.has_gold = rec.has_label;
    input.gold = rec.label;
    input.n_phrases = std::min<int>(static_cast<int>(claim.phrases.size()), max_phrases);

    std::string evidence_text;
    for (const EvidenceSentence& s : rec.evidence.sentences) {
      if (!evidence_text.empty()) evidence_text += " ";
      evidence_text += s.text;
    }
    input.global_features =
        featurize_pair(claim.text, evidence_text, enc, enc.global_token_cap);

    for (int i = 0; i < input.n_phrases; ++i) {
      const auto it = std::find_if(premises[r].begin(), premises[r].end(),
                                   [&](const LocalPremise& p) { return p.phrase_index == i; });
      if (it == premises[r].end()) {
        throw ValidationError("prepare_dataset: record '" + rec.id +
                              "' is missing a premise for phrase " + std::to_string(i));
      }
      input.local_features.push_back(
          featurize_pair(claim.text, it->text, enc, enc.local_token_cap));
    }
    out.inputs.push_back(std::move(input));

    GoldRecord gold;
    gold.gold_label = rec.label;
    gold.gold_evidence_sets = rec.gold_evidence;
    gold.culprit_indices = rec.culprits;
    out.golds.push_back(std::move(gold));

    std::set<EvidenceKey> retrieved;
    for (const EvidenceSentence& s : rec.evidence.sentences) {
      retrieved.insert({s.page_id, s.line_no});
    }
    out.retrieved.push_back(std::move(retrieved));
  }
  return out;
}

}  // namespace veriphrase
