// Copyright 2026 The Interlingua Repair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "repair/engine.h"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace repair {

double accuracy(const FeatureStructure &candidate,
                const FeatureStructure &gold) {
  std::set<FlatPair> c = flatten(candidate);
  std::set<FlatPair> g = flatten(gold);
  if (c.empty() && g.empty()) return 1.0;
  if (c.empty() || g.empty()) return 0.0;
  std::size_t common = 0;
  for (const FlatPair &p : c) common += g.count(p);
  if (common == 0) return 0.0;
  double precision = static_cast<double>(common) / static_cast<double>(c.size());
  double recall = static_cast<double>(common) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

namespace {

bool covers(const FeatureStructure &outer, const FeatureStructure &inner) {
  std::set<FlatPair> big = flatten(outer);
  for (const FlatPair &p : flatten(inner)) {
    if (big.count(p) == 0) return false;
  }
  return true;
}

bool value_covers(const SlotValue &gold, const FeatureStructure &inner) {
  if (gold.is_structure()) return covers(gold.structure(), inner);
  if (gold.is_multiple()) {
    for (const SlotValue &e : gold.elements()) {
      if (e.is_structure() && covers(e.structure(), inner)) return true;
    }
  }
  return false;
}

}  // namespace

bool oracle_answer(const FeatureStructure &gold, const Hypothesis &h,
                   const DynamicRepairMemory &drm,
                   const InterlinguaSpec &spec) {
  if (const auto *t = std::get_if<TopLevelFrame>(&h)) {
    std::optional<std::string> frame = gold.frame();
    return frame && *frame == spec.leaf(t->leaf)->frame;
  }
  if (const auto *s = std::get_if<SentenceTypeGuess>(&h)) {
    const SlotValue *st = gold.find(kSentenceTypeSlot);
    return st != nullptr && st->is_atom() &&
           st->atom() == Atom::symbol(s->sentence_type);
  }
  if (const auto *c = std::get_if<CombineChunks>(&h)) {
    const std::string &frame = spec.leaf(c->leaf)->frame;
    for (const OpenSlot &slot : insertable_slots(spec, drm.current_ilt)) {
      std::optional<SlotValue> gv = get_path(gold, slot.path);
      if (!gv || !gv->is_structure() || gv->structure().frame() != frame) {
        continue;
      }
      bool all = true;
      for (int id : c->members) {
        const Chunk *m = drm.chunk(id);
        bool placed = false;
        for (const Slot &s : gv->structure().slots()) {
          placed = placed || (m != nullptr && value_covers(s.value, m->fs));
        }
        all = all && placed;
      }
      if (all) return true;
    }
    return false;
  }
  const auto &ins = std::get<InsertChunk>(h);
  std::optional<SlotValue> gv = get_path(gold, ins.target);
  if (!gv) return false;
  return value_covers(*gv, inserted_value(ins, drm, spec));
}

bool OracleAnswerer::answer(const std::string &, const Hypothesis &h,
                            const DynamicRepairMemory &drm) {
  return oracle_answer(gold_, h, drm, spec_);
}

// --- final assembly -----------------------------------------------------------

namespace {

FeatureStructure merge_missing(const FeatureStructure &into,
                               const FeatureStructure &from) {
  FeatureStructure out = into;
  for (const Slot &s : from.slots()) {
    const SlotValue *mine = out.find(s.name);
    if (mine == nullptr) {
      out.set(s.name, s.value);
    } else if (mine->is_structure() && s.value.is_structure() &&
               mine->structure().frame() == s.value.structure().frame()) {
      out.set(s.name, merge_missing(mine->structure(), s.value.structure()));
    }
  }
  return out;
}

FeatureStructure with_sentence_type_first(const FeatureStructure &ilt,
                                          const SlotValue &st) {
  FeatureStructure out;
  out.set(kSentenceTypeSlot, st);
  for (const Slot &s : ilt.slots()) out.set(s.name, s.value);
  return out;
}

}  // namespace

FeatureStructure assemble_result(const DynamicRepairMemory &drm,
                                 const InterlinguaSpec &spec) {
  FeatureStructure ilt = drm.current_ilt;
  std::optional<TypeName> leaf = spec.leaf_type_of(ilt);
  for (const Chunk &c : drm.chunks) {
    if (c.source != ChunkSource::kDemoted || c.consumed || !c.origin || !leaf) {
      continue;
    }
    if (c.leaf_type &&
        drm.failed.count(hypothesis_key(
            InsertChunk{c.id, {}, *c.origin, *c.leaf_type, false})) > 0) {
      continue;
    }
    SlotValue value = c.leaf_type ? SlotValue(c.fs)
                                  : *c.fs.find(c.origin->back().slot);
    std::optional<SlotValue> existing = get_path(ilt, *c.origin);
    FeatureStructure candidate;
    if (!existing) {
      candidate = set_path(ilt, *c.origin, value);
    } else if (existing->is_structure() && value.is_structure() &&
               existing->structure().frame() == value.structure().frame()) {
      candidate = set_path(
          ilt, *c.origin,
          merge_missing(existing->structure(), value.structure()));
    } else {
      continue;
    }
    if (content_conforms(spec, candidate, *leaf)) ilt = std::move(candidate);
  }
  if (const SlotValue *st = drm.displaced.find(kSentenceTypeSlot)) {
    if (!ilt.has(kSentenceTypeSlot) && st->is_atom() &&
        spec.is_sentence_type(st->atom().text()) &&
        drm.failed.count(hypothesis_key(
            SentenceTypeGuess{st->atom().text()})) == 0) {
      ilt = with_sentence_type_first(ilt, *st);
    }
  }
  if (const SlotValue *act = drm.displaced.find(kSpeechActSlot)) {
    if (!ilt.has(kSpeechActSlot)) ilt.set(kSpeechActSlot, *act);
  }
  return ilt;
}

std::string transcript_text(const std::vector<TranscriptEntry> &transcript) {
  std::string out;
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    std::string n = std::to_string(i + 1);
    out += "Q" + n + ": " + transcript[i].question + "\n";
    out += "A" + n + ": " + (transcript[i].answer ? "yes" : "no") + "\n";
  }
  return out;
}

// --- sessions -----------------------------------------------------------------

Session::Session(const ParserOutput &po, const InterlinguaSpec &spec,
                 const Networks &nets, Networks *train_nets,
                 const Glosses &glosses, RepairConfig config)
    : po_(po),
      spec_(spec),
      nets_(nets),
      train_nets_(train_nets),
      glosses_(glosses),
      config_(std::move(config)),
      drm_(initialize(po, spec, nets)) {
  advance();
}

void Session::advance() {
  pending_ = next_hypothesis(drm_, spec_, nets_, config_);
  drm_.current_hypothesis = pending_;
  if (pending_) {
    drm_.status = HypothesisStatus::kTest;
    question_ = render_question(*pending_, drm_, spec_, glosses_);
  } else {
    question_.clear();
  }
}

void Session::answer(bool yes) {
  if (!pending_) throw std::logic_error("session is finished");
  record_answer(drm_, spec_, nets_, train_nets_, question_, yes);
  advance();
}

void Session::give_up() {
  pending_.reset();
  drm_.current_hypothesis.reset();
  drm_.status = HypothesisStatus::kNone;
  question_.clear();
}

SessionResult Session::result() const {
  SessionResult r;
  r.final_ilt = assemble_result(drm_, spec_);
  r.questions_used = drm_.questions_asked;
  r.transcript = drm_.transcript;
  for (std::size_t i = 0; i < drm_.transcript.size(); ++i) {
    if (drm_.transcript[i].answer) r.questions_to_converge = static_cast<int>(i) + 1;
  }
  if (po_.gold) {
    FeatureStructure before;
    if (po_.partial) {
      before = *po_.partial;
    } else {
      before.set(kSentenceTypeSlot, Atom::symbol("*fragment"));
    }
    r.accuracy_before = accuracy(before, *po_.gold);
    r.accuracy_after = accuracy(r.final_ilt, *po_.gold);
  }
  return r;
}

SessionResult run_session(const ParserOutput &po, const InterlinguaSpec &spec,
                          Networks &nets, Answerer &answerer,
                          const Glosses &glosses, const RepairConfig &config,
                          bool train) {
  Session session(po, spec, nets, train ? &nets : nullptr, glosses, config);
  while (!session.done()) {
    bool yes = answerer.answer(session.question(), *session.pending(),
                               session.memory());
    session.answer(yes);
  }
  return session.result();
}

// --- evaluation ---------------------------------------------------------------

EvalReport evaluate_corpus(const std::vector<ParserOutput> &corpus,
                           const InterlinguaSpec &spec, const Networks &nets,
                           const EvalOptions &options) {
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!corpus[i].gold) throw RecordError("record has no gold structure", i);
  }
  static const Glosses kNoGlosses;
  EvalReport report;
  for (const Policy &policy : options.policies) {
    for (int budget : options.budgets) {
      RepairConfig config;
      config.max_questions = budget;
      config.policy = policy;
      config.enable_combine = options.enable_combine;
      config.top_frame_candidates = options.top_frame_candidates;
      Networks persistent = nets;
      double before = 0.0;
      double after = 0.0;
      double questions = 0.0;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        Networks local = nets;
        Networks *train = nullptr;
        const Networks *read = &nets;
        if (options.reinforcement == Reinforcement::kPerRecord) {
          train = &local;
          read = &local;
        } else if (options.reinforcement == Reinforcement::kPersistent) {
          train = &persistent;
          read = &persistent;
        }
        Session session(corpus[i], spec, *read, train, kNoGlosses, config);
        OracleAnswerer oracle(*corpus[i].gold, spec);
        while (!session.done()) {
          session.answer(oracle.answer(session.question(), *session.pending(),
                                       session.memory()));
        }
        SessionResult r = session.result();
        RecordOutcome o;
        o.policy = policy.name();
        o.budget = budget;
        o.record = i;
        o.before = *r.accuracy_before;
        o.after = *r.accuracy_after;
        o.questions = r.questions_used;
        o.questions_to_converge = r.questions_to_converge;
        before += o.before;
        after += o.after;
        questions += o.questions;
        report.outcomes.push_back(o);
      }
      double n = corpus.empty() ? 1.0 : static_cast<double>(corpus.size());
      report.rows.push_back(
          EvalRow{policy.name(), budget, before / n, after / n, questions / n});
    }
  }
  return report;
}

std::string eval_table(const EvalReport &report) {
  std::string out = "policy\tbudget\taccuracy-before\taccuracy-after\tmean-questions\n";
  char buf[160];
  for (const EvalRow &row : report.rows) {
    std::snprintf(buf, sizeof buf, "%s\t%d\t%.6f\t%.6f\t%.4f\n",
                  row.policy.c_str(), row.budget, row.accuracy_before,
                  row.accuracy_after, row.mean_questions);
    out += buf;
  }
  return out;
}

void train_from_gold(const std::vector<ParserOutput> &corpus,
                     const InterlinguaSpec &spec, Networks &nets) {
  const UnitSet kTrue{std::string(kTrueUnit)};
  for (const ParserOutput &po : corpus) {
    if (!po.gold) continue;
    const FeatureStructure &gold = *po.gold;
    UnitSet symbols(po.partial_symbols.begin(), po.partial_symbols.end());
    for (const SkippedSegment &seg : po.skipped) {
      symbols.insert(seg.symbols.begin(), seg.symbols.end());
    }
    if (!po.partial && po.skipped.empty()) {
      symbols.insert(po.utterance.begin(), po.utterance.end());
    }
    if (std::optional<TypeName> leaf = spec.leaf_type_of(gold)) {
      nets.symbols_to_type.train(symbols, *leaf);
    }
    if (const SlotValue *st = gold.find(kSentenceTypeSlot)) {
      if (st->is_atom() && spec.is_sentence_type(st->atom().text())) {
        nets.symbols_to_sentence_type.train(symbols, st->atom().text());
      }
    }
    for (const auto &[path, node] : constituent_paths(gold)) {
      std::optional<TypeName> node_leaf = spec.leaf_type_of(node);
      if (!node_leaf) continue;
      const LeafRule *rule = spec.leaf(*node_leaf);
      for (const Slot &s : node.slots()) {
        if (!s.value.is_structure()) continue;
        std::optional<TypeName> filler = spec.leaf_type_of(s.value.structure());
        if (!filler || rule->slot_type(s.name) == nullptr) continue;
        std::string unit = slot_unit(rule->frame, s.name);
        nets.slot_filler.train(UnitSet{unit}, *filler);
        nets.slot_prior.train(kTrue, unit);
      }
    }
    for (const SkippedSegment &seg : po.skipped) {
      std::optional<TypeName> leaf = spec.leaf_type_of(seg.fs);
      if (leaf && !seg.symbols.empty()) {
        nets.symbol_to_type.train(UnitSet{seg.symbols.front()}, *leaf);
      }
    }
  }
}

}  // namespace repair
