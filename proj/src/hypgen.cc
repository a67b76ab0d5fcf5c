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

#include "repair/hypgen.h"

#include <algorithm>
#include <stdexcept>

namespace repair {

std::string hypothesis_key(const Hypothesis &h) {
  struct Visitor {
    std::string operator()(const TopLevelFrame &t) const {
      return "frame " + t.leaf;
    }
    std::string operator()(const SentenceTypeGuess &s) const {
      return "sentence-type " + s.sentence_type;
    }
    std::string operator()(const CombineChunks &c) const {
      std::string key = "combine";
      for (int id : c.members) key += " " + std::to_string(id);
      return key + " " + c.leaf;
    }
    std::string operator()(const InsertChunk &i) const {
      return "insert " + std::to_string(i.chunk_id) + " " +
             path_to_string(i.constituent) + " " + path_to_string(i.target) +
             " " + i.as_type + (i.coerced ? " guessed" : "");
    }
  };
  return std::visit(Visitor{}, h);
}

std::string hypothesis_kind(const Hypothesis &h) {
  static const char *const kNames[] = {"top-level-frame", "sentence-type",
                                       "combine", "insert"};
  return kNames[h.index()];
}

Policy Policy::parse(std::string_view name) {
  if (name == "meta") return meta_policy();
  if (name.size() != 3) throw std::invalid_argument("unknown policy " + std::string(name));
  Approach a[3];
  for (int i = 0; i < 3; ++i) {
    char c = name[static_cast<std::size_t>(i)];
    if (c == 'T' || c == 't') {
      a[i] = Approach::kTopDown;
    } else if (c == 'B' || c == 'b') {
      a[i] = Approach::kBottomUp;
    } else {
      throw std::invalid_argument("unknown policy " + std::string(name));
    }
  }
  return fixed(Strategy{a[0], a[1], a[2]});
}

std::string Policy::name() const {
  if (meta) return "meta";
  auto letter = [](Approach a) { return a == Approach::kTopDown ? 'T' : 'B'; };
  return {letter(strategy.q1), letter(strategy.q2), letter(strategy.q3)};
}

std::vector<Policy> all_policies() {
  std::vector<Policy> out;
  for (const char *name :
       {"TTT", "TTB", "TBT", "TBB", "BTT", "BTB", "BBT", "BBB"}) {
    out.push_back(Policy::parse(name));
  }
  out.push_back(Policy::meta_policy());
  return out;
}

bool content_conforms(const InterlinguaSpec &spec, const FeatureStructure &ilt,
                      const TypeName &leaf) {
  FeatureStructure copy = ilt;
  if (const SlotValue *st = copy.find(kSentenceTypeSlot)) {
    if (!st->is_atom() || !spec.is_sentence_type(st->atom().text())) {
      copy.erase(kSentenceTypeSlot);
    }
  }
  return spec.conforms(copy, leaf);
}

std::vector<OpenSlot> insertable_slots(const InterlinguaSpec &spec,
                                       const FeatureStructure &ilt) {
  std::vector<OpenSlot> out;
  for (OpenSlot &slot : spec.open_slots(ilt)) {
    if (InterlinguaSpec::is_structural_name(slot.allowed)) {
      out.push_back(std::move(slot));
    }
  }
  return out;
}

namespace {

struct Scored {
  Hypothesis h;
  double score;
};

void sort_scored(std::vector<Scored> &v) {
  std::stable_sort(v.begin(), v.end(), [](const Scored &a, const Scored &b) {
    return a.score > b.score;
  });
}

void append(std::vector<Hypothesis> &out, const std::vector<Scored> &v) {
  for (const Scored &s : v) out.push_back(s.h);
}

double slot_score(const Networks &nets, const OpenSlot &slot) {
  static const UnitSet kTrue{std::string(kTrueUnit)};
  return nets.slot_prior.score(kTrue, slot_unit(slot.frame, slot.slot));
}

double filler_score(const Networks &nets, const OpenSlot &slot,
                    const TypeName &leaf) {
  return nets.slot_filler.score(UnitSet{slot_unit(slot.frame, slot.slot)},
                                leaf);
}

double guess_score(const Networks &nets, const Chunk &chunk,
                   const TypeName &leaf) {
  return nets.symbol_to_type.score(
      UnitSet(chunk.symbols.begin(), chunk.symbols.end()), leaf);
}

bool whole_chunk_available(const Chunk &c) {
  return !c.consumed && c.used.empty();
}

// A chunk without a definite type that the top-down search may assume is
// of some type. Wrappers around demoted atomic slots are not candidates.
bool guessable(const Chunk &c) {
  return c.unknown() && whole_chunk_available(c) &&
         c.source != ChunkSource::kDemoted;
}

// Typed constituents that conform to their own leaf.
struct TypedConstituent {
  const Chunk *chunk;
  FeaturePath path;
  TypeName leaf;
};

std::vector<TypedConstituent> typed_constituents(
    const DynamicRepairMemory &drm, const InterlinguaSpec &spec) {
  std::vector<TypedConstituent> out;
  for (const Chunk &c : drm.chunks) {
    for (const auto &[path, fs] : available_constituents(c)) {
      std::optional<TypeName> leaf = spec.leaf_type_of(fs);
      if (!leaf || !spec.conforms(fs, *leaf)) continue;
      out.push_back(TypedConstituent{&c, path, *leaf});
    }
  }
  return out;
}

}  // namespace

std::vector<Hypothesis> gen_top_level(const DynamicRepairMemory &drm,
                                      const InterlinguaSpec &spec,
                                      const Networks &nets,
                                      const RepairConfig &config,
                                      bool keep_parser_frame) {
  std::vector<TypeName> leaves = spec.leaves_under(spec.root());
  UnitSet mask(leaves.begin(), leaves.end());
  std::vector<Hypothesis> out;
  int cap = std::max(0, config.top_frame_candidates);
  for (const Prediction &p : nets.symbols_to_type.predict(drm.all_symbols, &mask)) {
    if (static_cast<int>(out.size()) >= cap) break;
    out.push_back(TopLevelFrame{p.output});
  }
  if (keep_parser_frame && drm.parser_leaf && mask.count(*drm.parser_leaf)) {
    bool present = false;
    for (const Hypothesis &h : out) {
      present = present || std::get<TopLevelFrame>(h).leaf == *drm.parser_leaf;
    }
    if (!present) out.push_back(TopLevelFrame{*drm.parser_leaf});
  }
  return out;
}

std::vector<Hypothesis> gen_sentence_type(const DynamicRepairMemory &drm,
                                          const InterlinguaSpec &spec,
                                          const Networks &nets) {
  UnitSet mask(spec.sentence_types().begin(), spec.sentence_types().end());
  std::vector<Hypothesis> out;
  for (const Prediction &p :
       nets.symbols_to_sentence_type.predict(drm.all_symbols, &mask)) {
    out.push_back(SentenceTypeGuess{p.output});
  }
  return out;
}

std::vector<Hypothesis> gen_combine(const DynamicRepairMemory &drm,
                                    const InterlinguaSpec &spec,
                                    const Networks &nets) {
  constexpr std::size_t kPerSubset = 2;
  std::vector<const Chunk *> pool;
  for (auto it = drm.chunks.rbegin(); it != drm.chunks.rend(); ++it) {
    if (whole_chunk_available(*it) && !it->unknown() && !it->pending_into &&
        spec.conforms(it->fs, *it->leaf_type)) {
      pool.push_back(&*it);
    }
  }
  std::vector<Hypothesis> out;
  if (pool.size() < 2) return out;

  std::vector<OpenSlot> slots = insertable_slots(spec, drm.current_ilt);
  auto hosts = [&](const TypeName &leaf, const std::vector<const Chunk *> &members) {
    bool fits = false;
    for (const OpenSlot &s : slots) fits = fits || spec.subsumes(s.allowed, leaf);
    if (!fits) return false;
    const LeafRule *rule = spec.leaf(leaf);
    for (const Chunk *m : members) {
      bool ok = false;
      for (const auto &[slot, type] : rule->slots) {
        ok = ok || (InterlinguaSpec::is_structural_name(type) &&
                    spec.subsumes(type, *m->leaf_type));
      }
      if (!ok) return false;
    }
    return true;
  };

  auto offer = [&](const std::vector<const Chunk *> &members) {
    UnitSet mask;
    UnitSet active;
    for (const TypeName &leaf : spec.leaves()) {
      if (hosts(leaf, members)) mask.insert(leaf);
    }
    if (mask.empty()) return;
    std::vector<int> ids;
    for (const Chunk *m : members) {
      active.insert(m->symbols.begin(), m->symbols.end());
      ids.push_back(m->id);
    }
    std::sort(ids.begin(), ids.end());
    std::vector<Prediction> ranked = nets.symbols_to_type.predict(active, &mask);
    for (std::size_t i = 0; i < ranked.size() && i < kPerSubset; ++i) {
      out.push_back(CombineChunks{ids, ranked[i].output});
    }
  };

  const std::size_t n = pool.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) offer({pool[i], pool[j]});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) offer({pool[i], pool[j], pool[k]});
    }
  }
  return out;
}

std::vector<Hypothesis> gen_insert_bottom_up(const DynamicRepairMemory &drm,
                                             const InterlinguaSpec &spec,
                                             const Networks &nets,
                                             bool guess_unknown) {
  std::vector<OpenSlot> slots = insertable_slots(spec, drm.current_ilt);
  std::vector<Scored> definite;
  for (const TypedConstituent &tc : typed_constituents(drm, spec)) {
    for (const OpenSlot &slot : slots) {
      if (!spec.subsumes(slot.allowed, tc.leaf)) continue;
      definite.push_back(
          Scored{InsertChunk{tc.chunk->id, tc.path, slot.path, tc.leaf, false},
                 slot_score(nets, slot) + filler_score(nets, slot, tc.leaf)});
    }
  }
  sort_scored(definite);
  std::vector<Hypothesis> out;
  append(out, definite);
  if (!guess_unknown) return out;

  constexpr std::size_t kGuesses = 3;
  std::vector<Scored> guessed;
  for (const Chunk &c : drm.chunks) {
    if (!guessable(c)) continue;
    for (std::size_t g = 0; g < c.candidate_types.size() && g < kGuesses; ++g) {
      const TypeName &leaf = c.candidate_types[g].output;
      for (const OpenSlot &slot : slots) {
        if (!spec.subsumes(slot.allowed, leaf)) continue;
        guessed.push_back(Scored{
            InsertChunk{c.id, {}, slot.path, leaf, true},
            c.candidate_types[g].score + slot_score(nets, slot) +
                filler_score(nets, slot, leaf)});
      }
    }
  }
  sort_scored(guessed);
  append(out, guessed);
  return out;
}

std::vector<Hypothesis> gen_insert_top_down(const DynamicRepairMemory &drm,
                                            const InterlinguaSpec &spec,
                                            const Networks &nets) {
  std::vector<OpenSlot> slots = insertable_slots(spec, drm.current_ilt);
  std::vector<std::pair<OpenSlot, double>> ranked;
  for (const OpenSlot &s : slots) ranked.emplace_back(s, slot_score(nets, s));
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });

  std::vector<TypedConstituent> typed = typed_constituents(drm, spec);
  std::vector<Hypothesis> out;
  for (const auto &[slot, unused] : ranked) {
    std::vector<TypeName> allowed = spec.leaves_under(slot.allowed);
    UnitSet mask(allowed.begin(), allowed.end());
    std::vector<Prediction> fillers = nets.slot_filler.predict(
        UnitSet{slot_unit(slot.frame, slot.slot)}, &mask);
    for (const Prediction &p : fillers) {
      for (const TypedConstituent &tc : typed) {
        if (tc.leaf == p.output) {
          out.push_back(InsertChunk{tc.chunk->id, tc.path, slot.path, tc.leaf, false});
        }
      }
    }
    std::vector<Scored> guessed;
    for (const Chunk &c : drm.chunks) {
      if (!guessable(c)) continue;
      for (const Prediction &p : fillers) {
        guessed.push_back(Scored{InsertChunk{c.id, {}, slot.path, p.output, true},
                                 p.score + guess_score(nets, c, p.output)});
      }
    }
    sort_scored(guessed);
    append(out, guessed);
  }
  return out;
}

namespace {

bool has_valid_sentence_type(const InterlinguaSpec &spec,
                             const FeatureStructure &ilt) {
  const SlotValue *st = ilt.find(kSentenceTypeSlot);
  return st != nullptr && st->is_atom() &&
         spec.is_sentence_type(st->atom().text());
}

// Moves a sentence-type the interlingua does not define out of the ILT.
void displace_invalid_sentence_type(DynamicRepairMemory &drm,
                                    const InterlinguaSpec &spec) {
  const SlotValue *st = drm.current_ilt.find(kSentenceTypeSlot);
  if (st != nullptr && !has_valid_sentence_type(spec, drm.current_ilt)) {
    drm.displaced.set(kSentenceTypeSlot, *st);
    drm.current_ilt.erase(kSentenceTypeSlot);
  }
}

std::optional<Hypothesis> first_unfailed(const DynamicRepairMemory &drm,
                                         const std::vector<Hypothesis> &list) {
  for (const Hypothesis &h : list) {
    if (drm.failed.count(hypothesis_key(h)) == 0) return h;
  }
  return std::nullopt;
}

bool insert_passed(const DynamicRepairMemory &drm) {
  for (const TranscriptEntry &e : drm.transcript) {
    if (e.answer && std::holds_alternative<InsertChunk>(e.hypothesis)) {
      return true;
    }
  }
  return false;
}

}  // namespace

void settle_first_question(DynamicRepairMemory &drm,
                           const InterlinguaSpec &spec, bool confirmed) {
  drm.first_question_settled = true;
  drm.top_level_confirmed = confirmed;
  if (confirmed) displace_invalid_sentence_type(drm, spec);
  drm.sentence_type_pending = !has_valid_sentence_type(spec, drm.current_ilt);
}

std::optional<Hypothesis> next_hypothesis(DynamicRepairMemory &drm,
                                          const InterlinguaSpec &spec,
                                          const Networks &nets,
                                          const RepairConfig &config) {
  if (drm.parsed_completely) {
    if (!drm.first_question_settled) {
      drm.first_question_settled = true;
      drm.top_level_confirmed = drm.parser_leaf.has_value();
    }
    return std::nullopt;
  }
  if (drm.questions_asked >= config.max_questions) return std::nullopt;
  const Policy &policy = config.policy;

  if (!drm.first_question_settled) {
    bool parser_fits = drm.parser_leaf &&
                       content_conforms(spec, drm.current_ilt, *drm.parser_leaf);
    std::vector<Hypothesis> list;
    if (policy.meta) {
      if (parser_fits && drm.quality == ParseQuality::kGood) {
        std::vector<TypeName> leaves = spec.leaves_under(spec.root());
        UnitSet mask(leaves.begin(), leaves.end());
        auto ranked = nets.symbols_to_type.predict(drm.all_symbols, &mask);
        if (!ranked.empty() && ranked.front().output == *drm.parser_leaf) {
          settle_first_question(drm, spec, true);
        }
      }
      if (!drm.first_question_settled) {
        if (drm.quality == ParseQuality::kBad) {
          list = gen_top_level(drm, spec, nets, config, true);
        } else {
          if (drm.parser_leaf) list.push_back(TopLevelFrame{*drm.parser_leaf});
          for (Hypothesis &h : gen_top_level(drm, spec, nets, config, false)) {
            if (!drm.parser_leaf ||
                std::get<TopLevelFrame>(h).leaf != *drm.parser_leaf) {
              list.push_back(std::move(h));
            }
          }
        }
      }
    } else if (policy.strategy.q1 == Approach::kTopDown && parser_fits) {
      settle_first_question(drm, spec, true);
    } else {
      bool keep = policy.strategy.q1 == Approach::kTopDown ||
                  drm.quality == ParseQuality::kBad;
      list = gen_top_level(drm, spec, nets, config, keep);
    }
    if (!drm.first_question_settled) {
      if (auto h = first_unfailed(drm, list)) return h;
      // Every guess was rejected: keep the parser's analysis unconfirmed.
      settle_first_question(drm, spec, false);
    }
  }

  if (drm.sentence_type_pending) {
    if (auto h = first_unfailed(drm, gen_sentence_type(drm, spec, nets))) {
      return h;
    }
    drm.sentence_type_pending = false;
  }

  bool combine = policy.meta ? config.enable_combine
                             : policy.strategy.q2 == Approach::kBottomUp;
  if (combine) {
    if (auto h = first_unfailed(drm, gen_combine(drm, spec, nets))) return h;
  }

  if (policy.meta) {
    if (!drm.search_top_down && !insert_passed(drm)) {
      if (auto h = first_unfailed(
              drm, gen_insert_bottom_up(drm, spec, nets, false))) {
        return h;
      }
    }
    drm.search_top_down = true;
    return first_unfailed(drm, gen_insert_top_down(drm, spec, nets));
  }
  if (policy.strategy.q3 == Approach::kBottomUp) {
    return first_unfailed(drm, gen_insert_bottom_up(drm, spec, nets, true));
  }
  return first_unfailed(drm, gen_insert_top_down(drm, spec, nets));
}

}  // namespace repair
