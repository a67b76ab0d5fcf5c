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

#include "repair/dialogue.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "repair/hypgen.h"
#include "repair/sexpr.h"

namespace repair {

Glosses Glosses::load(std::string_view text) {
  Glosses g;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    ++line_no;
    start = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (nl == text.size()) break;
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw std::runtime_error("gloss line " + std::to_string(line_no) +
                               " is not key<TAB>text");
    }
    g.set(std::string(line.substr(0, tab)), std::string(line.substr(tab + 1)));
    if (nl == text.size()) break;
  }
  return g;
}

Glosses Glosses::load_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gloss file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load(buffer.str());
}

void Glosses::set(std::string key, std::string text) {
  table_[to_lower(key)] = std::move(text);
}

std::optional<std::string> Glosses::find(std::string_view key) const {
  auto it = table_.find(to_lower(key));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::string Glosses::gloss(std::string_view symbol) const {
  if (auto g = find(symbol)) return *g;
  return "\"" + std::string(symbol) + "\"";
}

std::string Glosses::value_gloss(const Atom &atom) const {
  if (atom.is_symbol()) {
    if (auto g = find(atom.text())) return *g;
    return atom.text();
  }
  if (atom.is_integer()) return std::to_string(atom.integer_value());
  return atom.text();
}

// --- paraphrase ---------------------------------------------------------------

namespace {

std::string ordinal(long long n) {
  static const char *const kOrdinals[] = {
      "zeroth",       "first",         "second",       "third",
      "fourth",       "fifth",         "sixth",        "seventh",
      "eighth",       "ninth",         "tenth",        "eleventh",
      "twelfth",      "thirteenth",    "fourteenth",   "fifteenth",
      "sixteenth",    "seventeenth",   "eighteenth",   "nineteenth",
      "twentieth",    "twenty-first",  "twenty-second", "twenty-third",
      "twenty-fourth", "twenty-fifth", "twenty-sixth", "twenty-seventh",
      "twenty-eighth", "twenty-ninth", "thirtieth",    "thirty-first"};
  if (n >= 0 && n <= 31) return std::string("the ") + kOrdinals[n];
  return "the " + std::to_string(n) + "th";
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string join_nonempty(const std::vector<std::string> &parts) {
  std::string out;
  for (const std::string &p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

std::string collapse_spaces(std::string_view s) {
  return join_nonempty(split_words(s));
}

std::string render_slot(const Slot &slot, const Glosses &glosses) {
  if (slot.value.is_atom() && slot.value.atom().is_integer()) {
    auto format = glosses.find(slot.name + "@format");
    if (format && *format == "ordinal") {
      return ordinal(slot.value.atom().integer_value());
    }
  }
  std::string text = paraphrase_value(slot.value, glosses);
  if (auto prefix = glosses.find(slot.name + "@prefix")) {
    text = *prefix + " " + text;
  }
  return text;
}

std::string verb_for(const FeatureStructure &fs, const Glosses &glosses) {
  const SlotValue *who = fs.find("who");
  if (who != nullptr && who->is_structure()) {
    if (auto frame = who->structure().frame()) {
      if (auto be = glosses.find(*frame + "@be")) return *be;
    }
  }
  return "is";
}

std::string paraphrase_body(const FeatureStructure &fs,
                            const Glosses &glosses) {
  std::optional<std::string> frame = fs.frame();
  std::vector<const Slot *> content;
  for (const Slot &s : fs.slots()) {
    if (!is_distinguished_slot(s.name)) content.push_back(&s);
  }
  std::set<std::string> done;
  std::vector<std::string> parts;

  if (frame) {
    if (auto clause = glosses.find(*frame + "@clause")) {
      std::string out;
      std::string_view t = *clause;
      std::size_t i = 0;
      while (i < t.size()) {
        if (t[i] == '{') {
          std::size_t close = t.find('}', i);
          std::string hole(t.substr(i + 1, close - i - 1));
          if (hole == "be") {
            out += verb_for(fs, glosses);
          } else if (const SlotValue *v = fs.find(hole)) {
            out += render_slot(Slot{hole, *v}, glosses);
            done.insert(hole);
          }
          i = close + 1;
        } else {
          out.push_back(t[i++]);
        }
      }
      parts.push_back(collapse_spaces(out));
    } else {
      if (auto order = glosses.find(*frame + "@order")) {
        for (const std::string &name : split_words(*order)) {
          if (const SlotValue *v = fs.find(name)) {
            parts.push_back(render_slot(Slot{name, *v}, glosses));
            done.insert(name);
          }
        }
      } else {
        parts.push_back(glosses.gloss(*frame));
      }
    }
  }
  for (const Slot *s : content) {
    if (done.count(s->name) == 0) parts.push_back(render_slot(*s, glosses));
  }
  return join_nonempty(parts);
}

}  // namespace

std::string paraphrase_value(const SlotValue &value, const Glosses &glosses) {
  if (value.is_atom()) return glosses.value_gloss(value.atom());
  if (value.is_structure()) return paraphrase(value.structure(), glosses);
  std::vector<std::string> parts;
  for (const SlotValue &e : value.elements()) {
    parts.push_back(paraphrase_value(e, glosses));
  }
  return join_nonempty(parts);
}

std::string paraphrase(const FeatureStructure &fs, const Glosses &glosses) {
  std::string body = paraphrase_body(fs, glosses);
  const SlotValue *st = fs.find(kSentenceTypeSlot);
  if (st != nullptr && st->is_atom() && !body.empty()) {
    if (auto end = glosses.find(st->atom().text() + "@end")) {
      body[0] = static_cast<char>(
          std::toupper(static_cast<unsigned char>(body[0])));
      body += *end;
    }
  }
  return body;
}

// --- questions ----------------------------------------------------------------

namespace {

std::string join_words(const std::vector<std::string> &words) {
  return join_nonempty(words);
}

std::string node_frame(const FeatureStructure &ilt, const FeaturePath &target) {
  FeaturePath node(target.begin(), target.end() - 1);
  std::optional<SlotValue> v = get_path(ilt, node);
  if (v && v->is_structure()) {
    if (auto f = v->structure().frame()) return *f;
  }
  return "";
}

std::string chunk_paraphrase(const Chunk &chunk, const FeaturePath &path,
                             bool coerced, const Glosses &glosses) {
  if (!coerced) {
    std::optional<SlotValue> v = get_path(chunk.fs, path);
    if (path.empty()) v = SlotValue(chunk.fs);
    if (v && v->is_structure()) {
      std::string p = paraphrase(v->structure(), glosses);
      if (!p.empty()) return p;
    }
  }
  std::string words = join_words(chunk.words);
  if (!words.empty()) return words;
  return print_fs(chunk.fs);
}

std::string replace_all(std::string text, std::string_view hole,
                        std::string_view with) {
  std::size_t pos = 0;
  while ((pos = text.find(hole, pos)) != std::string::npos) {
    text.replace(pos, hole.size(), with);
    pos += with.size();
  }
  return text;
}

std::string list_phrase(const std::vector<std::string> &items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += (i + 1 == items.size()) ? " and " : ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

FeatureStructure inserted_value(const InsertChunk &h,
                                const DynamicRepairMemory &drm,
                                const InterlinguaSpec &spec) {
  if (h.coerced) return spec.template_for(h.as_type);
  const Chunk *c = drm.chunk(h.chunk_id);
  if (c == nullptr) throw StaleHypothesis("no chunk " + std::to_string(h.chunk_id));
  if (h.constituent.empty()) return c->fs;
  std::optional<SlotValue> v = get_path(c->fs, h.constituent);
  if (!v || !v->is_structure()) {
    throw StaleHypothesis("chunk " + std::to_string(h.chunk_id) +
                          " has no constituent at " +
                          path_to_string(h.constituent));
  }
  return v->structure();
}

std::string render_question(const Hypothesis &h,
                            const DynamicRepairMemory &drm,
                            const InterlinguaSpec &spec,
                            const Glosses &glosses) {
  if (const auto *t = std::get_if<TopLevelFrame>(&h)) {
    const std::string &frame = spec.leaf(t->leaf)->frame;
    std::string topic = glosses.find(frame + "@topic").value_or(glosses.gloss(frame));
    return "Is your sentence mainly about " + topic + "?";
  }
  if (const auto *s = std::get_if<SentenceTypeGuess>(&h)) {
    return "Is your sentence " + glosses.gloss(s->sentence_type) + "?";
  }
  if (const auto *c = std::get_if<CombineChunks>(&h)) {
    std::vector<std::string> members;
    for (int id : c->members) {
      const Chunk *chunk = drm.chunk(id);
      members.push_back(chunk == nullptr ? std::to_string(id)
                                         : chunk_paraphrase(*chunk, {}, false, glosses));
    }
    const std::string &frame = spec.leaf(c->leaf)->frame;
    return "Do " + list_phrase(members) + " belong together as " +
           glosses.gloss(frame) + "?";
  }
  const auto &ins = std::get<InsertChunk>(h);
  const Chunk *chunk = drm.chunk(ins.chunk_id);
  std::string filler = chunk == nullptr
                           ? std::to_string(ins.chunk_id)
                           : chunk_paraphrase(*chunk, ins.constituent,
                                              ins.coerced, glosses);
  const std::string &slot = ins.target.back().slot;
  std::string frame = glosses.gloss(node_frame(drm.current_ilt, ins.target));
  if (ins.coerced) {
    std::string sense = glosses.gloss(spec.leaf(ins.as_type)->frame);
    return "Is \"" + filler + "\" meaning " + sense + " the " +
           glosses.gloss(slot) + " of " + frame + " in your sentence?";
  }
  if (auto pattern = glosses.find(slot + "@question")) {
    return replace_all(replace_all(*pattern, "{filler}", filler), "{frame}",
                       frame);
  }
  return "Is " + filler + " the " + glosses.gloss(slot) + " of " + frame +
         " in your sentence?";
}

std::string hypothesis_summary(const Hypothesis &h,
                               const DynamicRepairMemory &drm,
                               const InterlinguaSpec &spec) {
  if (const auto *t = std::get_if<TopLevelFrame>(&h)) {
    return "(top-level-frame ((frame-name " + spec.leaf(t->leaf)->frame + ")))";
  }
  if (const auto *s = std::get_if<SentenceTypeGuess>(&h)) {
    return "(sentence-type " + s->sentence_type + ")";
  }
  if (const auto *c = std::get_if<CombineChunks>(&h)) {
    std::string ids;
    for (int id : c->members) ids += " " + std::to_string(id);
    return "(combine (chunks" + ids + ") ((frame-name " +
           spec.leaf(c->leaf)->frame + ")))";
  }
  const auto &ins = std::get<InsertChunk>(h);
  std::string value;
  try {
    value = print_fs(inserted_value(ins, drm, spec));
  } catch (const StaleHypothesis &) {
    value = "()";
  }
  return "(frame-slot ((frame-name " + node_frame(drm.current_ilt, ins.target) +
         ") (" + ins.target.back().slot + " " + value + ")))";
}

// --- update -------------------------------------------------------------------

namespace {

bool slot_open(const DynamicRepairMemory &drm, const InterlinguaSpec &spec,
               const FeaturePath &target, OpenSlot *found) {
  for (const OpenSlot &s : insertable_slots(spec, drm.current_ilt)) {
    if (s.path == target) {
      if (found != nullptr) *found = s;
      return true;
    }
  }
  return false;
}

void put_sentence_type_first(DynamicRepairMemory &drm, const Atom &st) {
  FeatureStructure fs;
  fs.set(kSentenceTypeSlot, st);
  for (const Slot &s : drm.current_ilt.slots()) {
    if (s.name == kSentenceTypeSlot) {
      FeatureStructure old;
      old.set(s.name, s.value);
      for (const Atom &a : atoms_of(old)) drm.discarded.push_back(a);
      continue;
    }
    fs.set(s.name, s.value);
  }
  drm.current_ilt = std::move(fs);
  drm.invented.push_back(st);
}

}  // namespace

void apply_hypothesis(const Hypothesis &h, DynamicRepairMemory &drm,
                      const InterlinguaSpec &spec, const Networks &nets) {
  if (const auto *t = std::get_if<TopLevelFrame>(&h)) {
    std::optional<TypeName> current = spec.leaf_type_of(drm.current_ilt);
    if (!(current && *current == t->leaf &&
          content_conforms(spec, drm.current_ilt, t->leaf))) {
      demote_current_ilt(drm, spec, nets, spec.template_for(t->leaf));
    }
    settle_first_question(drm, spec, true);
    return;
  }
  if (const auto *s = std::get_if<SentenceTypeGuess>(&h)) {
    put_sentence_type_first(drm, Atom::symbol(s->sentence_type));
    drm.sentence_type_pending = false;
    return;
  }
  if (const auto *c = std::get_if<CombineChunks>(&h)) {
    Chunk combined;
    combined.id = drm.next_chunk_id();
    combined.fs = spec.template_for(c->leaf);
    combined.leaf_type = c->leaf;
    combined.source = ChunkSource::kCombined;
    std::set<std::string> symbols;
    for (int id : c->members) {
      Chunk *m = drm.chunk(id);
      if (m == nullptr) throw StaleHypothesis("no chunk " + std::to_string(id));
      symbols.insert(m->symbols.begin(), m->symbols.end());
      combined.words.insert(combined.words.end(), m->words.begin(), m->words.end());
      m->pending_into = combined.id;
    }
    combined.symbols.assign(symbols.begin(), symbols.end());
    for (const Atom &a : atoms_of(combined.fs)) drm.invented.push_back(a);
    drm.chunks.push_back(std::move(combined));
    return;
  }
  const auto &ins = std::get<InsertChunk>(h);
  if (!slot_open(drm, spec, ins.target, nullptr)) {
    throw StaleHypothesis("slot " + path_to_string(ins.target) +
                          " is no longer open");
  }
  FeatureStructure value = inserted_value(ins, drm, spec);
  Chunk *chunk = drm.chunk(ins.chunk_id);
  drm.current_ilt = set_path(drm.current_ilt, ins.target, value);
  if (ins.coerced) {
    for (const Atom &a : atoms_of(chunk->fs)) drm.discarded.push_back(a);
    for (const Atom &a : atoms_of(value)) drm.invented.push_back(a);
    chunk->used.insert(FeaturePath{});
  } else {
    chunk->used.insert(ins.constituent);
  }
  if (chunk->used.count(FeaturePath{}) > 0) chunk->consumed = true;
}

void reinforce(const Hypothesis &h, const DynamicRepairMemory &drm,
               const InterlinguaSpec &spec, Networks &nets) {
  if (const auto *t = std::get_if<TopLevelFrame>(&h)) {
    nets.symbols_to_type.train(drm.all_symbols, t->leaf);
  } else if (const auto *s = std::get_if<SentenceTypeGuess>(&h)) {
    nets.symbols_to_sentence_type.train(drm.all_symbols, s->sentence_type);
  } else if (const auto *c = std::get_if<CombineChunks>(&h)) {
    UnitSet active;
    for (int id : c->members) {
      if (const Chunk *m = drm.chunk(id)) {
        active.insert(m->symbols.begin(), m->symbols.end());
      }
    }
    nets.symbols_to_type.train(active, c->leaf);
  } else {
    const auto &ins = std::get<InsertChunk>(h);
    OpenSlot slot;
    if (!slot_open(drm, spec, ins.target, &slot)) return;
    std::string unit = slot_unit(slot.frame, slot.slot);
    nets.slot_filler.train(UnitSet{unit}, ins.as_type);
    nets.slot_prior.train(UnitSet{std::string(kTrueUnit)}, unit);
    const Chunk *chunk = drm.chunk(ins.chunk_id);
    if (ins.coerced && chunk != nullptr) {
      for (const std::string &symbol : chunk->symbols) {
        nets.symbol_to_type.train(UnitSet{symbol}, ins.as_type);
      }
    }
  }
}

void record_answer(DynamicRepairMemory &drm, const InterlinguaSpec &spec,
                   const Networks &read_nets, Networks *train_nets,
                   const std::string &question, bool answer) {
  if (!drm.current_hypothesis || drm.status != HypothesisStatus::kTest) {
    throw std::logic_error("no outstanding question");
  }
  Hypothesis h = *drm.current_hypothesis;
  drm.transcript.push_back(TranscriptEntry{h, question, answer});
  ++drm.questions_asked;
  if (!answer) {
    drm.status = HypothesisStatus::kFail;
    drm.failed.insert(hypothesis_key(h));
    return;
  }
  drm.status = HypothesisStatus::kPass;
  if (train_nets != nullptr) reinforce(h, drm, spec, *train_nets);
  apply_hypothesis(h, drm, spec, read_nets);
  if (train_nets != nullptr && std::holds_alternative<InsertChunk>(h) &&
      std::get<InsertChunk>(h).coerced) {
    refresh_candidate_types(drm, spec, read_nets);
  }
}

}  // namespace repair
