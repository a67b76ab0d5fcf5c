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

#include "repair/repairmem.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "repair/sexpr.h"

namespace repair {

RecordError::RecordError(const std::string &what, std::size_t record_index)
    : std::runtime_error("record " + std::to_string(record_index) + ": " +
                         what),
      record_index_(record_index) {}

// --- record IO --------------------------------------------------------------

namespace {

std::vector<std::string> words_of(const Sexpr &field) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < field.items.size(); ++i) {
    const Sexpr &w = field.items[i];
    if (w.is_list()) {
      throw ParseError("expected a word or symbol", w.offset);
    }
    out.push_back(w.kind == Sexpr::Kind::kSymbol ? to_lower(w.text) : w.text);
  }
  return out;
}

const Sexpr *subfield(const Sexpr &field, std::string_view name) {
  for (std::size_t i = 1; i < field.items.size(); ++i) {
    const Sexpr &f = field.items[i];
    if (f.is_list() && !f.items.empty() && f.items[0].is_symbol(name)) {
      return &f;
    }
  }
  return nullptr;
}

FeatureStructure fs_field(const Sexpr &field) {
  const Sexpr *fs = subfield(field, "fs");
  if (fs == nullptr || fs->items.size() != 2) {
    throw ParseError("expected (fs (...))", field.offset);
  }
  return fs_from_sexpr(fs->items[1]);
}

std::vector<std::string> list_field(const Sexpr &field, std::string_view name) {
  const Sexpr *f = subfield(field, name);
  return f == nullptr ? std::vector<std::string>{} : words_of(*f);
}

bool flag_value(const Sexpr &field) {
  if (field.items.size() == 2 && field.items[1].is_symbol("true")) return true;
  if (field.items.size() == 2 && field.items[1].is_symbol("false")) {
    return false;
  }
  throw ParseError("expected true or false", field.offset);
}

ParserOutput record_from_sexpr(const Sexpr &form) {
  if (!form.is_list() || form.items.empty() ||
      !form.items[0].is_symbol("record")) {
    throw ParseError("expected (record ...)", form.offset);
  }
  ParserOutput po;
  for (std::size_t i = 1; i < form.items.size(); ++i) {
    const Sexpr &field = form.items[i];
    if (!field.is_list() || field.items.empty() ||
        !field.items[0].is_symbol()) {
      throw ParseError("expected a (field ...) entry", field.offset);
    }
    std::string name = to_lower(field.items[0].text);
    if (name == "id") {
      if (field.items.size() != 2 || field.items[1].is_list()) {
        throw ParseError("expected (id name)", field.offset);
      }
      po.id = field.items[1].text;
    } else if (name == "utterance") {
      po.utterance = words_of(field);
    } else if (name == "quality") {
      if (field.items.size() == 2 && field.items[1].is_symbol("good")) {
        po.quality = ParseQuality::kGood;
      } else if (field.items.size() == 2 && field.items[1].is_symbol("bad")) {
        po.quality = ParseQuality::kBad;
      } else {
        throw ParseError("quality must be good or bad", field.offset);
      }
    } else if (name == "complete") {
      po.parsed_completely = flag_value(field);
    } else if (name == "partial") {
      po.partial = fs_field(field);
      po.partial_symbols = list_field(field, "symbols");
    } else if (name == "skipped") {
      SkippedSegment seg;
      seg.fs = fs_field(field);
      seg.symbols = list_field(field, "symbols");
      seg.words = list_field(field, "words");
      po.skipped.push_back(std::move(seg));
    } else if (name == "gold") {
      if (field.items.size() != 2) {
        throw ParseError("expected (gold (...))", field.offset);
      }
      po.gold = fs_from_sexpr(field.items[1]);
    } else {
      throw ParseError("unknown record field '" + name + "'", field.offset);
    }
  }
  if (po.parsed_completely && !po.skipped.empty()) {
    throw ParseError("a complete parse cannot have skipped segments",
                     form.offset);
  }
  return po;
}

void append_words(std::ostringstream &os, std::string_view head,
                  const std::vector<std::string> &words) {
  os << '(' << head;
  for (const std::string &w : words) os << ' ' << w;
  os << ')';
}

}  // namespace

std::vector<ParserOutput> read_corpus(std::string_view text) {
  std::vector<Sexpr> forms = read_all_sexprs(text);
  std::vector<ParserOutput> out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    try {
      out.push_back(record_from_sexpr(forms[i]));
    } catch (const ParseError &e) {
      throw RecordError(e.what(), i);
    }
  }
  return out;
}

std::vector<ParserOutput> read_corpus_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return read_corpus(buffer.str());
}

ParserOutput read_record(std::string_view text) {
  std::vector<ParserOutput> records = read_corpus(text);
  if (records.size() != 1) {
    throw RecordError("expected exactly one record, found " +
                          std::to_string(records.size()),
                      0);
  }
  return std::move(records.front());
}

std::string write_record(const ParserOutput &po) {
  std::ostringstream os;
  os << "(record\n";
  if (!po.id.empty()) os << "  (id " << po.id << ")\n";
  os << "  ";
  append_words(os, "utterance", po.utterance);
  os << "\n  (quality " << (po.quality == ParseQuality::kGood ? "good" : "bad")
     << ")\n";
  os << "  (complete " << (po.parsed_completely ? "true" : "false") << ")\n";
  if (po.partial) {
    os << "  (partial (fs " << print_fs(*po.partial) << ") ";
    append_words(os, "symbols", po.partial_symbols);
    os << ")\n";
  }
  for (const SkippedSegment &seg : po.skipped) {
    os << "  (skipped (fs " << print_fs(seg.fs) << ") ";
    append_words(os, "symbols", seg.symbols);
    os << ' ';
    append_words(os, "words", seg.words);
    os << ")\n";
  }
  if (po.gold) os << "  (gold " << print_fs(*po.gold) << ")\n";
  os << ")\n";
  return os.str();
}

std::string write_corpus(const std::vector<ParserOutput> &corpus) {
  std::string out;
  for (const ParserOutput &po : corpus) {
    out += write_record(po);
    out += '\n';
  }
  return out;
}

// --- repair memory ----------------------------------------------------------

const Chunk *DynamicRepairMemory::chunk(int id) const {
  for (const Chunk &c : chunks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

Chunk *DynamicRepairMemory::chunk(int id) {
  for (Chunk &c : chunks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

int DynamicRepairMemory::next_chunk_id() const {
  int id = 0;
  for (const Chunk &c : chunks) id = std::max(id, c.id);
  return id + 1;
}

void refresh_candidate_types(DynamicRepairMemory &drm,
                             const InterlinguaSpec &spec,
                             const Networks &nets) {
  UnitSet mask(spec.leaves().begin(), spec.leaves().end());
  for (Chunk &c : drm.chunks) {
    if (!c.unknown()) continue;
    UnitSet active(c.symbols.begin(), c.symbols.end());
    c.candidate_types = nets.symbol_to_type.predict(active, &mask);
  }
}

DynamicRepairMemory initialize(const ParserOutput &po,
                               const InterlinguaSpec &spec,
                               const Networks &nets) {
  DynamicRepairMemory drm;
  drm.quality = po.quality;
  drm.parsed_completely = po.parsed_completely;
  drm.utterance = po.utterance;
  if (po.partial) {
    drm.current_ilt = *po.partial;
    drm.parser_leaf = spec.leaf_type_of(*po.partial);
  } else {
    drm.current_ilt.set(kSentenceTypeSlot, Atom::symbol("*fragment"));
    drm.invented.push_back(Atom::symbol("*fragment"));
  }
  drm.partial_symbols = po.partial_symbols;
  drm.all_symbols.insert(po.partial_symbols.begin(), po.partial_symbols.end());

  int id = 1;
  for (const SkippedSegment &seg : po.skipped) {
    Chunk c;
    c.id = id++;
    c.fs = seg.fs;
    c.symbols = seg.symbols;
    c.words = seg.words;
    c.leaf_type = spec.leaf_type_of(seg.fs);
    c.source = ChunkSource::kSkipped;
    drm.all_symbols.insert(seg.symbols.begin(), seg.symbols.end());
    drm.chunks.push_back(std::move(c));
  }
  if (!po.partial && po.skipped.empty() && !po.parsed_completely) {
    for (const std::string &word : po.utterance) {
      Chunk c;
      c.id = id++;
      c.symbols = {word};
      c.words = {word};
      c.source = ChunkSource::kWord;
      drm.all_symbols.insert(word);
      drm.chunks.push_back(std::move(c));
    }
  }
  refresh_candidate_types(drm, spec, nets);
  return drm;
}

void demote_current_ilt(DynamicRepairMemory &drm, const InterlinguaSpec &spec,
                        const Networks &nets,
                        const FeatureStructure &replacement) {
  const FeatureStructure old = drm.current_ilt;
  const std::vector<std::string> &symbols = drm.partial_symbols;
  for (const Slot &slot : old.slots()) {
    if (slot.name == kFrameSlot) {
      drm.discarded.push_back(slot.value.atom());
      continue;
    }
    if (is_distinguished_slot(slot.name)) {
      drm.displaced.set(slot.name, slot.value);
      continue;
    }
    Chunk c;
    c.id = drm.next_chunk_id();
    if (slot.value.is_structure()) {
      c.fs = slot.value.structure();
    } else {
      c.fs.set(slot.name, slot.value);
    }
    c.leaf_type = spec.leaf_type_of(c.fs);
    c.source = ChunkSource::kDemoted;
    c.origin = FeaturePath{PathStep{slot.name, std::nullopt}};
    c.symbols = symbols;
    drm.chunks.push_back(std::move(c));
  }
  drm.current_ilt = replacement;
  for (const Atom &a : atoms_of(replacement)) drm.invented.push_back(a);
  refresh_candidate_types(drm, spec, nets);
}

FeatureStructure chunk_residual(const Chunk &chunk) {
  if (chunk.consumed || chunk.used.count(FeaturePath{}) > 0) {
    return FeatureStructure{};
  }
  FeatureStructure fs = chunk.fs;
  // Remove deeper paths first so that Multiple indices stay valid.
  for (auto it = chunk.used.rbegin(); it != chunk.used.rend(); ++it) {
    if (get_path(fs, *it)) fs = remove_path(fs, *it);
  }
  return fs;
}

namespace {

bool is_prefix(const FeaturePath &prefix, const FeaturePath &path) {
  return prefix.size() <= path.size() &&
         std::equal(prefix.begin(), prefix.end(), path.begin());
}

}  // namespace

std::vector<std::pair<FeaturePath, FeatureStructure>> available_constituents(
    const Chunk &chunk) {
  std::vector<std::pair<FeaturePath, FeatureStructure>> out;
  if (chunk.consumed) return out;
  for (auto &[path, fs] : constituent_paths(chunk.fs)) {
    bool blocked = false;
    for (const FeaturePath &u : chunk.used) {
      if (is_prefix(u, path) || is_prefix(path, u)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) out.emplace_back(path, fs);
  }
  return out;
}

std::vector<Atom> original_atoms(const ParserOutput &po) {
  std::vector<Atom> atoms;
  if (po.partial) atoms = atoms_of(*po.partial);
  for (const SkippedSegment &seg : po.skipped) {
    for (const Atom &a : atoms_of(seg.fs)) atoms.push_back(a);
  }
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

bool material_conserved(const ParserOutput &po,
                        const DynamicRepairMemory &drm) {
  std::vector<Atom> lhs = original_atoms(po);
  lhs.insert(lhs.end(), drm.invented.begin(), drm.invented.end());
  std::sort(lhs.begin(), lhs.end());

  std::vector<Atom> rhs = atoms_of(drm.current_ilt);
  for (const Chunk &c : drm.chunks) {
    for (const Atom &a : atoms_of(chunk_residual(c))) rhs.push_back(a);
  }
  for (const Atom &a : atoms_of(drm.displaced)) rhs.push_back(a);
  rhs.insert(rhs.end(), drm.discarded.begin(), drm.discarded.end());
  std::sort(rhs.begin(), rhs.end());
  return lhs == rhs;
}

}  // namespace repair
