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

#include "repair/fstruct.h"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "repair/sexpr.h"

namespace repair {

Atom Atom::symbol(std::string_view name) {
  return Atom(Kind::kSymbol, to_lower(name), 0);
}

Atom Atom::integer(long long value) { return Atom(Kind::kInteger, "", value); }

Atom Atom::string(std::string value) {
  return Atom(Kind::kString, std::move(value), 0);
}

std::string Atom::to_string() const {
  switch (kind_) {
    case Kind::kSymbol:
      return text_;
    case Kind::kInteger:
      return std::to_string(integer_);
    case Kind::kString: {
      std::string out = "\"";
      for (char c : text_) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
      }
      out.push_back('"');
      return out;
    }
  }
  return text_;
}

SlotValue::SlotValue(Atom atom) : v_(std::move(atom)) {}

SlotValue::SlotValue(FeatureStructure structure)
    : v_(std::make_shared<const FeatureStructure>(std::move(structure))) {}

SlotValue SlotValue::multiple(Multiple elements) {
  if (elements.size() < 2) {
    throw std::invalid_argument("*multiple* needs at least two values");
  }
  for (const SlotValue &e : elements) {
    if (e.is_multiple()) {
      throw std::invalid_argument("*multiple* cannot nest directly");
    }
  }
  SlotValue v;
  v.v_ = std::move(elements);
  return v;
}

bool operator==(const SlotValue &a, const SlotValue &b) {
  if (a.v_.index() != b.v_.index()) return false;
  if (a.is_atom()) return a.atom() == b.atom();
  if (a.is_structure()) {
    return std::get<1>(a.v_) == std::get<1>(b.v_) ||
           a.structure() == b.structure();
  }
  return a.elements() == b.elements();
}

namespace {

bool same_name(std::string_view stored, std::string_view asked) {
  if (stored.size() != asked.size()) return false;
  for (std::size_t i = 0; i < stored.size(); ++i) {
    if (stored[i] != std::tolower(static_cast<unsigned char>(asked[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

const SlotValue *FeatureStructure::find(std::string_view name) const {
  for (const Slot &s : slots_) {
    if (same_name(s.name, name)) return &s.value;
  }
  return nullptr;
}

void FeatureStructure::set(std::string_view name, SlotValue value) {
  for (Slot &s : slots_) {
    if (same_name(s.name, name)) {
      s.value = std::move(value);
      return;
    }
  }
  slots_.push_back(Slot{to_lower(name), std::move(value)});
}

bool FeatureStructure::erase(std::string_view name) {
  auto it = std::find_if(slots_.begin(), slots_.end(),
                         [&](const Slot &s) { return same_name(s.name, name); });
  if (it == slots_.end()) return false;
  slots_.erase(it);
  return true;
}

std::optional<std::string> FeatureStructure::frame() const {
  const SlotValue *v = find(kFrameSlot);
  if (v == nullptr || !v->is_atom() || !v->atom().is_symbol()) {
    return std::nullopt;
  }
  return v->atom().text();
}

bool operator==(const FeatureStructure &a, const FeatureStructure &b) {
  if (a.slots_.size() != b.slots_.size()) return false;
  for (std::size_t i = 0; i < a.slots_.size(); ++i) {
    if (a.slots_[i].name != b.slots_[i].name) return false;
    if (!(a.slots_[i].value == b.slots_[i].value)) return false;
  }
  return true;
}

bool is_distinguished_slot(std::string_view name) {
  return name == kFrameSlot || name == kSentenceTypeSlot ||
         name == kSpeechActSlot;
}

// --- paths ---------------------------------------------------------------

FeaturePath make_path(std::initializer_list<std::string_view> slots) {
  FeaturePath path;
  for (std::string_view s : slots) path.push_back(PathStep{std::string(s), {}});
  return path;
}

std::string path_to_string(const FeaturePath &path) {
  if (path.empty()) return ".";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out.push_back('.');
    out += path[i].slot;
    if (path[i].index) out += "[" + std::to_string(*path[i].index) + "]";
  }
  return out;
}

FeaturePath path_from_string(std::string_view text) {
  FeaturePath path;
  if (text == "." || text.empty()) return path;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    std::string_view part = text.substr(
        start, dot == std::string_view::npos ? std::string_view::npos
                                             : dot - start);
    PathStep step;
    std::size_t bracket = part.find('[');
    if (bracket != std::string_view::npos && part.back() == ']') {
      std::size_t index = 0;
      std::string_view digits =
          part.substr(bracket + 1, part.size() - bracket - 2);
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), index);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw PathError("bad path index in '" + std::string(text) + "'");
      }
      step.index = index;
      part = part.substr(0, bracket);
    }
    if (part.empty()) throw PathError("empty path element in '" + std::string(text) + "'");
    step.slot = to_lower(part);
    path.push_back(std::move(step));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return path;
}

// --- reading and printing -------------------------------------------------

namespace {

FeatureStructure structure_from_sexpr(const Sexpr &list);

SlotValue value_from_sexpr(const Sexpr &e, bool inside_multiple) {
  switch (e.kind) {
    case Sexpr::Kind::kSymbol:
      return Atom::symbol(e.text);
    case Sexpr::Kind::kInteger:
      return Atom::integer(e.integer);
    case Sexpr::Kind::kString:
      return Atom::string(e.text);
    case Sexpr::Kind::kList:
      break;
  }
  if (!e.items.empty() && e.items.front().is_symbol("*multiple*")) {
    if (inside_multiple) {
      throw ParseError("*multiple* nested directly in *multiple*", e.offset);
    }
    if (e.items.size() < 3) {
      throw ParseError("*multiple* needs at least two values", e.offset);
    }
    SlotValue::Multiple elements;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      elements.push_back(value_from_sexpr(e.items[i], true));
    }
    return SlotValue::multiple(std::move(elements));
  }
  return structure_from_sexpr(e);
}

FeatureStructure structure_from_sexpr(const Sexpr &list) {
  if (!list.is_list()) {
    throw ParseError("expected a parenthesized feature structure", list.offset);
  }
  FeatureStructure fs;
  for (const Sexpr &slot : list.items) {
    if (!slot.is_list()) {
      throw ParseError("expected a (slot value) pair", slot.offset);
    }
    if (slot.items.empty() || !slot.items.front().is_symbol()) {
      throw ParseError("slot name must be a symbol", slot.offset);
    }
    if (slot.items.size() == 1) {
      throw ParseError("empty slot value", slot.offset);
    }
    if (slot.items.size() > 2) {
      throw ParseError("slot has more than one value", slot.items[2].offset);
    }
    std::string name = to_lower(slot.items[0].text);
    if (fs.has(name)) {
      throw ParseError("duplicate slot '" + name + "'", slot.items[0].offset);
    }
    SlotValue value = value_from_sexpr(slot.items[1], false);
    if (name == kFrameSlot) {
      if (!value.is_atom() || !value.atom().is_symbol() ||
          value.atom().text().empty() || value.atom().text()[0] != '*') {
        throw ParseError("frame value must be a symbol starting with '*'",
                         slot.items[1].offset);
      }
    }
    fs.set(name, std::move(value));
  }
  return fs;
}

void print_value_to(const SlotValue &v, std::string &out);

void print_fs_to(const FeatureStructure &fs, std::string &out) {
  out.push_back('(');
  bool first = true;
  for (const Slot &s : fs.slots()) {
    if (!first) out.push_back(' ');
    first = false;
    out.push_back('(');
    out += s.name;
    out.push_back(' ');
    print_value_to(s.value, out);
    out.push_back(')');
  }
  out.push_back(')');
}

void print_value_to(const SlotValue &v, std::string &out) {
  if (v.is_atom()) {
    out += v.atom().to_string();
  } else if (v.is_structure()) {
    print_fs_to(v.structure(), out);
  } else {
    out += "(*multiple*";
    for (const SlotValue &e : v.elements()) {
      out.push_back(' ');
      print_value_to(e, out);
    }
    out.push_back(')');
  }
}

}  // namespace

FeatureStructure fs_from_sexpr(const Sexpr &form) {
  return structure_from_sexpr(form);
}

FeatureStructure read_fs(std::string_view text) {
  return structure_from_sexpr(read_one_sexpr(text));
}

std::string print_fs(const FeatureStructure &fs) {
  std::string out;
  print_fs_to(fs, out);
  return out;
}

std::string print_value(const SlotValue &value) {
  std::string out;
  print_value_to(value, out);
  return out;
}

// --- path access ------------------------------------------------------------

namespace {

// Resolves one step against a structure. Returns nullptr when absent.
const SlotValue *step_into(const FeatureStructure &fs, const PathStep &step) {
  const SlotValue *v = fs.find(step.slot);
  if (v == nullptr) return nullptr;
  if (step.index) {
    if (!v->is_multiple() || *step.index >= v->elements().size()) {
      return nullptr;
    }
    return &v->elements()[*step.index];
  }
  return v;
}

SlotValue replace_element(const SlotValue &multiple, std::size_t index,
                          const SlotValue &value) {
  SlotValue::Multiple elements = multiple.elements();
  elements[index] = value;
  return SlotValue::multiple(std::move(elements));
}

FeatureStructure set_from(const FeatureStructure &fs, const FeaturePath &path,
                          std::size_t depth, const SlotValue &value) {
  const PathStep &step = path[depth];
  FeatureStructure out = fs;
  const SlotValue *current = fs.find(step.slot);
  if (depth + 1 == path.size()) {
    if (step.index) {
      if (current == nullptr || !current->is_multiple() ||
          *step.index >= current->elements().size()) {
        throw PathError("no *multiple* element at " + path_to_string(path));
      }
      out.set(step.slot, replace_element(*current, *step.index, value));
    } else {
      out.set(step.slot, value);
    }
    return out;
  }
  const SlotValue *next = step_into(fs, step);
  if (next == nullptr) {
    throw PathError("path prefix is absent at " + path_to_string(path));
  }
  if (!next->is_structure()) {
    throw PathError("path prefix is not a structure at " +
                    path_to_string(path));
  }
  FeatureStructure child = set_from(next->structure(), path, depth + 1, value);
  if (step.index) {
    out.set(step.slot, replace_element(*current, *step.index, child));
  } else {
    out.set(step.slot, std::move(child));
  }
  return out;
}

FeatureStructure remove_from(const FeatureStructure &fs,
                             const FeaturePath &path, std::size_t depth) {
  const PathStep &step = path[depth];
  FeatureStructure out = fs;
  const SlotValue *current = fs.find(step.slot);
  if (current == nullptr) return out;
  if (depth + 1 == path.size()) {
    if (!step.index) {
      out.erase(step.slot);
    } else if (current->is_multiple() &&
               *step.index < current->elements().size()) {
      SlotValue::Multiple elements = current->elements();
      elements.erase(elements.begin() + static_cast<long>(*step.index));
      if (elements.size() == 1) {
        out.set(step.slot, elements.front());
      } else {
        out.set(step.slot, SlotValue::multiple(std::move(elements)));
      }
    }
    return out;
  }
  const SlotValue *next = step_into(fs, step);
  if (next == nullptr || !next->is_structure()) return out;
  FeatureStructure child = remove_from(next->structure(), path, depth + 1);
  if (step.index) {
    out.set(step.slot, replace_element(*current, *step.index, child));
  } else {
    out.set(step.slot, std::move(child));
  }
  return out;
}

}  // namespace

std::optional<SlotValue> get_path(const FeatureStructure &fs,
                                  const FeaturePath &path) {
  if (path.empty()) return SlotValue(fs);
  const FeatureStructure *node = &fs;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const SlotValue *v = step_into(*node, path[i]);
    if (v == nullptr) return std::nullopt;
    if (i + 1 == path.size()) return *v;
    if (!v->is_structure()) return std::nullopt;
    node = &v->structure();
  }
  return std::nullopt;
}

FeatureStructure set_path(const FeatureStructure &fs, const FeaturePath &path,
                          const SlotValue &value) {
  if (path.empty()) throw PathError("cannot set the empty path");
  return set_from(fs, path, 0, value);
}

FeatureStructure remove_path(const FeatureStructure &fs,
                             const FeaturePath &path) {
  if (path.empty()) return FeatureStructure();
  return remove_from(fs, path, 0);
}

// --- walks ------------------------------------------------------------------

namespace {

void flatten_value(const SlotValue &v, FeaturePath &path,
                   std::set<FlatPair> &out);

void flatten_fs(const FeatureStructure &fs, FeaturePath &path,
                std::set<FlatPair> &out) {
  for (const Slot &s : fs.slots()) {
    path.push_back(PathStep{s.name, {}});
    if (s.value.is_multiple()) {
      const auto &elements = s.value.elements();
      for (std::size_t i = 0; i < elements.size(); ++i) {
        path.back().index = i;
        flatten_value(elements[i], path, out);
      }
    } else {
      flatten_value(s.value, path, out);
    }
    path.pop_back();
  }
}

void flatten_value(const SlotValue &v, FeaturePath &path,
                   std::set<FlatPair> &out) {
  if (v.is_atom()) {
    out.emplace(path, v.atom());
  } else if (v.is_structure()) {
    flatten_fs(v.structure(), path, out);
  }
}

void walk_constituents(
    const FeatureStructure &fs, FeaturePath &path,
    std::vector<std::pair<FeaturePath, FeatureStructure>> &out) {
  out.emplace_back(path, fs);
  for (const Slot &s : fs.slots()) {
    path.push_back(PathStep{s.name, {}});
    if (s.value.is_structure()) {
      walk_constituents(s.value.structure(), path, out);
    } else if (s.value.is_multiple()) {
      const auto &elements = s.value.elements();
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!elements[i].is_structure()) continue;
        path.back().index = i;
        walk_constituents(elements[i].structure(), path, out);
      }
    }
    path.pop_back();
  }
}

bool equivalent_values(const SlotValue &a, const SlotValue &b) {
  if (a.is_atom() && b.is_atom()) return a.atom() == b.atom();
  if (a.is_structure() && b.is_structure()) {
    return equivalent(a.structure(), b.structure());
  }
  if (a.is_multiple() && b.is_multiple()) {
    const auto &x = a.elements();
    const auto &y = b.elements();
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!equivalent_values(x[i], y[i])) return false;
    }
    return true;
  }
  return false;
}

void collect_atoms(const SlotValue &v, std::vector<Atom> &out) {
  if (v.is_atom()) {
    out.push_back(v.atom());
  } else if (v.is_structure()) {
    for (const Slot &s : v.structure().slots()) collect_atoms(s.value, out);
  } else {
    for (const SlotValue &e : v.elements()) collect_atoms(e, out);
  }
}

}  // namespace

std::set<FlatPair> flatten(const FeatureStructure &fs) {
  std::set<FlatPair> out;
  FeaturePath path;
  flatten_fs(fs, path, out);
  return out;
}

std::vector<std::pair<FeaturePath, FeatureStructure>> constituent_paths(
    const FeatureStructure &fs) {
  std::vector<std::pair<FeaturePath, FeatureStructure>> out;
  FeaturePath path;
  walk_constituents(fs, path, out);
  return out;
}

std::vector<FeatureStructure> constituents(const FeatureStructure &fs) {
  std::vector<FeatureStructure> out;
  for (auto &[path, c] : constituent_paths(fs)) out.push_back(std::move(c));
  return out;
}

bool equivalent(const FeatureStructure &a, const FeatureStructure &b) {
  if (a.size() != b.size()) return false;
  for (const Slot &s : a.slots()) {
    const SlotValue *other = b.find(s.name);
    if (other == nullptr || !equivalent_values(s.value, *other)) return false;
  }
  return true;
}

std::vector<Atom> atoms_of(const FeatureStructure &fs) {
  std::vector<Atom> out;
  for (const Slot &s : fs.slots()) collect_atoms(s.value, out);
  return out;
}

}  // namespace repair
