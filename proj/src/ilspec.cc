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

#include "repair/ilspec.h"

#include <fstream>
#include <functional>
#include <sstream>

#include "repair/sexpr.h"

namespace repair {

const TypeName *LeafRule::slot_type(std::string_view slot) const {
  for (const auto &[name, type] : slots) {
    if (name == slot) return &type;
  }
  return nullptr;
}

bool AtomicClass::accepts(const Atom &atom) const {
  if (any_atom) return true;
  if (any_integer && atom.is_integer()) return true;
  return members.count(atom) > 0;
}

bool InterlinguaSpec::is_structural_name(std::string_view name) {
  return name.size() > 2 && name.front() == '<' && name.back() == '>';
}

namespace {

bool is_class_name(std::string_view name) {
  return name.size() > 2 && name.front() == '[' && name.back() == ']';
}

std::string describe(const Sexpr &form) {
  if (!form.items.empty() && form.items[0].is_atom()) {
    return "rule " + form.items[0].text + " (byte " +
           std::to_string(form.offset) + ")";
  }
  return "form at byte " + std::to_string(form.offset);
}

Atom atom_from(const Sexpr &e) {
  if (e.kind == Sexpr::Kind::kInteger) return Atom::integer(e.integer);
  if (e.kind == Sexpr::Kind::kString) return Atom::string(e.text);
  return Atom::symbol(e.text);
}

}  // namespace

InterlinguaSpec InterlinguaSpec::load(std::string_view text) {
  InterlinguaSpec spec;
  std::vector<Sexpr> forms;
  try {
    forms = read_all_sexprs(text);
  } catch (const ParseError &e) {
    throw SpecError(std::string("spec syntax: ") + e.what());
  }

  auto declare = [&spec](const TypeName &name, const Sexpr &form) {
    if (spec.defined(name)) {
      throw SpecError(describe(form) + ": duplicate definition of " + name);
    }
    spec.declaration_order_.push_back(name);
  };

  for (const Sexpr &form : forms) {
    if (!form.is_list() || form.items.empty() || !form.items[0].is_symbol()) {
      throw SpecError(describe(form) + ": expected a parenthesized rule");
    }
    const Sexpr &head = form.items[0];
    if (head.is_symbol("root")) {
      if (form.items.size() != 2 || !form.items[1].is_symbol()) {
        throw SpecError(describe(form) + ": (root <NAME>) expected");
      }
      spec.root_ = to_upper(form.items[1].text);
    } else if (head.is_symbol("sentence-types")) {
      for (std::size_t i = 1; i < form.items.size(); ++i) {
        if (!form.items[i].is_symbol()) {
          throw SpecError(describe(form) + ": sentence types are symbols");
        }
        spec.sentence_types_.push_back(to_lower(form.items[i].text));
      }
    } else if (head.is_symbol("atomic")) {
      if (form.items.size() < 3 || !form.items[1].is_symbol() ||
          !is_class_name(form.items[1].text)) {
        throw SpecError(describe(form) + ": (atomic [NAME] value ...) expected");
      }
      AtomicClass cls;
      cls.name = to_upper(form.items[1].text);
      for (std::size_t i = 2; i < form.items.size(); ++i) {
        const Sexpr &m = form.items[i];
        if (m.is_symbol("*any*")) {
          cls.any_atom = true;
        } else if (m.is_symbol("*integer*")) {
          cls.any_integer = true;
        } else if (m.is_atom()) {
          cls.members.insert(atom_from(m));
        } else {
          throw SpecError(describe(form) + ": atomic class members are atoms");
        }
      }
      declare(cls.name, form);
      spec.atomic_classes_.emplace(cls.name, std::move(cls));
    } else if (is_structural_name(head.text)) {
      TypeName name = to_upper(head.text);
      if (form.items.size() < 3 || !form.items[1].is_symbol("=")) {
        throw SpecError(describe(form) + ": expected (" + name + " = ...)");
      }
      if (form.items.size() == 3 && form.items[2].is_list()) {
        LeafRule leaf;
        leaf.name = name;
        for (const Sexpr &slot : form.items[2].items) {
          if (!slot.is_list() || slot.items.size() != 2 ||
              !slot.items[0].is_symbol() || !slot.items[1].is_symbol()) {
            throw SpecError(describe(form) + ": malformed slot specification");
          }
          std::string slot_name = to_lower(slot.items[0].text);
          if (slot_name == kFrameSlot) {
            if (!leaf.frame.empty()) {
              throw SpecError(describe(form) + ": two frame slots");
            }
            leaf.frame = to_lower(slot.items[1].text);
            if (leaf.frame.empty() || leaf.frame[0] != '*') {
              throw SpecError(describe(form) + ": frame must start with '*'");
            }
            continue;
          }
          if (leaf.slot_type(slot_name) != nullptr) {
            throw SpecError(describe(form) + ": duplicate slot " + slot_name);
          }
          leaf.slots.emplace_back(slot_name, to_upper(slot.items[1].text));
        }
        if (leaf.frame.empty()) {
          throw SpecError(describe(form) + ": leaf rule without (frame *f)");
        }
        declare(name, form);
        spec.leaf_order_.push_back(name);
        spec.leaves_.emplace(name, std::move(leaf));
      } else {
        UnionRule rule;
        rule.name = name;
        for (std::size_t i = 2; i < form.items.size(); ++i) {
          const Sexpr &m = form.items[i];
          if (!m.is_symbol() || !is_structural_name(m.text)) {
            throw SpecError(describe(form) + ": union members are <NAME>s");
          }
          rule.members.push_back(to_upper(m.text));
        }
        declare(name, form);
        spec.unions_.emplace(name, std::move(rule));
      }
    } else {
      throw SpecError(describe(form) + ": unknown directive");
    }
  }
  spec.validate();
  return spec;
}

void InterlinguaSpec::validate() {
  for (const auto &[name, rule] : unions_) {
    for (const TypeName &m : rule.members) {
      if (!defined(m)) {
        throw SpecError("rule " + name + ": undefined reference " + m);
      }
    }
  }
  for (const auto &[name, leaf] : leaves_) {
    for (const auto &[slot, type] : leaf.slots) {
      if (!defined(type)) {
        throw SpecError("rule " + name + ": slot " + slot +
                        " has undefined type " + type);
      }
    }
    auto [it, inserted] = frame_owner_.emplace(leaf.frame, name);
    if (!inserted) {
      throw SpecError("rule " + name + ": frame " + leaf.frame +
                      " already owned by " + it->second);
    }
  }
  if (root_.empty()) throw SpecError("spec has no (root <NAME>) directive");
  if (!defined(root_) || is_atomic_class(root_)) {
    throw SpecError("root " + root_ + " is not a defined structural type");
  }

  // Cycle check and descendant closure over union membership.
  enum class Mark { kNone, kActive, kDone };
  std::map<TypeName, Mark, std::less<>> marks;
  std::function<void(const TypeName &)> visit = [&](const TypeName &name) {
    Mark &m = marks[name];
    if (m == Mark::kDone) return;
    if (m == Mark::kActive) {
      throw SpecError("rule " + name + ": cyclic union membership");
    }
    m = Mark::kActive;
    std::set<TypeName> closure{name};
    if (auto it = unions_.find(name); it != unions_.end()) {
      for (const TypeName &member : it->second.members) {
        visit(member);
        const auto &sub = descendants_[member];
        closure.insert(sub.begin(), sub.end());
      }
    }
    descendants_[name] = std::move(closure);
    marks[name] = Mark::kDone;
  };
  for (const TypeName &name : declaration_order_) visit(name);
}

bool InterlinguaSpec::defined(std::string_view name) const {
  return unions_.count(name) > 0 || leaves_.count(name) > 0 ||
         atomic_classes_.count(name) > 0;
}

bool InterlinguaSpec::is_leaf(std::string_view name) const {
  return leaves_.count(name) > 0;
}

bool InterlinguaSpec::is_atomic_class(std::string_view name) const {
  return atomic_classes_.count(name) > 0;
}

const LeafRule *InterlinguaSpec::leaf(std::string_view name) const {
  auto it = leaves_.find(name);
  return it == leaves_.end() ? nullptr : &it->second;
}

const UnionRule *InterlinguaSpec::union_rule(std::string_view name) const {
  auto it = unions_.find(name);
  return it == unions_.end() ? nullptr : &it->second;
}

const AtomicClass *InterlinguaSpec::atomic_class(std::string_view name) const {
  auto it = atomic_classes_.find(name);
  return it == atomic_classes_.end() ? nullptr : &it->second;
}

bool InterlinguaSpec::is_sentence_type(std::string_view symbol) const {
  for (const std::string &s : sentence_types_) {
    if (s == symbol) return true;
  }
  return false;
}

void InterlinguaSpec::require_defined(std::string_view name) const {
  if (!defined(name)) {
    throw SpecError("undefined type " + std::string(name));
  }
}

std::vector<TypeName> InterlinguaSpec::leaves_under(
    std::string_view name) const {
  require_defined(name);
  const auto &closure = descendants_.find(name)->second;
  std::vector<TypeName> out;
  for (const TypeName &leaf : leaf_order_) {
    if (closure.count(leaf)) out.push_back(leaf);
  }
  return out;
}

bool InterlinguaSpec::subsumes(std::string_view general,
                               std::string_view specific) const {
  require_defined(general);
  require_defined(specific);
  const auto &closure = descendants_.find(general)->second;
  return closure.count(std::string(specific)) > 0;
}

std::optional<TypeName> InterlinguaSpec::leaf_type_of(
    const FeatureStructure &fs) const {
  std::optional<std::string> frame = fs.frame();
  if (!frame) return std::nullopt;
  auto it = frame_owner_.find(*frame);
  if (it == frame_owner_.end()) return std::nullopt;
  return it->second;
}

bool InterlinguaSpec::value_conforms(const SlotValue &value,
                                     std::string_view type) const {
  require_defined(type);
  if (value.is_multiple()) {
    for (const SlotValue &e : value.elements()) {
      if (!value_conforms(e, type)) return false;
    }
    return true;
  }
  if (value.is_atom()) {
    const AtomicClass *cls = atomic_class(type);
    return cls != nullptr && cls->accepts(value.atom());
  }
  if (is_atomic_class(type)) return false;
  return conforms(value.structure(), type);
}

bool InterlinguaSpec::conforms(const FeatureStructure &fs,
                               std::string_view type) const {
  require_defined(type);
  if (is_atomic_class(type)) return false;
  std::optional<TypeName> leaf_name = leaf_type_of(fs);
  if (!leaf_name || !subsumes(type, *leaf_name)) return false;
  const LeafRule &rule = leaves_.find(*leaf_name)->second;
  for (const Slot &s : fs.slots()) {
    if (s.name == kFrameSlot || s.name == kSpeechActSlot) continue;
    if (s.name == kSentenceTypeSlot) {
      if (!s.value.is_atom() || !s.value.atom().is_symbol() ||
          !is_sentence_type(s.value.atom().text())) {
        return false;
      }
      continue;
    }
    const TypeName *slot_type = rule.slot_type(s.name);
    if (slot_type == nullptr || !value_conforms(s.value, *slot_type)) {
      return false;
    }
  }
  return true;
}

std::vector<OpenSlot> InterlinguaSpec::open_slots(
    const FeatureStructure &fs) const {
  std::vector<OpenSlot> out;
  for (const auto &[path, node] : constituent_paths(fs)) {
    std::optional<TypeName> leaf_name = leaf_type_of(node);
    if (!leaf_name) continue;
    const LeafRule &rule = leaves_.find(*leaf_name)->second;
    for (const auto &[slot, type] : rule.slots) {
      if (node.has(slot)) continue;
      OpenSlot open;
      open.path = path;
      open.path.push_back(PathStep{slot, {}});
      open.frame = rule.frame;
      open.slot = slot;
      open.allowed = type;
      out.push_back(std::move(open));
    }
  }
  return out;
}

FeatureStructure InterlinguaSpec::template_for(std::string_view type) const {
  require_defined(type);
  if (is_atomic_class(type)) {
    throw SpecError("no template for atomic class " + std::string(type));
  }
  std::vector<TypeName> leaves = leaves_under(type);
  if (leaves.empty()) {
    throw SpecError("no leaf under " + std::string(type));
  }
  if (leaves.size() > 1) {
    throw AmbiguousTemplate(std::string(type) + " covers " +
                            std::to_string(leaves.size()) +
                            " leaves; choose one");
  }
  FeatureStructure fs;
  fs.set(kFrameSlot, Atom::symbol(leaves_.find(leaves.front())->second.frame));
  return fs;
}

InterlinguaSpec load_spec(std::string_view text) {
  return InterlinguaSpec::load(text);
}

InterlinguaSpec load_spec_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_spec(buffer.str());
}

}  // namespace repair
