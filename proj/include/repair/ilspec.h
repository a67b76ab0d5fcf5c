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

// The interlingua specification: a subsumption hierarchy of structural types
// (`<NAME>`) whose leaves are feature-structure specifications, plus atomic
// value classes (`[NAME]`). File format, one parenthesized form per rule:
//
//   (<TEMPORAL> = <SIMPLE-TIME> <INTERVAL> ...)          ; union
//   (<BUSY> = ((frame *busy) (who <FRAME>) ...))         ; leaf
//   (atomic [DEGREE] very somewhat)                      ; enumerated class
//   (atomic [DAY-NUMBER] *integer*)                      ; any integer
//   (atomic [TOPIC] *any*)                               ; any atom
//   (sentence-types *state *query-if)
//   (root <TOP>)
//
// The loaded spec is immutable and may be shared between threads.

#ifndef REPAIR_ILSPEC_H_
#define REPAIR_ILSPEC_H_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "repair/fstruct.h"

namespace repair {

// "<BUSY>" or "[DEGREE]", always uppercase.
using TypeName = std::string;

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// template_for() on a union that covers more than one leaf.
class AmbiguousTemplate : public SpecError {
 public:
  using SpecError::SpecError;
};

struct UnionRule {
  TypeName name;
  std::vector<TypeName> members;
};

struct LeafRule {
  TypeName name;
  std::string frame;
  std::vector<std::pair<std::string, TypeName>> slots;  // declaration order

  const TypeName *slot_type(std::string_view slot) const;
};

struct AtomicClass {
  TypeName name;
  bool any_atom = false;
  bool any_integer = false;
  std::set<Atom> members;

  bool accepts(const Atom &atom) const;
};

struct OpenSlot {
  FeaturePath path;   // path of the slot itself (node path + slot name)
  std::string frame;  // frame of the node that declares the slot
  std::string slot;
  TypeName allowed;

  FeaturePath node_path() const {
    return FeaturePath(path.begin(), path.end() - 1);
  }
};

class InterlinguaSpec {
 public:
  static InterlinguaSpec load(std::string_view text);

  bool defined(std::string_view name) const;
  bool is_leaf(std::string_view name) const;
  bool is_atomic_class(std::string_view name) const;
  static bool is_structural_name(std::string_view name);

  const LeafRule *leaf(std::string_view name) const;
  const UnionRule *union_rule(std::string_view name) const;
  const AtomicClass *atomic_class(std::string_view name) const;

  const TypeName &root() const { return root_; }
  const std::vector<std::string> &sentence_types() const {
    return sentence_types_;
  }
  bool is_sentence_type(std::string_view symbol) const;

  // All leaves in declaration order.
  const std::vector<TypeName> &leaves() const { return leaf_order_; }
  // Leaves reachable from `name` (itself if it is a leaf), declaration order.
  std::vector<TypeName> leaves_under(std::string_view name) const;

  // Reflexive, transitive reachability through union membership.
  bool subsumes(std::string_view general, std::string_view specific) const;

  std::optional<TypeName> leaf_type_of(const FeatureStructure &fs) const;

  bool conforms(const FeatureStructure &fs, std::string_view type) const;
  bool value_conforms(const SlotValue &value, std::string_view type) const;

  // Unfilled declared slots of every typed node, in pre-order.
  std::vector<OpenSlot> open_slots(const FeatureStructure &fs) const;

  FeatureStructure template_for(std::string_view type) const;

 private:
  void require_defined(std::string_view name) const;
  void validate();

  std::map<TypeName, UnionRule, std::less<>> unions_;
  std::map<TypeName, LeafRule, std::less<>> leaves_;
  std::map<TypeName, AtomicClass, std::less<>> atomic_classes_;
  std::vector<TypeName> leaf_order_;
  std::vector<TypeName> declaration_order_;
  std::map<std::string, TypeName, std::less<>> frame_owner_;
  std::map<TypeName, std::set<TypeName>, std::less<>> descendants_;
  std::vector<std::string> sentence_types_;
  TypeName root_;
};

InterlinguaSpec load_spec(std::string_view text);
InterlinguaSpec load_spec_file(const std::string &path);

}  // namespace repair

#endif  // REPAIR_ILSPEC_H_
