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

// Typed feature structures: the frame/slot meaning representation.
//
// Textual format:
//
//   fs    := '(' slot* ')'
//   slot  := '(' name value ')'
//   value := atom | fs | '(' '*multiple*' value value+ ')'
//
// Symbols are case-insensitive and stored lowercase. Nested structures are
// shared immutable nodes, so copying a FeatureStructure is cheap and the
// values can be handed between threads freely.

#ifndef REPAIR_FSTRUCT_H_
#define REPAIR_FSTRUCT_H_

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace repair {

class Atom {
 public:
  enum class Kind { kSymbol, kInteger, kString };

  static Atom symbol(std::string_view name);
  static Atom integer(long long value);
  static Atom string(std::string value);

  Kind kind() const { return kind_; }
  bool is_symbol() const { return kind_ == Kind::kSymbol; }
  bool is_integer() const { return kind_ == Kind::kInteger; }

  // Symbol name or string contents; empty for integers.
  const std::string &text() const { return text_; }
  long long integer_value() const { return integer_; }

  // Printed form: symbols bare, strings quoted, integers in decimal.
  std::string to_string() const;

  friend bool operator==(const Atom &, const Atom &) = default;
  friend std::strong_ordering operator<=>(const Atom &, const Atom &) = default;

 private:
  Atom(Kind kind, std::string text, long long integer)
      : kind_(kind), text_(std::move(text)), integer_(integer) {}

  Kind kind_;
  std::string text_;
  long long integer_;
};

class FeatureStructure;

class SlotValue {
 public:
  using Multiple = std::vector<SlotValue>;

  SlotValue(Atom atom);                    // NOLINT: implicit by design of use
  SlotValue(FeatureStructure structure);   // NOLINT
  // Requires at least two elements, none of which is itself a Multiple.
  static SlotValue multiple(Multiple elements);

  bool is_atom() const { return v_.index() == 0; }
  bool is_structure() const { return v_.index() == 1; }
  bool is_multiple() const { return v_.index() == 2; }

  const Atom &atom() const { return std::get<0>(v_); }
  const FeatureStructure &structure() const { return *std::get<1>(v_); }
  const Multiple &elements() const { return std::get<2>(v_); }

  friend bool operator==(const SlotValue &a, const SlotValue &b);

 private:
  SlotValue() = default;
  std::variant<Atom, std::shared_ptr<const FeatureStructure>, Multiple> v_ =
      Atom::integer(0);
};

struct Slot {
  std::string name;
  SlotValue value;
};

class FeatureStructure {
 public:
  FeatureStructure() = default;

  const std::vector<Slot> &slots() const { return slots_; }
  bool empty() const { return slots_.empty(); }
  std::size_t size() const { return slots_.size(); }

  const SlotValue *find(std::string_view name) const;
  bool has(std::string_view name) const { return find(name) != nullptr; }

  // Replaces the slot's value in place, or appends a new slot.
  void set(std::string_view name, SlotValue value);
  // Returns true if a slot was removed.
  bool erase(std::string_view name);

  // The `frame` symbol, if present.
  std::optional<std::string> frame() const;

  // Slot-order-sensitive equality.
  friend bool operator==(const FeatureStructure &a, const FeatureStructure &b);

 private:
  std::vector<Slot> slots_;
};

// Names of the slots that carry bookkeeping rather than content.
inline constexpr std::string_view kFrameSlot = "frame";
inline constexpr std::string_view kSentenceTypeSlot = "sentence-type";
inline constexpr std::string_view kSpeechActSlot = "speech-act";
bool is_distinguished_slot(std::string_view name);

struct PathStep {
  std::string slot;
  std::optional<std::size_t> index;  // set iff addressing into a Multiple

  friend bool operator==(const PathStep &, const PathStep &) = default;
  friend std::strong_ordering operator<=>(const PathStep &a,
                                          const PathStep &b) {
    if (auto c = a.slot <=> b.slot; c != 0) return c;
    return a.index <=> b.index;
  }
};

using FeaturePath = std::vector<PathStep>;

FeaturePath make_path(std::initializer_list<std::string_view> slots);
// "when.specifier[1]" style rendering; the empty path renders as ".".
std::string path_to_string(const FeaturePath &path);
FeaturePath path_from_string(std::string_view text);

class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Sexpr;

FeatureStructure read_fs(std::string_view text);
// Converts an already-read form; errors carry the form's byte offsets.
FeatureStructure fs_from_sexpr(const Sexpr &form);
std::string print_fs(const FeatureStructure &fs);
std::string print_value(const SlotValue &value);

std::optional<SlotValue> get_path(const FeatureStructure &fs,
                                  const FeaturePath &path);
FeatureStructure set_path(const FeatureStructure &fs, const FeaturePath &path,
                          const SlotValue &value);
// Removes the terminal slot (or Multiple element) named by `path`. A Multiple
// left with a single element collapses to that element.
FeatureStructure remove_path(const FeatureStructure &fs,
                             const FeaturePath &path);

using FlatPair = std::pair<FeaturePath, Atom>;
std::set<FlatPair> flatten(const FeatureStructure &fs);

// fs itself first, then every nested structure in pre-order.
std::vector<FeatureStructure> constituents(const FeatureStructure &fs);
// Same walk, with each constituent's path from fs (root has the empty path).
std::vector<std::pair<FeaturePath, FeatureStructure>> constituent_paths(
    const FeatureStructure &fs);

// Slot-order-insensitive equality; Multiple order still matters.
bool equivalent(const FeatureStructure &a, const FeatureStructure &b);

// Every atom in fs, in pre-order. Used for material bookkeeping.
std::vector<Atom> atoms_of(const FeatureStructure &fs);

}  // namespace repair

#endif  // REPAIR_FSTRUCT_H_
