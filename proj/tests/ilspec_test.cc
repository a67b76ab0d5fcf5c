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

#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "fixtures.h"
#include "repair/ilspec.h"

using namespace repair;

namespace {

const InterlinguaSpec &S() { return fixtures::spec(); }

std::string spec_error(const std::string &text) {
  try {
    InterlinguaSpec::load(text);
  } catch (const SpecError &e) {
    return e.what();
  }
  return "";
}

// Every type reachable from `name` by walking union members.
void closure(const std::string &name, std::set<std::string> &out) {
  if (!out.insert(name).second) return;
  if (const UnionRule *u = S().union_rule(name)) {
    for (const TypeName &m : u->members) closure(m, out);
  }
}

// A structure built by expanding the interlingua downward from `type`.
class Expander {
 public:
  explicit Expander(unsigned seed) : rng_(seed) {}

  FeatureStructure expand(const TypeName &type, int depth) {
    std::vector<TypeName> leaves = S().leaves_under(type);
    const LeafRule *rule = S().leaf(leaves[pick(leaves.size())]);
    FeatureStructure fs;
    fs.set("frame", Atom::symbol(rule->frame));
    for (const auto &[slot, slot_type] : rule->slots) {
      if (!coin()) continue;
      if (InterlinguaSpec::is_structural_name(slot_type)) {
        if (depth > 0) fs.set(slot, expand(slot_type, depth - 1));
      } else {
        fs.set(slot, atom(slot_type));
      }
    }
    return fs;
  }

 private:
  Atom atom(const TypeName &cls_name) {
    const AtomicClass *cls = S().atomic_class(cls_name);
    if (cls->any_integer) return Atom::integer(static_cast<long long>(pick(40)));
    if (cls->any_atom) return Atom::symbol("anything");
    auto it = cls->members.begin();
    std::advance(it, pick(cls->members.size()));
    return *it;
  }
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

  std::mt19937 rng_;
};

}  // namespace

TEST_CASE("temporal union rule") {
  const UnionRule *u = S().union_rule("<TEMPORAL>");
  REQUIRE(u != nullptr);
  CHECK(u->members == std::vector<TypeName>{"<SIMPLE-TIME>", "<INTERVAL>",
                                            "<SPECIAL-TIME>", "<RELATIVE-TIME>",
                                            "<EVENT-TIME>", "<TIME-LIST>"});
}

TEST_CASE("busy leaf rule") {
  const LeafRule *busy = S().leaf("<BUSY>");
  REQUIRE(busy != nullptr);
  CHECK(busy->frame == "*busy");
  std::vector<std::pair<std::string, TypeName>> expected{
      {"topic", "<FRAME>"},     {"who", "<FRAME>"},
      {"why", "<FRAME>"},       {"when", "<TEMPORAL>"},
      {"how-long", "<LENGTH>"}, {"degree", "[DEGREE]"}};
  CHECK(busy->slots == expected);
}

TEST_CASE("load errors name the offending rule") {
  std::string base = "(root <TOP>) (sentence-types *state) ";
  CHECK(spec_error(base + "(<TOP> = <A>) (<A> = ((frame *a) (x <NOPE>)))")
            .find("<NOPE>") != std::string::npos);
  CHECK(spec_error(base +
                   "(<TOP> = <A>) (<A> = <B>) (<B> = <A> <C>) (<C> = ((frame *c)))")
            .find("<A>") != std::string::npos);
  CHECK(spec_error(base +
                   "(<TOP> = <A> <B>) (<A> = ((frame *x))) (<B> = ((frame *x)))")
            .find("*x") != std::string::npos);
  CHECK_FALSE(spec_error("(root <TOP>)").empty());
  CHECK(spec_error(base + "(<TOP> = <A>) (<A> = ((frame *a)))").empty());
}

TEST_CASE("subsumption") {
  CHECK(S().subsumes("<TEMPORAL>", "<SIMPLE-TIME>"));
  CHECK(S().subsumes("<TEMPORAL>", "<TEMPORAL>"));
  CHECK_FALSE(S().subsumes("<SIMPLE-TIME>", "<TEMPORAL>"));
  CHECK(S().subsumes("<FRAME>", "<I>"));
  CHECK_FALSE(S().subsumes("<PERSON>", "<MEETING>"));
  CHECK_THROWS_AS(S().subsumes("<NOPE>", "<I>"), SpecError);
}

TEST_CASE("property: subsumption is the reachability closure and a partial order") {
  std::vector<std::string> names;
  for (const TypeName &leaf : S().leaves()) names.push_back(leaf);
  for (const char *u : {"<TOP>", "<FRAME>", "<PERSON>", "<EVENT>", "<TEMPORAL>",
                        "<LENGTH>", "<REFERENCE>", "<PLACE>"}) {
    names.push_back(u);
  }
  for (const std::string &a : names) {
    std::set<std::string> reach;
    closure(a, reach);
    for (const std::string &b : names) {
      CHECK(S().subsumes(a, b) == (reach.count(b) == 1));
      if (a != b && S().subsumes(a, b)) CHECK_FALSE(S().subsumes(b, a));
    }
  }
}

TEST_CASE("leaf type of a structure") {
  CHECK(S().leaf_type_of(read_fs(fixtures::kBusyText)) == "<BUSY>");
  CHECK_FALSE(S().leaf_type_of(read_fs("((value be))")).has_value());
  CHECK_FALSE(S().leaf_type_of(FeatureStructure{}).has_value());
  CHECK_FALSE(S().leaf_type_of(read_fs("((frame *unknown))")).has_value());
}

TEST_CASE("conformance") {
  FeatureStructure busy = read_fs(fixtures::kBusyText);
  FeatureStructure content = busy;
  content.erase("sentence-type");
  content.erase("speech-act");
  CHECK(S().conforms(content, "<BUSY>"));
  CHECK(S().conforms(busy, "<BUSY>"));
  CHECK(S().conforms(busy, "<TOP>"));
  CHECK_FALSE(S().conforms(read_fs("((frame *busy) (bogus 1))"), "<BUSY>"));
  CHECK_FALSE(S().conforms(read_fs("((sentence-type *nope) (frame *busy))"), "<BUSY>"));
  CHECK_FALSE(S().conforms(read_fs("((frame *busy) (degree extremely))"), "<BUSY>"));
  CHECK(S().conforms(read_fs("((frame *busy) (degree very))"), "<BUSY>"));
  CHECK_FALSE(S().conforms(read_fs("((frame *busy) (who ((frame *monday))))"), "<BUSY>"));
  CHECK(S().conforms(read_fs(fixtures::kDoneText), "<FREE>"));
  CHECK_THROWS_AS(S().conforms(busy, "<NOPE>"), SpecError);

  FeatureStructure time = read_fs(
      "((frame *simple-time) (day-of-week tuesday) (day 9))");
  for (const char *t : {"<TOP>", "<TEMPORAL>", "<FRAME>", "<SIMPLE-TIME>", "<PLACE>"}) {
    std::set<std::string> reach;
    closure(t, reach);
    CHECK(S().conforms(time, t) == (reach.count("<SIMPLE-TIME>") == 1));
  }
}

TEST_CASE("open slots") {
  std::vector<OpenSlot> open = S().open_slots(read_fs("((frame *free))"));
  std::vector<std::string> names;
  for (const OpenSlot &o : open) names.push_back(o.slot);
  CHECK(names == std::vector<std::string>{"who", "when", "why", "how-long", "degree"});
  CHECK(open[1].allowed == "<TEMPORAL>");
  CHECK(open[1].frame == "*free");

  for (const OpenSlot &o : S().open_slots(read_fs(fixtures::kDoneText))) {
    if (o.path.size() == 1) {
      CHECK(o.slot != "who");
      CHECK(o.slot != "when");
    }
  }
  CHECK(S().open_slots(read_fs("((frame *i))")).empty());
  CHECK(S().open_slots(read_fs("((frame *duration) (amount 2) (unit hour))")).empty());
}

TEST_CASE("templates") {
  CHECK(print_fs(S().template_for("<FREE>")) == "((frame *free))");
  CHECK(print_fs(S().template_for("<BUSY>")) == "((frame *busy))");
  CHECK(print_fs(S().template_for("<LENGTH>")) == "((frame *duration))");
  CHECK_THROWS_AS(S().template_for("<TEMPORAL>"), AmbiguousTemplate);
}

TEST_CASE("property: expansions conform; an undeclared slot breaks conformance") {
  Expander gen(99);
  for (int i = 0; i < 2000; ++i) {
    FeatureStructure fs = gen.expand(S().root(), 3);
    REQUIRE(S().conforms(fs, S().root()));
    TypeName leaf = *S().leaf_type_of(fs);
    for (const char *u : {"<TOP>", "<FRAME>", "<TEMPORAL>"}) {
      if (S().subsumes(u, leaf)) REQUIRE(S().conforms(fs, u));
    }

    // Rename one content slot to something no rule declares.
    std::vector<std::string> content;
    for (const Slot &s : fs.slots()) {
      if (s.name != "frame") content.push_back(s.name);
    }
    if (!content.empty()) {
      FeatureStructure broken;
      std::string victim = content[static_cast<std::size_t>(i) % content.size()];
      for (const Slot &s : fs.slots()) {
        broken.set(s.name == victim ? "zz-undeclared" : s.name, s.value);
      }
      REQUIRE_FALSE(S().conforms(broken, S().root()));
    }
  }
}

TEST_CASE("property: open slots and filled slots partition the declared slots") {
  Expander gen(5);
  for (int i = 0; i < 2000; ++i) {
    FeatureStructure fs = gen.expand(S().root(), 3);
    std::vector<OpenSlot> open = S().open_slots(fs);
    for (const auto &[path, node] : constituent_paths(fs)) {
      const LeafRule *rule = S().leaf(*S().leaf_type_of(node));
      std::set<std::string> declared;
      for (const auto &[slot, type] : rule->slots) declared.insert(slot);
      std::set<std::string> seen;
      for (const OpenSlot &o : open) {
        if (o.node_path() == path) {
          REQUIRE_FALSE(node.has(o.slot));
          seen.insert(o.slot);
        }
      }
      for (const Slot &s : node.slots()) {
        if (s.name != "frame") seen.insert(s.name);
      }
      REQUIRE(seen == declared);
    }
  }
}
