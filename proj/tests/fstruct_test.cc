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

#include <functional>
#include <set>
#include <string>

#include "doctest.h"
#include "fixtures.h"
#include "random_fs.h"
#include "repair/fstruct.h"
#include "repair/sexpr.h"

using namespace repair;

namespace {

FeaturePath p(std::initializer_list<std::string_view> slots) {
  return make_path(slots);
}

std::size_t offset_of_error(const std::string &text) {
  try {
    read_fs(text);
  } catch (const ParseError &e) {
    return e.offset();
  }
  FAIL("no parse error for " << text);
  return 0;
}

// Count of structure-valued entries, walking the value tree directly.
std::size_t nested_structures(const FeatureStructure &fs) {
  std::function<std::size_t(const SlotValue &)> walk =
      [&](const SlotValue &v) -> std::size_t {
    if (v.is_structure()) return 1 + nested_structures(v.structure());
    if (v.is_multiple()) {
      std::size_t n = 0;
      for (const SlotValue &e : v.elements()) n += walk(e);
      return n;
    }
    return 0;
  };
  std::size_t n = 0;
  for (const Slot &s : fs.slots()) n += walk(s.value);
  return n;
}

}  // namespace

TEST_CASE("reading the busy-all-next-week structure") {
  FeatureStructure fs = read_fs(fixtures::kBusyText);
  CHECK(fs.frame() == "*busy");
  const SlotValue *who = fs.find("who");
  REQUIRE(who != nullptr);
  CHECK(who->structure().frame() == "*i");
  const SlotValue *when = fs.find("when");
  REQUIRE(when != nullptr);
  CHECK(when->structure().frame() == "*special-time");
  const SlotValue *spec = when->structure().find("specifier");
  REQUIRE(spec != nullptr);
  REQUIRE(spec->is_multiple());
  REQUIRE(spec->elements().size() == 2);
  CHECK(spec->elements()[0].atom() == Atom::symbol("all-range"));
  CHECK(spec->elements()[1].atom() == Atom::symbol("next"));
}

TEST_CASE("minimal structure") {
  FeatureStructure fs = read_fs("((frame *i))");
  CHECK(fs.size() == 1);
  CHECK(fs.frame() == "*i");
  CHECK(print_fs(fs) == "((frame *i))");
}

TEST_CASE("read errors carry byte offsets") {
  std::string dup = "((a 1) (a 2))";
  CHECK(offset_of_error(dup) == dup.find("a 2"));
  CHECK_THROWS_AS(read_fs("((a 1)"), ParseError);
  CHECK_THROWS_AS(read_fs("((a 1)))"), ParseError);
  std::string empty = "((frame *i) (a))";
  CHECK(offset_of_error(empty) == empty.find("(a)"));
  CHECK_THROWS_AS(read_fs("((frame free))"), ParseError);
  CHECK_THROWS_AS(read_fs("((a (*multiple* x)))"), ParseError);
}

TEST_CASE("symbols are case-insensitive and printed lowercase") {
  FeatureStructure fs = read_fs("((Day-Of-Week Tuesday) (FRAME *Simple-Time))");
  CHECK(print_fs(fs) == "((day-of-week tuesday) (frame *simple-time))");
  CHECK(fs.find("DAY-OF-WEEK") != nullptr);
}

TEST_CASE("printing is canonical") {
  FeatureStructure fs = read_fs(fixtures::kBusyText);
  CHECK(print_fs(fs) == fixtures::kBusyText);
  CHECK(print_fs(fs).find("(*multiple* all-range next)") != std::string::npos);
  FeatureStructure spaced = read_fs("(  (frame   *i) ; comment\n )");
  CHECK(print_fs(spaced) == "((frame *i))");
  CHECK(print_fs(FeatureStructure{}) == "()");
}

TEST_CASE("atoms survive printing") {
  FeatureStructure fs;
  fs.set("s", Atom::string("say \"hi\" \\ (x); y"));
  fs.set("n", Atom::integer(-42));
  fs.set("t", Atom::symbol("+"));
  CHECK(read_fs(print_fs(fs)) == fs);
}

TEST_CASE("path access") {
  FeatureStructure busy = read_fs(fixtures::kBusyText);
  std::optional<SlotValue> spec = get_path(busy, p({"when", "specifier"}));
  REQUIRE(spec.has_value());
  CHECK(spec->is_multiple());
  CHECK_FALSE(get_path(busy, p({"missing"})).has_value());
  CHECK_FALSE(get_path(busy, p({"when", "missing", "deeper"})).has_value());

  FeatureStructure free = read_fs("((frame *free))");
  FeatureStructure filled = set_path(free, p({"who"}), read_fs("((frame *i))"));
  CHECK(print_fs(filled) == "((frame *free) (who ((frame *i))))");
  CHECK(print_fs(free) == "((frame *free))");

  FeatureStructure replaced = set_path(filled, p({"who"}), read_fs("((frame *we))"));
  CHECK(print_fs(replaced) == "((frame *free) (who ((frame *we))))");

  CHECK_THROWS_AS(set_path(busy, p({"frame", "x"}), Atom::integer(1)), PathError);

  FeaturePath indexed = path_from_string("when.specifier[1]");
  REQUIRE(indexed.size() == 2);
  CHECK(indexed[1].index == std::optional<std::size_t>(1));
  CHECK(get_path(busy, indexed)->atom() == Atom::symbol("next"));
  CHECK(path_to_string(indexed) == "when.specifier[1]");
}

TEST_CASE("remove_path collapses a two-element multiple") {
  FeatureStructure busy = read_fs(fixtures::kBusyText);
  FeatureStructure out = remove_path(busy, path_from_string("when.specifier[0]"));
  CHECK(get_path(out, p({"when", "specifier"}))->atom() == Atom::symbol("next"));
  FeatureStructure gone = remove_path(busy, p({"who"}));
  CHECK_FALSE(gone.has("who"));
}

TEST_CASE("flatten") {
  std::set<FlatPair> one = flatten(read_fs("((frame *i))"));
  CHECK(one == std::set<FlatPair>{{p({"frame"}), Atom::symbol("*i")}});
  std::set<FlatPair> done = flatten(read_fs(fixtures::kDoneText));
  CHECK(done.count({p({"when", "day"}), Atom::integer(9)}) == 1);
  CHECK(done.count({p({"sentence-type"}), Atom::symbol("*state")}) == 1);
  CHECK(flatten(FeatureStructure{}).empty());

  std::set<FlatPair> busy = flatten(read_fs(fixtures::kBusyText));
  CHECK(busy.count({path_from_string("when.specifier[1]"), Atom::symbol("next")}) == 1);
}

TEST_CASE("constituents of the four chunks") {
  std::vector<FeatureStructure> chunks = {
      read_fs("((value be))"),
      read_fs("((frame *free) (who ((frame *i))) (good-bad +))"),
      read_fs("((frame *that))"),
      read_fs("((frame *simple-time) (time-of-day afternoon)"
              " (day-of-week tuesday) (day 9))")};
  std::vector<std::string> all;
  for (const FeatureStructure &c : chunks) {
    for (const FeatureStructure &k : constituents(c)) all.push_back(print_fs(k));
  }
  CHECK(all.size() == 5);
  CHECK(all[1] == "((frame *free) (who ((frame *i))) (good-bad +))");
  CHECK(all[2] == "((frame *i))");

  FeatureStructure flat = read_fs("((frame *i) (a 1))");
  CHECK(constituents(flat).size() == 1);

  FeatureStructure deep = read_fs("((frame *a) (x ((frame *b) (y ((frame *c))))))");
  std::vector<FeatureStructure> ks = constituents(deep);
  REQUIRE(ks.size() == 3);
  CHECK(ks[0].frame() == "*a");
  CHECK(ks[1].frame() == "*b");
  CHECK(ks[2].frame() == "*c");
}

TEST_CASE("equivalence ignores slot order only") {
  FeatureStructure a = read_fs("((frame *free) (who ((frame *i))) (when 1))");
  FeatureStructure b = read_fs("((when 1) (who ((frame *i))) (frame *free))");
  CHECK(equivalent(a, b));
  CHECK_FALSE(a == b);
  CHECK_FALSE(equivalent(read_fs("((s (*multiple* a b)))"),
                         read_fs("((s (*multiple* b a)))")));
}

TEST_CASE("property: print/read round trip on 10000 random structures") {
  fixtures::RandomFs gen(20260101);
  for (int i = 0; i < 10000; ++i) {
    FeatureStructure fs = gen.structure(4);
    std::string text = print_fs(fs);
    FeatureStructure back = read_fs(text);
    REQUIRE_MESSAGE(back == fs, text);
    REQUIRE(print_fs(back) == text);
  }
}

TEST_CASE("property: flatten after set_path of an atom") {
  fixtures::RandomFs gen(77);
  for (int i = 0; i < 10000; ++i) {
    FeatureStructure fs = gen.structure(3);
    std::vector<std::pair<FeaturePath, FeatureStructure>> nodes =
        constituent_paths(fs);
    FeaturePath node;
    bool found = false;
    // Only nodes reachable without Multiple indices are addressable by a
    // plain slot path; pick one at random.
    for (int tries = 0; tries < 4 && !found; ++tries) {
      const auto &cand = nodes[gen.pick(0, static_cast<int>(nodes.size()) - 1)];
      found = true;
      for (const PathStep &s : cand.first) found = found && !s.index;
      node = cand.first;
    }
    if (!found) node.clear();
    FeaturePath target = node;
    target.push_back(PathStep{gen.coin(0.5) ? "a" : "fresh", {}});
    Atom a = gen.atom();

    std::set<FlatPair> expected;
    std::optional<SlotValue> old = get_path(fs, target);
    FeatureStructure without = old ? remove_path(fs, target) : fs;
    expected = flatten(without);
    expected.insert({target, a});
    REQUIRE(flatten(set_path(fs, target, a)) == expected);
  }
}

TEST_CASE("property: constituent count matches a direct walk") {
  fixtures::RandomFs gen(4242);
  for (int i = 0; i < 10000; ++i) {
    FeatureStructure fs = gen.structure(4);
    REQUIRE(constituents(fs).size() == 1 + nested_structures(fs));
    REQUIRE(constituent_paths(fs).size() == constituents(fs).size());
  }
}
