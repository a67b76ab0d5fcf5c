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

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.h"
#include "repair/engine.h"
#include "repair/hypgen.h"
#include "repair/synth.h"

using namespace repair;

namespace {

const InterlinguaSpec &S() { return fixtures::spec(); }

// A clause-embedding spec where two chunks can be combined into a clause
// that fills an open slot.
const char *kToySpec = R"(
(root <TOP>)
(sentence-types *state *query-if)
(<TOP> = <SAY>)
(<SAY> = ((frame *say) (what <CLAUSE>)))
(<CLAUSE> = <FREE> <BUSY>)
(<FREE> = ((frame *free) (who <PERSON>) (when <TIME>)))
(<BUSY> = ((frame *busy) (who <PERSON>) (when <TIME>)))
(<PERSON> = <I>)
(<I> = ((frame *i)))
(<TIME> = ((frame *simple-time) (day [DAY])))
(atomic [DAY] *integer*)
)";

ParserOutput record(const char *partial,
                    std::vector<SkippedSegment> skipped = {}) {
  ParserOutput po;
  po.utterance = {"w"};
  if (partial != nullptr) po.partial = read_fs(partial);
  po.skipped = std::move(skipped);
  return po;
}

std::vector<TypeName> frames(const std::vector<Hypothesis> &hs) {
  std::vector<TypeName> out;
  for (const Hypothesis &h : hs) out.push_back(std::get<TopLevelFrame>(h).leaf);
  return out;
}

// The sample session after the top-level frame and sentence type passed.
DynamicRepairMemory sample_after_frame() {
  Session s(fixtures::sample(), S(), fixtures::trained(), nullptr,
            fixtures::glosses(), RepairConfig{});
  REQUIRE(std::holds_alternative<TopLevelFrame>(*s.pending()));
  s.answer(true);
  REQUIRE(std::holds_alternative<SentenceTypeGuess>(*s.pending()));
  s.answer(true);
  return s.memory();
}

bool valid_insert(const InsertChunk &h, const DynamicRepairMemory &drm) {
  bool open = false;
  for (const OpenSlot &slot : insertable_slots(S(), drm.current_ilt)) {
    if (slot.path == h.target) {
      open = S().subsumes(slot.allowed, h.as_type);
    }
  }
  const Chunk *c = drm.chunk(h.chunk_id);
  if (!open || c == nullptr || c->consumed) return false;
  if (h.coerced) return c->unknown() && h.constituent.empty();
  for (const auto &[path, fs] : available_constituents(*c)) {
    if (path == h.constituent) return S().leaf_type_of(fs) == h.as_type;
  }
  return false;
}

}  // namespace

TEST_CASE("policies") {
  std::vector<Policy> all = all_policies();
  REQUIRE(all.size() == 9);
  std::set<std::string> names;
  for (const Policy &p : all) {
    names.insert(p.name());
    CHECK(Policy::parse(p.name()) == p);
  }
  CHECK(names.size() == 9);
  CHECK(Policy::parse("tbt").strategy.q2 == Approach::kBottomUp);
  CHECK_THROWS_AS(Policy::parse("TT"), std::invalid_argument);
  CHECK_THROWS_AS(Policy::parse("TXT"), std::invalid_argument);
}

TEST_CASE("top-level frame guesses") {
  RepairConfig config;
  SUBCASE("the sample's symbols point at being free") {
    DynamicRepairMemory drm =
        initialize(fixtures::sample(), S(), fixtures::trained());
    std::vector<Hypothesis> hs =
        gen_top_level(drm, S(), fixtures::trained(), config, true);
    REQUIRE_FALSE(hs.empty());
    CHECK(std::get<TopLevelFrame>(hs.front()).leaf == "<FREE>");
    CHECK(static_cast<int>(hs.size()) <= config.top_frame_candidates + 1);
  }
  SUBCASE("no evidence ranks by prior counts") {
    DynamicRepairMemory drm = initialize(record(nullptr), S(), fixtures::trained());
    drm.all_symbols.clear();
    const MINetwork &n3 = fixtures::trained().symbols_to_type;
    std::vector<TypeName> expected = S().leaves_under(S().root());
    std::stable_sort(expected.begin(), expected.end(),
                     [&](const TypeName &a, const TypeName &b) {
                       if (n3.out_count(a) != n3.out_count(b)) {
                         return n3.out_count(a) > n3.out_count(b);
                       }
                       return a < b;
                     });
    expected.resize(static_cast<std::size_t>(config.top_frame_candidates));
    CHECK(frames(gen_top_level(drm, S(), fixtures::trained(), config, false)) ==
          expected);
  }
  SUBCASE("a dominant symbol wins in a toy net") {
    Networks nets = make_networks(S());
    for (int i = 0; i < 5; ++i) nets.symbols_to_type.train({"busy-sig"}, "<BUSY>");
    nets.symbols_to_type.train({"other"}, "<FREE>");
    nets.symbols_to_type.train({"other"}, "<FREE>");
    nets.symbols_to_type.train({"other"}, "<MEET>");
    DynamicRepairMemory drm = initialize(
        record("((frame *meet))", {{read_fs("((frame *i))"), {"busy-sig"}, {"x"}}}),
        S(), nets);
    config.top_frame_candidates = 2;
    std::vector<TypeName> got = frames(gen_top_level(drm, S(), nets, config, true));
    // Capped at two guesses, with the parser's own frame kept last.
    CHECK(got == std::vector<TypeName>{"<BUSY>", "<ACCEPT>", "<MEET>"});
  }
}

TEST_CASE("sentence type guesses") {
  DynamicRepairMemory drm = initialize(record(nullptr), S(), fixtures::trained());
  Networks fresh = make_networks(S());
  std::vector<std::string> got;
  for (const Hypothesis &h : gen_sentence_type(drm, S(), fresh)) {
    got.push_back(std::get<SentenceTypeGuess>(h).sentence_type);
  }
  std::vector<std::string> by_name = S().sentence_types();
  std::sort(by_name.begin(), by_name.end());
  CHECK(got == by_name);

  Networks toy = make_networks(S());
  toy.symbols_to_sentence_type.train({"question-sig", "x"}, "*query-if");
  toy.symbols_to_sentence_type.train({"x"}, "*state");
  toy.symbols_to_sentence_type.train({"x"}, "*state");
  drm.all_symbols = {"question-sig"};
  CHECK(std::get<SentenceTypeGuess>(gen_sentence_type(drm, S(), toy).front())
            .sentence_type == "*query-if");

  DynamicRepairMemory sample =
      initialize(fixtures::sample(), S(), fixtures::trained());
  CHECK(std::get<SentenceTypeGuess>(
            gen_sentence_type(sample, S(), fixtures::trained()).front())
            .sentence_type == "*state");
}

TEST_CASE("combining chunks") {
  InterlinguaSpec toy = InterlinguaSpec::load(kToySpec);
  Networks nets = make_networks(toy);
  nets.symbols_to_type.train({"i-phrase", "simple-time-phrase"}, "<FREE>");
  nets.symbols_to_type.train({"i-phrase", "simple-time-phrase"}, "<FREE>");
  nets.symbols_to_type.train({"i-phrase", "simple-time-phrase"}, "<BUSY>");
  ParserOutput po = record(
      "((frame *say))",
      {{read_fs("((frame *i))"), {"i-phrase"}, {"me"}},
       {read_fs("((frame *simple-time) (day 9))"), {"simple-time-phrase"}, {"ninth"}}});
  DynamicRepairMemory drm = initialize(po, toy, nets);
  std::vector<Hypothesis> hs = gen_combine(drm, toy, nets);
  REQUIRE(hs.size() == 2);
  const CombineChunks &first = std::get<CombineChunks>(hs[0]);
  CHECK(first.members == std::vector<int>{1, 2});
  CHECK(first.leaf == "<FREE>");
  CHECK(std::get<CombineChunks>(hs[1]).leaf == "<BUSY>");

  po.skipped.pop_back();
  CHECK(gen_combine(initialize(po, toy, nets), toy, nets).empty());
}

TEST_CASE("bottom-up insertion") {
  DynamicRepairMemory drm = sample_after_frame();
  std::vector<Hypothesis> hs =
      gen_insert_bottom_up(drm, S(), fixtures::trained(), false);
  REQUIRE_FALSE(hs.empty());
  const InsertChunk &first = std::get<InsertChunk>(hs.front());
  CHECK(first.chunk_id == 4);
  CHECK(first.target == make_path({"when"}));
  CHECK(first.as_type == "<SIMPLE-TIME>");

  SUBCASE("no type-compatible open slot") {
    DynamicRepairMemory d = initialize(
        record("((frame *i))", {{read_fs("((frame *that))"), {"that-phrase"}, {"that"}}}),
        S(), fixtures::trained());
    CHECK(gen_insert_bottom_up(d, S(), fixtures::trained(), true).empty());
  }
  SUBCASE("the slot seen more often comes first") {
    Networks nets = make_networks(S());
    for (int i = 0; i < 3; ++i) nets.slot_prior.train({"TRUE"}, slot_unit("*free", "why"));
    nets.slot_prior.train({"TRUE"}, slot_unit("*free", "who"));
    DynamicRepairMemory d = initialize(
        record("((frame *free))", {{read_fs("((frame *i))"), {"i-phrase"}, {"me"}}}),
        S(), nets);
    std::vector<FeaturePath> targets;
    for (const Hypothesis &h : gen_insert_bottom_up(d, S(), nets, false)) {
      targets.push_back(std::get<InsertChunk>(h).target);
    }
    REQUIRE(targets.size() == 2);
    CHECK(targets[0] == make_path({"why"}));
    CHECK(targets[1] == make_path({"who"}));
  }
}

TEST_CASE("top-down insertion") {
  SUBCASE("the speaker is found inside the consumed chunk") {
    Session s(fixtures::sample(), S(), fixtures::trained(), nullptr,
              fixtures::glosses(), RepairConfig{});
    s.answer(true);
    s.answer(true);
    s.answer(true);  // the time goes into `when`
    std::vector<Hypothesis> hs =
        gen_insert_top_down(s.memory(), S(), fixtures::trained());
    REQUIRE_FALSE(hs.empty());
    const InsertChunk &first = std::get<InsertChunk>(hs.front());
    CHECK(first.chunk_id == 2);
    CHECK(first.constituent == make_path({"who"}));
    CHECK(first.target == make_path({"who"}));
    CHECK(first.as_type == "<I>");
    CHECK_FALSE(first.coerced);
  }
  SUBCASE("no open slots") {
    DynamicRepairMemory d = initialize(
        record("((frame *i))", {{read_fs("((value be))"), {"be"}, {"be"}}}),
        S(), fixtures::trained());
    CHECK(gen_insert_top_down(d, S(), fixtures::trained()).empty());
  }
  SUBCASE("an unknown chunk is guessed only after every typed candidate") {
    DynamicRepairMemory drm = sample_after_frame();
    std::vector<Hypothesis> hs =
        gen_insert_top_down(drm, S(), fixtures::trained());
    bool seen_guess = false;
    int typed_for_when = 0;
    int guesses_for_when = 0;
    for (const Hypothesis &h : hs) {
      const InsertChunk &ins = std::get<InsertChunk>(h);
      if (ins.target != make_path({"when"})) continue;
      if (ins.coerced) {
        seen_guess = true;
        ++guesses_for_when;
        CHECK(ins.chunk_id == 1);
      } else {
        CHECK_FALSE(seen_guess);
        ++typed_for_when;
      }
    }
    CHECK(typed_for_when >= 1);
    CHECK(guesses_for_when >= 1);
  }
}

TEST_CASE("meta strategy") {
  RepairConfig config;
  SUBCASE("a bad parse opens with a frame guess") {
    DynamicRepairMemory drm =
        initialize(fixtures::sample(), S(), fixtures::trained());
    std::optional<Hypothesis> h =
        next_hypothesis(drm, S(), fixtures::trained(), config);
    REQUIRE(h.has_value());
    CHECK(std::get<TopLevelFrame>(*h).leaf == "<FREE>");
  }
  SUBCASE("a complete parse asks nothing") {
    ParserOutput po = record(fixtures::kBusyText);
    po.parsed_completely = true;
    DynamicRepairMemory drm = initialize(po, S(), fixtures::trained());
    CHECK_FALSE(next_hypothesis(drm, S(), fixtures::trained(), config));
    CHECK(drm.questions_asked == 0);
  }
  SUBCASE("a good parse the networks agree with is kept without asking") {
    ParserOutput po = record("((frame *free) (who ((frame *i))))");
    po.partial_symbols = {"free-phrase", "i-phrase"};
    po.quality = ParseQuality::kGood;
    po.skipped.push_back({read_fs("((frame *simple-time) (day 9))"),
                          {"simple-time-phrase", "day-word"}, {"the", "ninth"}});
    DynamicRepairMemory drm = initialize(po, S(), fixtures::trained());
    std::optional<Hypothesis> h =
        next_hypothesis(drm, S(), fixtures::trained(), config);
    CHECK(drm.top_level_confirmed);
    REQUIRE(h.has_value());
    CHECK_FALSE(std::holds_alternative<TopLevelFrame>(*h));
  }
  SUBCASE("a budget of two stops a three-repair session after two questions") {
    Networks nets = fixtures::trained();
    OracleAnswerer oracle(*fixtures::sample().gold, S());
    config.max_questions = 2;
    SessionResult r = run_session(fixtures::sample(), S(), nets, oracle,
                                  fixtures::glosses(), config, false);
    CHECK(r.questions_used == 2);
    CHECK(r.transcript.size() == 2);
    CHECK(*r.accuracy_after < 1.0);
    CHECK(*r.accuracy_after >= *r.accuracy_before);
  }
}

TEST_CASE("property: generated insertions target open slots of a compatible type") {
  SynthOptions options;
  options.records = 120;
  options.seed = 77;
  std::vector<ParserOutput> corpus = synthesize_corpus(S(), options);
  std::mt19937 rng(5);
  std::bernoulli_distribution yes(0.4);
  int checked = 0;
  int invalid = 0;
  for (const Policy &policy : all_policies()) {
    RepairConfig config;
    config.policy = policy;
    config.max_questions = 15;
    for (const ParserOutput &po : corpus) {
      Session s(po, S(), fixtures::trained(), nullptr, fixtures::glosses(), config);
      while (true) {
        const DynamicRepairMemory &drm = s.memory();
        for (const Hypothesis &h :
             gen_insert_bottom_up(drm, S(), fixtures::trained(), true)) {
          ++checked;
          if (!valid_insert(std::get<InsertChunk>(h), drm)) ++invalid;
        }
        for (const Hypothesis &h :
             gen_insert_top_down(drm, S(), fixtures::trained())) {
          ++checked;
          if (!valid_insert(std::get<InsertChunk>(h), drm)) ++invalid;
        }
        if (s.done()) break;
        s.answer(yes(rng));
      }
    }
  }
  MESSAGE("insert hypotheses checked: " << checked);
  CHECK(checked > 1000);
  CHECK(invalid == 0);
}

TEST_CASE("property: no hypothesis is offered twice in a session") {
  std::vector<ParserOutput> corpus = fixtures::corpus("synthetic.corpus");
  std::mt19937 rng(17);
  std::bernoulli_distribution yes(0.3);
  for (const Policy &policy : all_policies()) {
    RepairConfig config;
    config.policy = policy;
    config.max_questions = 25;
    config.enable_combine = true;
    for (const ParserOutput &po : corpus) {
      Session s(po, S(), fixtures::trained(), nullptr, fixtures::glosses(), config);
      while (!s.done()) s.answer(yes(rng));
      std::set<std::string> keys;
      for (const TranscriptEntry &e : s.memory().transcript) {
        REQUIRE_MESSAGE(keys.insert(hypothesis_key(e.hypothesis)).second,
                        po.id << " " << policy.name() << " "
                              << hypothesis_key(e.hypothesis));
      }
      REQUIRE(s.memory().questions_asked ==
              static_cast<int>(s.memory().transcript.size()));
    }
  }
}
