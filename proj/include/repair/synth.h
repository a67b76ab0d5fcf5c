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

// Seeded generator for gold structures and the damaged parser output a
// robust parser would return for them. Output is identical for identical
// seeds on every platform.
//
// Parser symbols are "<frame>-phrase" for every frame node (the leading
// '*' dropped) and "<slot>-word" for every atomic slot. A filler with no
// content of its own may instead surface as a bare word chunk ((value w)).
// Stray fragments and stray atomic slots on skipped frames model the
// parser attaching material it should not have.

#ifndef REPAIR_SYNTH_H_
#define REPAIR_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "repair/fstruct.h"
#include "repair/ilspec.h"
#include "repair/repairmem.h"

namespace repair {

struct SynthOptions {
  std::size_t records = 60;
  std::uint64_t seed = 1;
  std::string id_prefix = "syn";

  double complete_rate = 0.15;
  double nil_rate = 0.04;
  double fragment_rate = 0.40;     // partial holds one slot of the frame
  double wrong_frame_rate = 0.15;  // partial carries a compatible wrong frame
  // Everything else keeps the right frame with some slots skipped.

  double split_rate = 0.45;        // slot split off into its own chunk
  double bare_word_rate = 0.5;     // contentless split filler as a word
  double noise_word_rate = 0.4;    // extra unanalysable word chunk
  double noise_fragment_rate = 0.3;  // extra stray analysed fragment
  double spurious_slot_rate = 0.25;  // stray atomic slot on a skipped frame
  std::vector<std::string> noise_fragments{"((frame *that))", "((frame *it))"};
  std::vector<std::pair<std::string, std::string>> spurious_slots{
      {"good-bad", "+"}, {"good-bad", "-"}};
  double symbol_dropout = 0.1;

  double default_slot_rate = 0.3;
  std::map<std::string, double> slot_rate{{"who", 0.7}, {"when", 0.9}};
  std::map<std::string, std::string> preferred_sentence_type{
      {"*busy", "*state"},   {"*free", "*state"},
      {"*accept", "*state"}, {"*reject", "*state"},
      {"*suggest", "*query-if"}, {"*meet", "*directive"}};
  double preferred_sentence_type_rate = 0.85;
  int max_depth = 2;
};

// splitmix64 stream with uniform helpers.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();                         // [0, 1)
  std::size_t below(std::size_t n);         // [0, n)
  bool chance(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

std::vector<std::string> segment_symbols(const FeatureStructure &fs);
std::vector<std::string> segment_words(const FeatureStructure &fs);

FeatureStructure random_gold(const InterlinguaSpec &spec,
                             const SynthOptions &options, SynthRng &rng);
ParserOutput damage(const FeatureStructure &gold, const InterlinguaSpec &spec,
                    const SynthOptions &options, SynthRng &rng,
                    std::string id);
std::vector<ParserOutput> synthesize_corpus(const InterlinguaSpec &spec,
                                            const SynthOptions &options);

// "Tuesday afternoon the ninth would be okay for me though", as the
// recognizer and parser left it, with the hand-coded meaning as gold.
ParserOutput sample_record();

}  // namespace repair

#endif  // REPAIR_SYNTH_H_
