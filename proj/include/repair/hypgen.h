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

// Hypothesis generation. Each generator returns a ranked list; failed
// hypotheses are filtered by next_hypothesis(), which also carries the
// policy that decides which generator runs and when to stop.

#ifndef REPAIR_HYPGEN_H_
#define REPAIR_HYPGEN_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repair/hypothesis.h"
#include "repair/ilspec.h"
#include "repair/minet.h"
#include "repair/repairmem.h"

namespace repair {

enum class Approach { kTopDown, kBottomUp };

// Answers to the three questions: the top-level frame, how constituents
// are built, and what drives the insertion search.
struct Strategy {
  Approach q1 = Approach::kTopDown;
  Approach q2 = Approach::kTopDown;
  Approach q3 = Approach::kTopDown;

  friend bool operator==(const Strategy &, const Strategy &) = default;
};

// One of the eight fixed strategies, or the meta policy.
struct Policy {
  bool meta = true;
  Strategy strategy;

  static Policy meta_policy() { return Policy{}; }
  static Policy fixed(Strategy s) { return Policy{false, s}; }
  // "meta" or three letters T/B, e.g. "TTB".
  static Policy parse(std::string_view name);
  std::string name() const;

  friend bool operator==(const Policy &, const Policy &) = default;
};

// The eight fixed strategies in TTT..BBB order, then meta.
std::vector<Policy> all_policies();

struct RepairConfig {
  int max_questions = 10;
  bool enable_combine = false;  // meta policy only
  int top_frame_candidates = 5;
  double lambda = MINetwork::kDefaultLambda;
  Policy policy = Policy::meta_policy();
};

// Conformance of an ILT to `leaf`, ignoring a sentence-type outside the
// spec's list.
bool content_conforms(const InterlinguaSpec &spec, const FeatureStructure &ilt,
                      const TypeName &leaf);

// Open slots whose declared type is structural, so a chunk can fill them.
std::vector<OpenSlot> insertable_slots(const InterlinguaSpec &spec,
                                       const FeatureStructure &ilt);

std::vector<Hypothesis> gen_top_level(const DynamicRepairMemory &drm,
                                      const InterlinguaSpec &spec,
                                      const Networks &nets,
                                      const RepairConfig &config,
                                      bool keep_parser_frame);
std::vector<Hypothesis> gen_sentence_type(const DynamicRepairMemory &drm,
                                          const InterlinguaSpec &spec,
                                          const Networks &nets);
std::vector<Hypothesis> gen_combine(const DynamicRepairMemory &drm,
                                    const InterlinguaSpec &spec,
                                    const Networks &nets);
// Definite-type constituents first; with `guess_unknown`, chunks without a
// type follow as their top three N1 guesses.
std::vector<Hypothesis> gen_insert_bottom_up(const DynamicRepairMemory &drm,
                                             const InterlinguaSpec &spec,
                                             const Networks &nets,
                                             bool guess_unknown);
std::vector<Hypothesis> gen_insert_top_down(const DynamicRepairMemory &drm,
                                            const InterlinguaSpec &spec,
                                            const Networks &nets);

// Marks the first question answered. A confirmed frame moves an unknown
// sentence-type out of the ILT; a missing one is queued for guessing.
void settle_first_question(DynamicRepairMemory &drm,
                           const InterlinguaSpec &spec, bool confirmed);

// Picks the next question for the configured policy, or nullopt to stop.
// Settles the first question without asking when the policy keeps the
// parser's frame.
std::optional<Hypothesis> next_hypothesis(DynamicRepairMemory &drm,
                                          const InterlinguaSpec &spec,
                                          const Networks &nets,
                                          const RepairConfig &config);

}  // namespace repair

#endif  // REPAIR_HYPGEN_H_
