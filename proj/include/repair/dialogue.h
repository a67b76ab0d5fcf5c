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

// Confirmation questions, paraphrases, and the interlingua update that
// follows an answer.
//
// Gloss file: one `key<TAB>text` entry per line, `#` comments. A key is a
// symbol (`*free`, `when`, `tuesday`) or a symbol with a role suffix:
//
//   *free@topic      someone being free       first-question wording
//   *free@clause     {who} {be} free {when}   paraphrase template
//   *i@be            am                       verb agreement for {be}
//   *simple-time@order  day-of-week time-of-day day
//   day@format       ordinal
//   next@prefix      next
//   who@question     Is it "{filler}" who is {frame} in your sentence?
//   *state@end       .

#ifndef REPAIR_DIALOGUE_H_
#define REPAIR_DIALOGUE_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "repair/fstruct.h"
#include "repair/hypothesis.h"
#include "repair/ilspec.h"
#include "repair/minet.h"
#include "repair/repairmem.h"

namespace repair {

class Glosses {
 public:
  static Glosses load(std::string_view text);
  static Glosses load_file(const std::string &path);

  void set(std::string key, std::string text);
  std::optional<std::string> find(std::string_view key) const;
  // Gloss of a frame or slot symbol; the symbol in quotes when missing.
  std::string gloss(std::string_view symbol) const;
  // Gloss of an atomic value; the value itself when missing.
  std::string value_gloss(const Atom &atom) const;

 private:
  std::map<std::string, std::string, std::less<>> table_;
};

std::string paraphrase(const FeatureStructure &fs, const Glosses &glosses);
std::string paraphrase_value(const SlotValue &value, const Glosses &glosses);

// The structure an InsertChunk would put into the ILT.
FeatureStructure inserted_value(const InsertChunk &h,
                                const DynamicRepairMemory &drm,
                                const InterlinguaSpec &spec);

std::string render_question(const Hypothesis &h,
                            const DynamicRepairMemory &drm,
                            const InterlinguaSpec &spec,
                            const Glosses &glosses);

// Bracketed description, e.g. (top-level-frame ((frame-name *free))).
std::string hypothesis_summary(const Hypothesis &h,
                               const DynamicRepairMemory &drm,
                               const InterlinguaSpec &spec);

class StaleHypothesis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Makes the repair named by a confirmed hypothesis. Throws StaleHypothesis
// when an insertion target is no longer open.
void apply_hypothesis(const Hypothesis &h, DynamicRepairMemory &drm,
                      const InterlinguaSpec &spec, const Networks &nets);

// Trains the networks on a confirmed hypothesis. Call before applying it.
void reinforce(const Hypothesis &h, const DynamicRepairMemory &drm,
               const InterlinguaSpec &spec, Networks &nets);

// Records the user's answer to the outstanding hypothesis. On yes the
// networks are reinforced (when `nets` is non-null) and the repair is made.
void record_answer(DynamicRepairMemory &drm, const InterlinguaSpec &spec,
                   const Networks &read_nets, Networks *train_nets,
                   const std::string &question, bool answer);

}  // namespace repair

#endif  // REPAIR_DIALOGUE_H_
