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

// Repair sessions, the gold-standard oracle, the accuracy metric and the
// corpus evaluation harness.
//
// Accuracy is F1 over flatten() pairs: precision and recall of exact
// (path, atom) matches between a candidate and the hand-coded structure.

#ifndef REPAIR_ENGINE_H_
#define REPAIR_ENGINE_H_

#include <optional>
#include <string>
#include <vector>

#include "repair/dialogue.h"
#include "repair/fstruct.h"
#include "repair/hypgen.h"
#include "repair/ilspec.h"
#include "repair/minet.h"
#include "repair/repairmem.h"

namespace repair {

double accuracy(const FeatureStructure &candidate,
                const FeatureStructure &gold);

// Yes/no answer a cooperative speaker whose meaning is `gold` would give.
bool oracle_answer(const FeatureStructure &gold, const Hypothesis &h,
                   const DynamicRepairMemory &drm,
                   const InterlinguaSpec &spec);

class Answerer {
 public:
  virtual ~Answerer() = default;
  virtual bool answer(const std::string &question, const Hypothesis &h,
                      const DynamicRepairMemory &drm) = 0;
};

class OracleAnswerer : public Answerer {
 public:
  OracleAnswerer(FeatureStructure gold, const InterlinguaSpec &spec)
      : gold_(std::move(gold)), spec_(spec) {}

  bool answer(const std::string &question, const Hypothesis &h,
              const DynamicRepairMemory &drm) override;

 private:
  FeatureStructure gold_;
  const InterlinguaSpec &spec_;
};

// The ILT handed back at session end: the current ILT plus demoted parser
// material that was never placed elsewhere or rejected, returned to the
// slot it came from when that slot is still open.
FeatureStructure assemble_result(const DynamicRepairMemory &drm,
                                 const InterlinguaSpec &spec);

struct SessionResult {
  FeatureStructure final_ilt;
  int questions_used = 0;
  // Questions up to and including the last confirmed repair.
  int questions_to_converge = 0;
  std::vector<TranscriptEntry> transcript;
  std::optional<double> accuracy_before;
  std::optional<double> accuracy_after;
};

// "Q1: text\nA1: yes\n..." for every answered question.
std::string transcript_text(const std::vector<TranscriptEntry> &transcript);

// A repair session advanced one answer at a time. `train_nets`, when
// non-null, receives reinforcement on every confirmed hypothesis and is
// also the network set consulted for generation.
class Session {
 public:
  Session(const ParserOutput &po, const InterlinguaSpec &spec,
          const Networks &nets, Networks *train_nets, const Glosses &glosses,
          RepairConfig config);

  bool done() const { return !pending_.has_value(); }
  const Hypothesis *pending() const {
    return pending_ ? &*pending_ : nullptr;
  }
  const std::string &question() const { return question_; }
  void answer(bool yes);
  // Ends the session now, as if the question budget were exhausted.
  void give_up();

  const DynamicRepairMemory &memory() const { return drm_; }
  const ParserOutput &record() const { return po_; }
  SessionResult result() const;

 private:
  void advance();

  ParserOutput po_;
  const InterlinguaSpec &spec_;
  const Networks &nets_;
  Networks *train_nets_;
  const Glosses &glosses_;
  RepairConfig config_;
  DynamicRepairMemory drm_;
  std::optional<Hypothesis> pending_;
  std::string question_;
};

// Runs a session to completion. When `train` is true `nets` is reinforced.
SessionResult run_session(const ParserOutput &po, const InterlinguaSpec &spec,
                          Networks &nets, Answerer &answerer,
                          const Glosses &glosses, const RepairConfig &config,
                          bool train = true);

enum class Reinforcement {
  kOff,         // networks never change
  kPerRecord,   // each record starts from the given networks
  kPersistent,  // learning carries over from record to record
};

struct EvalOptions {
  std::vector<int> budgets{0, 5, 10, 25};
  std::vector<Policy> policies = all_policies();
  Reinforcement reinforcement = Reinforcement::kPerRecord;
  bool enable_combine = false;
  int top_frame_candidates = 5;
};

struct RecordOutcome {
  std::string policy;
  int budget = 0;
  std::size_t record = 0;
  double before = 0.0;
  double after = 0.0;
  int questions = 0;
  int questions_to_converge = 0;
};

struct EvalRow {
  std::string policy;
  int budget = 0;
  double accuracy_before = 0.0;
  double accuracy_after = 0.0;
  double mean_questions = 0.0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<RecordOutcome> outcomes;
};

// Every record must carry a gold structure.
EvalReport evaluate_corpus(const std::vector<ParserOutput> &corpus,
                           const InterlinguaSpec &spec, const Networks &nets,
                           const EvalOptions &options);

// Tab-separated: policy, budget, accuracy-before, accuracy-after,
// mean-questions.
std::string eval_table(const EvalReport &report);

// Offline training from records with gold structures.
void train_from_gold(const std::vector<ParserOutput> &corpus,
                     const InterlinguaSpec &spec, Networks &nets);

}  // namespace repair

#endif  // REPAIR_ENGINE_H_
