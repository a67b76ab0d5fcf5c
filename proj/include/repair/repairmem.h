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

// Parser output records, chunks, and the dynamic repair memory that every
// stage of a repair session reads and writes.
//
// Record format (one per utterance; a corpus is a sequence of records):
//
//   (record
//     (id fig-partial)
//     (utterance tuesday afternoon the ninth be okay for me that)
//     (quality bad)                      ; good | bad
//     (complete false)                   ; true | false
//     (partial (fs (...)) (symbols s1 s2 ...))
//     (skipped (fs (...)) (symbols ...) (words ...))   ; zero or more
//     (gold (...)))                      ; optional
//
// `partial` may be omitted for a nil parse.

#ifndef REPAIR_REPAIRMEM_H_
#define REPAIR_REPAIRMEM_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "repair/fstruct.h"
#include "repair/hypothesis.h"
#include "repair/ilspec.h"
#include "repair/minet.h"

namespace repair {

struct SkippedSegment {
  FeatureStructure fs;
  std::vector<std::string> symbols;
  std::vector<std::string> words;
};

enum class ParseQuality { kGood, kBad };

struct ParserOutput {
  std::string id;
  std::vector<std::string> utterance;
  std::optional<FeatureStructure> partial;
  std::vector<std::string> partial_symbols;
  std::vector<SkippedSegment> skipped;
  ParseQuality quality = ParseQuality::kBad;
  bool parsed_completely = false;
  std::optional<FeatureStructure> gold;
};

class RecordError : public std::runtime_error {
 public:
  RecordError(const std::string &what, std::size_t record_index);

  std::size_t record_index() const { return record_index_; }

 private:
  std::size_t record_index_;
};

std::vector<ParserOutput> read_corpus(std::string_view text);
std::vector<ParserOutput> read_corpus_file(const std::string &path);
ParserOutput read_record(std::string_view text);
std::string write_record(const ParserOutput &po);
std::string write_corpus(const std::vector<ParserOutput> &corpus);

enum class ChunkSource { kSkipped, kWord, kDemoted, kCombined };

struct Chunk {
  int id = 0;
  FeatureStructure fs;
  std::vector<std::string> symbols;
  std::vector<std::string> words;
  std::optional<TypeName> leaf_type;
  bool consumed = false;
  ChunkSource source = ChunkSource::kSkipped;
  // Constituent paths already inserted into the ILT.
  std::set<FeaturePath> used;
  // Ranked guesses for a chunk without a definite type.
  std::vector<Prediction> candidate_types;
  // Slot path the material occupied before it was demoted.
  std::optional<FeaturePath> origin;
  // Member of a combination waiting to go into chunk `pending_into`.
  std::optional<int> pending_into;

  bool unknown() const { return !leaf_type.has_value(); }
};

enum class HypothesisStatus { kNone, kTest, kPass, kFail };

struct TranscriptEntry {
  Hypothesis hypothesis;
  std::string question;
  bool answer = false;
};

struct DynamicRepairMemory {
  FeatureStructure current_ilt;
  std::vector<Chunk> chunks;
  std::optional<Hypothesis> current_hypothesis;
  HypothesisStatus status = HypothesisStatus::kNone;
  int questions_asked = 0;
  bool top_level_confirmed = false;
  std::vector<TranscriptEntry> transcript;
  std::set<std::string> failed;

  // Session bookkeeping.
  bool first_question_settled = false;
  bool sentence_type_pending = false;
  bool search_top_down = false;  // meta third-question phase
  ParseQuality quality = ParseQuality::kBad;
  bool parsed_completely = false;
  std::optional<TypeName> parser_leaf;
  UnitSet all_symbols;
  std::vector<std::string> partial_symbols;
  std::vector<std::string> utterance;

  // Material accounting: atoms displaced by demotion (sentence-type and
  // speech-act of the old analysis), atoms dropped, and atoms introduced
  // from templates.
  FeatureStructure displaced;
  std::vector<Atom> discarded;
  std::vector<Atom> invented;

  const Chunk *chunk(int id) const;
  Chunk *chunk(int id);
  int next_chunk_id() const;
};

// Builds the repair memory for one parser result. N1 annotates chunks that
// have no definite type.
DynamicRepairMemory initialize(const ParserOutput &po,
                               const InterlinguaSpec &spec,
                               const Networks &nets);

// Moves every top-level content slot of the current ILT into a new chunk
// and replaces the ILT with `replacement`.
void demote_current_ilt(DynamicRepairMemory &drm, const InterlinguaSpec &spec,
                        const Networks &nets,
                        const FeatureStructure &replacement);

// Refreshes cached N1 guesses for chunks without a definite type.
void refresh_candidate_types(DynamicRepairMemory &drm,
                             const InterlinguaSpec &spec,
                             const Networks &nets);

// Chunk fs with used constituents removed; empty once the chunk is consumed.
FeatureStructure chunk_residual(const Chunk &chunk);

// Constituents of `chunk` that may still be offered, pre-order.
std::vector<std::pair<FeaturePath, FeatureStructure>> available_constituents(
    const Chunk &chunk);

// Atoms of the original parser output, as a sorted multiset.
std::vector<Atom> original_atoms(const ParserOutput &po);
// Atoms accounted for by the repair memory plus `discarded`, minus
// `invented`; equal to original_atoms() at every step of a session.
bool material_conserved(const ParserOutput &po,
                        const DynamicRepairMemory &drm);

}  // namespace repair

#endif  // REPAIR_REPAIRMEM_H_
