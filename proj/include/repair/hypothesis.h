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

// The four kinds of repair hypothesis.

#ifndef REPAIR_HYPOTHESIS_H_
#define REPAIR_HYPOTHESIS_H_

#include <string>
#include <variant>
#include <vector>

#include "repair/fstruct.h"
#include "repair/ilspec.h"

namespace repair {

struct TopLevelFrame {
  TypeName leaf;
};

struct SentenceTypeGuess {
  std::string sentence_type;
};

struct CombineChunks {
  std::vector<int> members;
  TypeName leaf;
};

struct InsertChunk {
  int chunk_id = 0;
  FeaturePath constituent;  // within the chunk; empty for the chunk itself
  FeaturePath target;       // slot path in the current ILT
  TypeName as_type;
  // The chunk had no definite type and is assumed to be `as_type`; the value
  // inserted is that type's template.
  bool coerced = false;
};

using Hypothesis =
    std::variant<TopLevelFrame, SentenceTypeGuess, CombineChunks, InsertChunk>;

// Identity used to avoid offering a rejected hypothesis twice.
std::string hypothesis_key(const Hypothesis &h);

// Short name of the variant: top-level-frame, sentence-type, combine, insert.
std::string hypothesis_kind(const Hypothesis &h);

}  // namespace repair

#endif  // REPAIR_HYPOTHESIS_H_
