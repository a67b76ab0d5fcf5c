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

// Shared fixtures: the bundled scheduling spec, glosses, corpora and
// networks trained from the bundled training corpus.

#ifndef REPAIR_TESTS_FIXTURES_H_
#define REPAIR_TESTS_FIXTURES_H_

#include <fstream>
#include <map>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "repair/dialogue.h"
#include "repair/engine.h"
#include "repair/ilspec.h"
#include "repair/minet.h"
#include "repair/repairmem.h"

namespace fixtures {

inline std::string data_path(const std::string &name) {
  return std::string(REPAIR_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline const repair::InterlinguaSpec &spec() {
  static const repair::InterlinguaSpec s =
      repair::InterlinguaSpec::load(slurp(data_path("scheduling.spec")));
  return s;
}

inline const repair::Glosses &glosses() {
  static const repair::Glosses g =
      repair::Glosses::load_file(data_path("glosses.tsv"));
  return g;
}

inline const std::vector<repair::ParserOutput> &corpus(const std::string &name) {
  static std::map<std::string, std::vector<repair::ParserOutput>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    it = cache.emplace(name, repair::read_corpus_file(data_path(name))).first;
  }
  return it->second;
}

// Networks trained offline on the bundled training corpus.
inline const repair::Networks &trained() {
  static const repair::Networks n = [] {
    repair::Networks nets = repair::make_networks(spec());
    repair::train_from_gold(corpus("train.corpus"), spec(), nets);
    return nets;
  }();
  return n;
}

inline const repair::ParserOutput &sample() {
  for (const repair::ParserOutput &po : corpus("demo.corpus")) {
    if (po.id == "sample") return po;
  }
  throw std::runtime_error("demo corpus has no sample record");
}

// "I'm busy all next week." as the parser returned it.
inline const char *kBusyText =
    "((speech-act (*multiple* *state-constraint *reject))"
    " (sentence-type *state)"
    " (frame *busy)"
    " (who ((frame *i)))"
    " (when ((frame *special-time)"
    " (next week)"
    " (specifier (*multiple* all-range next)))))";

inline const char *kDoneText =
    "((sentence-type *state) (frame *free) (who ((frame *i)))"
    " (when ((frame *simple-time) (time-of-day afternoon)"
    " (day-of-week tuesday) (day 9))))";

}  // namespace fixtures

#endif  // REPAIR_TESTS_FIXTURES_H_
