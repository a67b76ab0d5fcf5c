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

// Random feature structures for property tests, independent of any spec.

#ifndef REPAIR_TESTS_RANDOM_FS_H_
#define REPAIR_TESTS_RANDOM_FS_H_

#include <random>
#include <string>
#include <vector>

#include "repair/fstruct.h"

namespace fixtures {

class RandomFs {
 public:
  explicit RandomFs(unsigned seed) : rng_(seed) {}

  repair::FeatureStructure structure(int depth) {
    repair::FeatureStructure fs;
    if (coin(0.6)) fs.set("frame", repair::Atom::symbol("*f" + digit()));
    int n = pick(0, 4);
    for (int i = 0; i < n; ++i) {
      std::string name = kNames[pick(0, 7)];
      if (fs.has(name)) continue;
      fs.set(name, value(depth));
    }
    return fs;
  }

  repair::Atom atom() {
    switch (pick(0, 3)) {
      case 0: return repair::Atom::symbol(symbol());
      case 1: return repair::Atom::integer(pick(-50, 50));
      case 2: return repair::Atom::string(text());
      default: return repair::Atom::symbol("*" + symbol());
    }
  }

  std::mt19937 &rng() { return rng_; }

  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

 private:
  static constexpr const char *kNames[] = {"a",   "b",    "who",  "when",
                                           "day", "what", "with", "x-y"};

  repair::SlotValue value(int depth) {
    int kind = pick(0, 9);
    if (kind < 4 && depth > 0) return structure(depth - 1);
    if (kind == 4) {
      repair::SlotValue::Multiple items;
      int n = pick(2, 3);
      for (int i = 0; i < n; ++i) {
        if (depth > 0 && coin(0.3)) {
          items.push_back(structure(depth - 1));
        } else {
          items.push_back(atom());
        }
      }
      return repair::SlotValue::multiple(std::move(items));
    }
    return atom();
  }

  std::string digit() { return std::to_string(pick(0, 9)); }

  std::string symbol() {
    static const char *kWords[] = {"tuesday", "next", "all-range", "+",
                                   "-",       "x1",   "free",      "o.k."};
    return kWords[pick(0, 7)];
  }

  std::string text() {
    static const char *kTexts[] = {"", "two words", "say \"hi\"", "back\\slash",
                                   "(paren)", "semi;colon"};
    return kTexts[pick(0, 5)];
  }

  std::mt19937 rng_;
};

}  // namespace fixtures

#endif  // REPAIR_TESTS_RANDOM_FS_H_
