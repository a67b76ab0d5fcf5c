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

// Count-backed mutual-information networks.
//
// A network associates input units with output units through co-occurrence
// counts. Each training event names a set of active inputs and one correct
// output. An output's score for a set of active inputs is
//
//   score(v) = log P(v) + sum over active c of log[P(v | c) / P(v)]
//
// with add-lambda estimates
//
//   P(v | c) = (joint(c, v) + lambda) / (in(c) + lambda * |outputs|)
//   P(v)     = (out(v) + lambda)      / (total + lambda * |outputs|)
//
// An input that has never been seen in training contributes exactly zero, so
// predictions over unseen inputs fall back to the prior ranking.

#ifndef REPAIR_MINET_H_
#define REPAIR_MINET_H_

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace repair {

class InterlinguaSpec;

using UnitSet = std::set<std::string>;

struct Prediction {
  std::string output;
  double score = 0.0;
  int rank = 0;  // 1-based
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MINetwork {
 public:
  static constexpr double kDefaultLambda = 0.5;
  // Scores closer than this (relative) are ties, broken by output name.
  static constexpr double kTieEpsilon = 1e-12;

  explicit MINetwork(double lambda = kDefaultLambda);

  double lambda() const { return lambda_; }

  void declare_output(const std::string &output);
  // Remembers an input unit with zero counts.
  void declare_input(const std::string &input);

  const UnitSet &inputs() const { return inputs_; }
  const UnitSet &outputs() const { return outputs_; }

  std::uint64_t joint(const std::string &input, const std::string &output) const;
  std::uint64_t in_count(const std::string &input) const;
  std::uint64_t out_count(const std::string &output) const;
  std::uint64_t total() const { return total_; }

  double log_prior(const std::string &output) const;
  double mi(const std::string &input, const std::string &output) const;
  double score(const UnitSet &active, const std::string &output) const;

  // Ranked predictions over outputs() restricted to `mask` when given.
  std::vector<Prediction> predict(const UnitSet &active,
                                  const UnitSet *mask = nullptr) const;

  void train(const UnitSet &active, const std::string &correct);

  std::string save() const;
  static MINetwork load(std::string_view text);

  friend bool operator==(const MINetwork &, const MINetwork &) = default;

 private:
  double lambda_;
  UnitSet inputs_;
  UnitSet outputs_;
  std::map<std::string, std::map<std::string, std::uint64_t>> joint_;
  std::map<std::string, std::uint64_t> in_;
  std::map<std::string, std::uint64_t> out_;
  std::uint64_t total_ = 0;
};

// Unit naming shared by the five networks.
inline constexpr std::string_view kTrueUnit = "TRUE";
std::string slot_unit(std::string_view frame, std::string_view slot);

// The five networks consulted by hypothesis generation.
struct Networks {
  MINetwork symbol_to_type;            // N1: symbol or word -> leaf type
  MINetwork slot_filler;               // N2: frame:slot -> leaf type
  MINetwork symbols_to_type;           // N3: symbol set -> leaf type
  MINetwork symbols_to_sentence_type;  // N4: symbol set -> sentence type
  MINetwork slot_prior;                // N5: TRUE -> frame:slot

  friend bool operator==(const Networks &, const Networks &) = default;
};

// Empty networks whose output vocabularies come from the interlingua.
Networks make_networks(const InterlinguaSpec &spec,
                       double lambda = MINetwork::kDefaultLambda);
// Adds any spec outputs missing from loaded networks.
void declare_spec_outputs(const InterlinguaSpec &spec, Networks &nets);

std::string save_networks(const Networks &nets);
Networks load_networks(std::string_view text);
Networks load_networks_file(const std::string &path);
void save_networks_file(const Networks &nets, const std::string &path);

}  // namespace repair

#endif  // REPAIR_MINET_H_
