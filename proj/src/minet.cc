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

#include "repair/minet.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "repair/ilspec.h"

namespace repair {

namespace {

constexpr std::string_view kNetMagic = "minet";
constexpr int kNetVersion = 1;
constexpr std::string_view kModelMagic = "repair-model";
constexpr int kModelVersion = 1;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos
                                            ? std::string_view::npos
                                            : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::uint64_t parse_count(std::string_view s, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ModelError("corrupt count '" + std::string(s) + "' on line " +
                     std::to_string(line_no));
  }
  return value;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MINetwork::MINetwork(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

void MINetwork::declare_output(const std::string &output) {
  outputs_.insert(output);
}

void MINetwork::declare_input(const std::string &input) {
  inputs_.insert(input);
}

std::uint64_t MINetwork::joint(const std::string &input,
                               const std::string &output) const {
  auto row = joint_.find(input);
  if (row == joint_.end()) return 0;
  auto cell = row->second.find(output);
  return cell == row->second.end() ? 0 : cell->second;
}

std::uint64_t MINetwork::in_count(const std::string &input) const {
  auto it = in_.find(input);
  return it == in_.end() ? 0 : it->second;
}

std::uint64_t MINetwork::out_count(const std::string &output) const {
  auto it = out_.find(output);
  return it == out_.end() ? 0 : it->second;
}

double MINetwork::log_prior(const std::string &output) const {
  double n = static_cast<double>(outputs_.size());
  return std::log((static_cast<double>(out_count(output)) + lambda_) /
                  (static_cast<double>(total_) + lambda_ * n));
}

double MINetwork::mi(const std::string &input,
                     const std::string &output) const {
  std::uint64_t in = in_count(input);
  if (in == 0) return 0.0;
  double n = static_cast<double>(outputs_.size());
  double conditional = (static_cast<double>(joint(input, output)) + lambda_) /
                       (static_cast<double>(in) + lambda_ * n);
  double prior = (static_cast<double>(out_count(output)) + lambda_) /
                 (static_cast<double>(total_) + lambda_ * n);
  return std::log(conditional / prior);
}

double MINetwork::score(const UnitSet &active,
                        const std::string &output) const {
  double s = log_prior(output);
  for (const std::string &c : active) s += mi(c, output);
  return s;
}

std::vector<Prediction> MINetwork::predict(const UnitSet &active,
                                           const UnitSet *mask) const {
  std::vector<Prediction> out;
  for (const std::string &v : outputs_) {
    if (mask != nullptr && mask->count(v) == 0) continue;
    out.push_back(Prediction{v, score(active, v), 0});
  }
  std::sort(out.begin(), out.end(),
            [](const Prediction &a, const Prediction &b) {
              if (a.score != b.score) return a.score > b.score;
              return a.output < b.output;
            });
  // Floating-point noise must not decide between outputs whose exact scores
  // are equal: near-equal runs are snapped to the run's head score and
  // ordered by name.
  std::size_t i = 0;
  while (i < out.size()) {
    double head = out[i].score;
    double tol = kTieEpsilon * std::max(1.0, std::fabs(head));
    std::size_t j = i + 1;
    while (j < out.size() && head - out[j].score <= tol) ++j;
    if (j - i > 1) {
      for (std::size_t k = i; k < j; ++k) out[k].score = head;
      std::sort(out.begin() + static_cast<long>(i),
                out.begin() + static_cast<long>(j),
                [](const Prediction &a, const Prediction &b) {
                  return a.output < b.output;
                });
    }
    i = j;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].rank = static_cast<int>(k) + 1;
  }
  return out;
}

void MINetwork::train(const UnitSet &active, const std::string &correct) {
  outputs_.insert(correct);
  ++out_[correct];
  ++total_;
  for (const std::string &c : active) {
    inputs_.insert(c);
    ++in_[c];
    ++joint_[c][correct];
  }
}

std::string MINetwork::save() const {
  std::ostringstream os;
  os << kNetMagic << '\t' << kNetVersion << '\n';
  os << "lambda\t" << format_double(lambda_) << '\n';
  os << "total\t" << total_ << '\n';
  for (const std::string &v : outputs_) {
    os << "out\t" << v << '\t' << out_count(v) << '\n';
  }
  for (const std::string &c : inputs_) {
    os << "in\t" << c << '\t' << in_count(c) << '\n';
  }
  for (const auto &[c, row] : joint_) {
    for (const auto &[v, n] : row) {
      os << "joint\t" << c << '\t' << v << '\t' << n << '\n';
    }
  }
  os << "end\n";
  return os.str();
}

MINetwork MINetwork::load(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty()) throw ModelError("empty network table");
  auto header = split_tabs(lines[0]);
  if (header.size() != 2 || header[0] != kNetMagic) {
    throw ModelError("not a network table");
  }
  if (header[1] != std::to_string(kNetVersion)) {
    throw ModelError("network table version " + std::string(header[1]) +
                     " is not supported (expected " +
                     std::to_string(kNetVersion) + ")");
  }
  double lambda = MINetwork::kDefaultLambda;
  MINetwork net(lambda);
  bool have_total = false;
  bool ended = false;
  std::uint64_t total = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    auto f = split_tabs(lines[i]);
    if (f[0] == "lambda" && f.size() == 2) {
      try {
        net.lambda_ = std::stod(std::string(f[1]));
      } catch (const std::exception &) {
        throw ModelError("corrupt lambda on line " + std::to_string(line_no));
      }
      if (!(net.lambda_ > 0.0)) {
        throw ModelError("lambda must be positive");
      }
    } else if (f[0] == "total" && f.size() == 2) {
      total = parse_count(f[1], line_no);
      have_total = true;
    } else if (f[0] == "out" && f.size() == 3) {
      std::string v(f[1]);
      net.outputs_.insert(v);
      if (auto n = parse_count(f[2], line_no); n > 0) net.out_[v] = n;
    } else if (f[0] == "in" && f.size() == 3) {
      std::string c(f[1]);
      net.inputs_.insert(c);
      if (auto n = parse_count(f[2], line_no); n > 0) net.in_[c] = n;
    } else if (f[0] == "joint" && f.size() == 4) {
      std::string c(f[1]);
      std::string v(f[2]);
      std::uint64_t n = parse_count(f[3], line_no);
      if (net.inputs_.count(c) == 0 || net.outputs_.count(v) == 0) {
        throw ModelError("joint count for undeclared unit on line " +
                         std::to_string(line_no));
      }
      if (n > 0) net.joint_[c][v] = n;
    } else if (f[0] == "end" && f.size() == 1) {
      ended = true;
      break;
    } else {
      throw ModelError("corrupt network table on line " +
                       std::to_string(line_no));
    }
  }
  if (!ended || !have_total) throw ModelError("truncated network table");
  net.total_ = total;

  // Marginals must agree with the joint table.
  std::uint64_t out_sum = 0;
  for (const auto &[v, n] : net.out_) out_sum += n;
  if (out_sum != net.total_) {
    throw ModelError("corrupt network table: output counts do not sum to total");
  }
  for (const std::string &c : net.inputs_) {
    std::uint64_t row_sum = 0;
    if (auto row = net.joint_.find(c); row != net.joint_.end()) {
      for (const auto &[v, n] : row->second) {
        if (n > net.out_count(v)) {
          throw ModelError("corrupt network table: joint exceeds marginal for " + c);
        }
        row_sum += n;
      }
    }
    if (row_sum != net.in_count(c)) {
      throw ModelError("corrupt network table: joint row does not match input count for " + c);
    }
  }
  return net;
}

std::string slot_unit(std::string_view frame, std::string_view slot) {
  std::string unit(frame);
  unit.push_back(':');
  unit += slot;
  return unit;
}

void declare_spec_outputs(const InterlinguaSpec &spec, Networks &nets) {
  for (const TypeName &leaf : spec.leaves()) {
    nets.symbol_to_type.declare_output(leaf);
    nets.slot_filler.declare_output(leaf);
    nets.symbols_to_type.declare_output(leaf);
    const LeafRule *rule = spec.leaf(leaf);
    for (const auto &[slot, type] : rule->slots) {
      nets.slot_prior.declare_output(slot_unit(rule->frame, slot));
    }
  }
  for (const std::string &st : spec.sentence_types()) {
    nets.symbols_to_sentence_type.declare_output(st);
  }
  nets.slot_prior.declare_input(std::string(kTrueUnit));
}

Networks make_networks(const InterlinguaSpec &spec, double lambda) {
  Networks nets{MINetwork(lambda), MINetwork(lambda), MINetwork(lambda),
                MINetwork(lambda), MINetwork(lambda)};
  declare_spec_outputs(spec, nets);
  return nets;
}

namespace {

constexpr const char *kNetNames[] = {"symbol-to-type", "slot-filler",
                                     "symbols-to-type",
                                     "symbols-to-sentence-type", "slot-prior"};

MINetwork *net_by_index(Networks &nets, int i) {
  switch (i) {
    case 0: return &nets.symbol_to_type;
    case 1: return &nets.slot_filler;
    case 2: return &nets.symbols_to_type;
    case 3: return &nets.symbols_to_sentence_type;
    default: return &nets.slot_prior;
  }
}

}  // namespace

std::string save_networks(const Networks &nets) {
  Networks copy = nets;
  std::ostringstream os;
  os << kModelMagic << '\t' << kModelVersion << '\n';
  for (int i = 0; i < 5; ++i) {
    os << "network\t" << kNetNames[i] << '\n';
    os << net_by_index(copy, i)->save();
  }
  return os.str();
}

Networks load_networks(std::string_view text) {
  std::size_t nl = text.find('\n');
  std::string_view first = text.substr(0, nl);
  auto header = split_tabs(first);
  if (header.size() != 2 || header[0] != kModelMagic) {
    throw ModelError("not a repair model file");
  }
  if (header[1] != std::to_string(kModelVersion)) {
    throw ModelError("model version " + std::string(header[1]) +
                     " is not supported");
  }
  Networks nets{MINetwork(), MINetwork(), MINetwork(), MINetwork(),
                MINetwork()};
  bool seen[5] = {false, false, false, false, false};
  std::size_t pos = nl == std::string_view::npos ? text.size() : nl + 1;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (line.empty()) {
      pos = eol + 1;
      continue;
    }
    auto f = split_tabs(line);
    if (f.size() != 2 || f[0] != "network") {
      throw ModelError("expected a network section header");
    }
    int index = -1;
    for (int i = 0; i < 5; ++i) {
      if (f[1] == kNetNames[i]) index = i;
    }
    if (index < 0) throw ModelError("unknown network " + std::string(f[1]));
    std::size_t body = eol + 1;
    std::size_t end = text.find("\nend\n", body);
    std::size_t stop;
    if (text.substr(body, 4) == "end\n") {
      stop = body + 4;
    } else if (end == std::string_view::npos) {
      throw ModelError("truncated network " + std::string(f[1]));
    } else {
      stop = end + 5;
    }
    *net_by_index(nets, index) = MINetwork::load(text.substr(body, stop - body));
    seen[index] = true;
    pos = stop;
  }
  for (int i = 0; i < 5; ++i) {
    if (!seen[i]) throw ModelError(std::string("model lacks network ") + kNetNames[i]);
  }
  return nets;
}

Networks load_networks_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_networks(buffer.str());
}

void save_networks_file(const Networks &nets, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write model file " + path);
  out << save_networks(nets);
}

}  // namespace repair
