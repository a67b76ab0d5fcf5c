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

#include "repair/synth.h"

#include <algorithm>
#include <stdexcept>

namespace repair {

std::uint64_t SynthRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SynthRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::size_t SynthRng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  return static_cast<std::size_t>(uniform() * static_cast<double>(n));
}

namespace {

std::string bare(const std::string &frame) {
  return !frame.empty() && frame[0] == '*' ? frame.substr(1) : frame;
}

bool has_content(const FeatureStructure &fs) {
  for (const Slot &s : fs.slots()) {
    if (!is_distinguished_slot(s.name)) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> segment_symbols(const FeatureStructure &fs) {
  std::vector<std::string> out;
  for (const auto &[path, node] : constituent_paths(fs)) {
    if (auto frame = node.frame()) out.push_back(bare(*frame) + "-phrase");
    for (const Slot &s : node.slots()) {
      if (!is_distinguished_slot(s.name) && s.value.is_atom()) {
        out.push_back(s.name + "-word");
      }
    }
  }
  return out;
}

std::vector<std::string> segment_words(const FeatureStructure &fs) {
  std::vector<std::string> out;
  for (const auto &[path, node] : constituent_paths(fs)) {
    if (auto frame = node.frame()) out.push_back(bare(*frame));
    for (const Slot &s : node.slots()) {
      if (is_distinguished_slot(s.name) || !s.value.is_atom()) continue;
      const Atom &a = s.value.atom();
      out.push_back(a.is_integer() ? std::to_string(a.integer_value())
                                   : a.text());
    }
  }
  return out;
}

// --- gold structures ----------------------------------------------------------

namespace {

const char *const kTopics[] = {"budget", "hiring", "review", "launch"};
const char *const kNoiseWords[] = {"be", "okay", "uh", "though", "well"};

class GoldBuilder {
 public:
  GoldBuilder(const InterlinguaSpec &spec, const SynthOptions &options,
              SynthRng &rng)
      : spec_(spec), options_(options), rng_(rng) {}

  FeatureStructure fill(const TypeName &leaf, int depth) {
    const LeafRule *rule = spec_.leaf(leaf);
    FeatureStructure fs;
    fs.set(kFrameSlot, Atom::symbol(rule->frame));
    bool structural_filled = false;
    for (const auto &[slot, type] : rule->slots) {
      bool structural = InterlinguaSpec::is_structural_name(type);
      if (structural && depth >= options_.max_depth) continue;
      double p = rate(slot) * (depth == 0 ? 1.0 : 0.5);
      if (!rng_.chance(p)) continue;
      fs.set(slot, value(type, depth));
      structural_filled = structural_filled || structural;
    }
    if (depth == 0 && !structural_filled) {
      for (const auto &[slot, type] : rule->slots) {
        if (InterlinguaSpec::is_structural_name(type)) {
          fs.set(slot, value(type, depth));
          break;
        }
      }
    }
    return fs;
  }

  TypeName pick_leaf(const std::vector<TypeName> &leaves) {
    // Weight 1/(i+1): earlier-declared leaves are the common ones.
    double total = 0.0;
    for (std::size_t i = 0; i < leaves.size(); ++i) total += 1.0 / (i + 1.0);
    double r = rng_.uniform() * total;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      r -= 1.0 / (i + 1.0);
      if (r < 0) return leaves[i];
    }
    return leaves.back();
  }

 private:
  double rate(const std::string &slot) const {
    auto it = options_.slot_rate.find(slot);
    return it == options_.slot_rate.end() ? options_.default_slot_rate
                                          : it->second;
  }

  SlotValue value(const TypeName &type, int depth) {
    if (InterlinguaSpec::is_structural_name(type)) {
      return fill(pick_leaf(spec_.leaves_under(type)), depth + 1);
    }
    const AtomicClass *cls = spec_.atomic_class(type);
    if (cls->any_integer) {
      return Atom::integer(1 + static_cast<long long>(rng_.below(28)));
    }
    if (cls->any_atom) return Atom::symbol(kTopics[rng_.below(4)]);
    auto it = cls->members.begin();
    std::advance(it, rng_.below(cls->members.size()));
    return *it;
  }

  const InterlinguaSpec &spec_;
  const SynthOptions &options_;
  SynthRng &rng_;
};

}  // namespace

FeatureStructure random_gold(const InterlinguaSpec &spec,
                             const SynthOptions &options, SynthRng &rng) {
  GoldBuilder builder(spec, options, rng);
  std::vector<TypeName> tops = spec.leaves_under(spec.root());
  TypeName leaf = tops[rng.below(tops.size())];
  const std::string &frame = spec.leaf(leaf)->frame;

  std::string st;
  auto pref = options.preferred_sentence_type.find(frame);
  if (pref != options.preferred_sentence_type.end() &&
      spec.is_sentence_type(pref->second) &&
      rng.chance(options.preferred_sentence_type_rate)) {
    st = pref->second;
  } else {
    const auto &all = spec.sentence_types();
    st = all[rng.below(all.size())];
  }
  FeatureStructure gold;
  gold.set(kSentenceTypeSlot, Atom::symbol(st));
  FeatureStructure body = builder.fill(leaf, 0);
  for (const Slot &s : body.slots()) gold.set(s.name, s.value);
  return gold;
}

// --- damage -------------------------------------------------------------------

namespace {

class Damager {
 public:
  Damager(const InterlinguaSpec &spec, const SynthOptions &options,
          SynthRng &rng)
      : spec_(spec), options_(options), rng_(rng) {}

  std::vector<std::string> symbols(const FeatureStructure &fs) {
    std::vector<std::string> all = segment_symbols(fs);
    std::vector<std::string> kept;
    for (const std::string &s : all) {
      if (!rng_.chance(options_.symbol_dropout)) kept.push_back(s);
    }
    if (kept.empty() && !all.empty()) kept.push_back(all[rng_.below(all.size())]);
    return kept;
  }

  SkippedSegment segment(const FeatureStructure &fs) {
    return SkippedSegment{fs, symbols(fs), segment_words(fs)};
  }

  // A slot filler split off from its frame.
  SkippedSegment split(const FeatureStructure &value) {
    std::optional<std::string> frame = value.frame();
    if (frame && !has_content(value) && rng_.chance(options_.bare_word_rate)) {
      std::string w = bare(*frame);
      FeatureStructure fs;
      fs.set("value", Atom::symbol(w));
      return SkippedSegment{fs, {w}, {w}};
    }
    return segment(value);
  }

  // Removes structural top-level slots from `fs` at the split rate (at least
  // one when `force`), returning their segments.
  std::vector<SkippedSegment> peel(FeatureStructure &fs, bool force) {
    std::vector<std::string> names;
    for (const Slot &s : fs.slots()) {
      if (!is_distinguished_slot(s.name) && s.value.is_structure()) {
        names.push_back(s.name);
      }
    }
    std::vector<std::string> chosen;
    for (const std::string &n : names) {
      if (rng_.chance(options_.split_rate)) chosen.push_back(n);
    }
    if (force && chosen.empty() && !names.empty()) {
      chosen.push_back(names[rng_.below(names.size())]);
    }
    std::vector<SkippedSegment> out;
    for (const std::string &n : chosen) {
      out.push_back(split(fs.find(n)->structure()));
      fs.erase(n);
    }
    return out;
  }

  void add_noise(std::vector<SkippedSegment> &skipped) {
    if (rng_.chance(options_.noise_word_rate)) {
      std::string w = kNoiseWords[rng_.below(5)];
      FeatureStructure fs;
      fs.set("value", Atom::symbol(w));
      insert_somewhere(skipped, SkippedSegment{fs, {w}, {w}});
    }
    if (!options_.noise_fragments.empty() &&
        rng_.chance(options_.noise_fragment_rate)) {
      FeatureStructure fs = read_fs(
          options_.noise_fragments[rng_.below(options_.noise_fragments.size())]);
      insert_somewhere(skipped, segment(fs));
    }
  }

  // Stray atomic slot on the skipped top-level frame.
  void add_spurious_slot(SkippedSegment &seg) {
    if (options_.spurious_slots.empty() ||
        !rng_.chance(options_.spurious_slot_rate)) {
      return;
    }
    const auto &[slot, value] =
        options_.spurious_slots[rng_.below(options_.spurious_slots.size())];
    if (seg.fs.has(slot)) return;
    seg.fs.set(slot, Atom::symbol(value));
    seg.symbols.push_back(slot + "-word");
    seg.words.push_back(value);
  }

  void insert_somewhere(std::vector<SkippedSegment> &skipped,
                        SkippedSegment seg) {
    std::size_t at = rng_.below(skipped.size() + 1);
    skipped.insert(skipped.begin() + static_cast<std::ptrdiff_t>(at),
                   std::move(seg));
  }

  std::vector<TypeName> compatible_frames(const FeatureStructure &gold,
                                          const TypeName &leaf) {
    std::vector<TypeName> out;
    for (const TypeName &other : spec_.leaves_under(spec_.root())) {
      if (other == leaf) continue;
      FeatureStructure moved = gold;
      moved.set(kFrameSlot, Atom::symbol(spec_.leaf(other)->frame));
      if (spec_.conforms(moved, other)) out.push_back(other);
    }
    return out;
  }

 private:
  const InterlinguaSpec &spec_;
  const SynthOptions &options_;
  SynthRng &rng_;
};

FeatureStructure without_bookkeeping(const FeatureStructure &fs) {
  FeatureStructure out = fs;
  out.erase(kSentenceTypeSlot);
  out.erase(kSpeechActSlot);
  return out;
}

}  // namespace

ParserOutput damage(const FeatureStructure &gold, const InterlinguaSpec &spec,
                    const SynthOptions &options, SynthRng &rng,
                    std::string id) {
  Damager d(spec, options, rng);
  ParserOutput po;
  po.id = std::move(id);
  po.gold = gold;

  std::vector<std::string> structural;
  for (const Slot &s : gold.slots()) {
    if (!is_distinguished_slot(s.name) && s.value.is_structure()) {
      structural.push_back(s.name);
    }
  }
  std::optional<TypeName> leaf = spec.leaf_type_of(gold);

  double r = rng.uniform();
  double nil_edge = options.complete_rate + options.nil_rate;
  double fragment_edge = nil_edge + options.fragment_rate;
  double wrong_edge = fragment_edge + options.wrong_frame_rate;

  if (r < options.complete_rate || structural.empty() || !leaf) {
    po.partial = gold;
    po.partial_symbols = segment_symbols(gold);
    po.quality = ParseQuality::kGood;
    po.parsed_completely = true;
    po.utterance = segment_words(gold);
    return po;
  }
  if (r < nil_edge) {
    po.utterance = segment_words(gold);
    return po;
  }

  std::vector<TypeName> others;
  if (r >= fragment_edge && r < wrong_edge) {
    others = d.compatible_frames(gold, *leaf);
  }

  if (r < fragment_edge || (r < wrong_edge && others.empty())) {
    const std::string &slot = structural[rng.below(structural.size())];
    FeatureStructure partial;
    partial.set(kSentenceTypeSlot, Atom::symbol("*fragment"));
    partial.set(slot, *gold.find(slot));
    FeatureStructure rest = without_bookkeeping(gold);
    rest.erase(slot);
    std::vector<SkippedSegment> splits = d.peel(rest, false);
    po.partial_symbols = d.symbols(partial);
    po.partial = std::move(partial);
    po.skipped.push_back(d.segment(rest));
    d.add_spurious_slot(po.skipped.back());
    for (SkippedSegment &s : splits) po.skipped.push_back(std::move(s));
    po.quality = ParseQuality::kBad;
  } else {
    FeatureStructure partial = gold;
    if (r < wrong_edge) {
      const TypeName &other = others[rng.below(others.size())];
      partial.set(kFrameSlot, Atom::symbol(spec.leaf(other)->frame));
      po.quality = ParseQuality::kBad;
    } else {
      po.quality = ParseQuality::kGood;
    }
    po.skipped = d.peel(partial, true);
    po.partial_symbols = d.symbols(partial);
    po.partial = std::move(partial);
  }
  d.add_noise(po.skipped);

  po.utterance = segment_words(*po.partial);
  for (const SkippedSegment &s : po.skipped) {
    po.utterance.insert(po.utterance.end(), s.words.begin(), s.words.end());
  }
  return po;
}

std::vector<ParserOutput> synthesize_corpus(const InterlinguaSpec &spec,
                                            const SynthOptions &options) {
  SynthRng rng(options.seed);
  std::vector<ParserOutput> out;
  out.reserve(options.records);
  for (std::size_t i = 0; i < options.records; ++i) {
    FeatureStructure gold = random_gold(spec, options, rng);
    out.push_back(damage(gold, spec, options, rng,
                         options.id_prefix + "-" + std::to_string(i + 1)));
  }
  return out;
}

ParserOutput sample_record() {
  ParserOutput po;
  po.id = "sample";
  po.utterance = {"tuesday", "afternoon", "the", "ninth", "be",
                  "okay",    "for",       "me",  "that"};
  po.partial = read_fs(
      "((sentence-type *fragment)"
      " (when ((frame *simple-time) (time-of-day afternoon)"
      " (day-of-week tuesday) (day 9))))");
  po.partial_symbols = segment_symbols(*po.partial);
  FeatureStructure be = read_fs("((value be))");
  FeatureStructure free_chunk =
      read_fs("((frame *free) (who ((frame *i))) (good-bad +))");
  FeatureStructure that = read_fs("((frame *that))");
  po.skipped.push_back(SkippedSegment{be, {"be"}, {"be"}});
  po.skipped.push_back(SkippedSegment{free_chunk, segment_symbols(free_chunk),
                                     {"okay", "for", "me"}});
  po.skipped.push_back(SkippedSegment{that, segment_symbols(that), {"that"}});
  po.quality = ParseQuality::kBad;
  po.gold = read_fs(
      "((sentence-type *state) (frame *free) (who ((frame *i)))"
      " (when ((frame *simple-time) (time-of-day afternoon)"
      " (day-of-week tuesday) (day 9))))");
  return po;
}

}  // namespace repair
