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

// repair: command-line front end.
//
//   repair run <records> [--interactive | --gold <fs-file> | --oracle]
//              [--record ID] [--policy P] [--max-questions N]
//   repair eval <corpus> [--budgets 0,5,10,25] [--out table.tsv]
//   repair train <corpus> --model-out <file>
//   repair serve [--host H] [--port P]
//   repair synth --out <corpus> [--records N] [--seed K] [--sample]
//
// --spec, --model and --glosses default to the bundled data directory.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "repair/dialogue.h"
#include "repair/engine.h"
#include "repair/ilspec.h"
#include "repair/minet.h"
#include "repair/repairmem.h"
#include "repair/service.h"
#include "repair/synth.h"

#ifndef REPAIR_DATA_DIR
#define REPAIR_DATA_DIR "data"
#endif

namespace {

using namespace repair;

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct Common {
  std::string spec = std::string(REPAIR_DATA_DIR) + "/scheduling.spec";
  std::string model = std::string(REPAIR_DATA_DIR) + "/model.txt";
  std::string glosses = std::string(REPAIR_DATA_DIR) + "/glosses.tsv";
};

Networks load_model(const Common &c, const InterlinguaSpec &spec) {
  Networks nets = load_networks_file(c.model);
  declare_spec_outputs(spec, nets);
  return nets;
}

class StdinAnswerer : public Answerer {
 public:
  bool answer(const std::string &question, const Hypothesis &,
              const DynamicRepairMemory &) override {
    for (;;) {
      std::cerr << question << " [y/n] " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) return false;
      if (line == "y" || line == "yes") return true;
      if (line == "n" || line == "no") return false;
    }
  }
};

std::vector<int> parse_budgets(const std::string &text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<Policy> parse_policies(const std::string &text) {
  if (text == "all") return all_policies();
  std::vector<Policy> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(Policy::parse(item));
  return out;
}

Reinforcement parse_reinforcement(const std::string &text) {
  if (text == "off") return Reinforcement::kOff;
  if (text == "per-record") return Reinforcement::kPerRecord;
  if (text == "persistent") return Reinforcement::kPersistent;
  throw std::runtime_error("unknown reinforcement mode " + text);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Interactive repair of partial interlingua analyses"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&common](CLI::App *sub, bool model, bool glosses) {
    sub->add_option("--spec", common.spec, "interlingua specification");
    if (model) sub->add_option("--model", common.model, "network file");
    if (glosses) sub->add_option("--glosses", common.glosses, "gloss table");
  };

  // synth
  CLI::App *synth = app.add_subcommand("synth", "generate a synthetic corpus");
  add_common(synth, false, false);
  std::string synth_out;
  SynthOptions synth_options;
  bool with_sample = false;
  synth->add_option("--out", synth_out, "output corpus")->required();
  synth->add_option("--records", synth_options.records, "record count");
  synth->add_option("--seed", synth_options.seed, "random seed");
  synth->add_option("--id-prefix", synth_options.id_prefix, "record id prefix");
  synth->add_flag("--sample", with_sample, "start with the sample record");

  // train
  CLI::App *train = app.add_subcommand("train", "train networks from gold");
  add_common(train, false, false);
  std::string train_corpus;
  std::string train_out;
  double lambda = MINetwork::kDefaultLambda;
  train->add_option("corpus", train_corpus, "records with gold")->required();
  train->add_option("--model-out", train_out, "network file")->required();
  train->add_option("--lambda", lambda, "add-lambda smoothing");

  // run
  CLI::App *run = app.add_subcommand("run", "repair records");
  add_common(run, true, true);
  std::string run_corpus;
  std::string run_record;
  std::string run_policy = "meta";
  std::string run_save;
  bool run_oracle = false;
  bool run_interactive = false;
  std::string run_gold;
  RepairConfig run_config;
  run->add_option("records", run_corpus, "parser output records")->required();
  run->add_option("--record", run_record, "only this record id");
  run->add_option("--policy", run_policy, "meta or e.g. TTB");
  run->add_option("--max-questions", run_config.max_questions, "budget");
  run->add_flag("--combine", run_config.enable_combine, "allow combining");
  auto *interactive =
      run->add_flag("--interactive", run_interactive, "answer on the console");
  auto *gold_opt = run->add_option("--gold", run_gold,
                                   "answer from the structure in this file");
  auto *oracle_opt = run->add_flag("--oracle", run_oracle,
                                   "answer from each record's own gold");
  interactive->excludes(gold_opt)->excludes(oracle_opt);
  gold_opt->excludes(oracle_opt);
  run->add_option("--save-model", run_save, "write reinforced networks");

  // eval
  CLI::App *eval = app.add_subcommand("eval", "evaluate policies and budgets");
  add_common(eval, true, false);
  std::string eval_corpus;
  std::string eval_budgets = "0,5,10,25";
  std::string eval_policies = "all";
  std::string eval_reinforcement = "per-record";
  bool eval_combine = false;
  std::string eval_out;
  eval->add_option("corpus", eval_corpus, "records with gold")->required();
  eval->add_option("--out", eval_out, "write the table here");
  eval->add_option("--budgets", eval_budgets, "comma-separated budgets");
  eval->add_option("--policies", eval_policies, "all or comma-separated");
  eval->add_option("--reinforcement", eval_reinforcement,
                   "off, per-record or persistent");
  eval->add_flag("--combine", eval_combine, "allow combining");

  // serve
  CLI::App *serve = app.add_subcommand("serve", "run the session service");
  add_common(serve, true, true);
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host, "listen address");
  serve->add_option("--port", port, "listen port");

  CLI11_PARSE(app, argc, argv);

  try {
    InterlinguaSpec spec = InterlinguaSpec::load(read_file(common.spec));

    if (synth->parsed()) {
      std::vector<ParserOutput> corpus;
      if (with_sample) corpus.push_back(sample_record());
      for (ParserOutput &po : synthesize_corpus(spec, synth_options)) {
        corpus.push_back(std::move(po));
      }
      write_file(synth_out, write_corpus(corpus));
      std::cout << corpus.size() << " records written to " << synth_out
                << "\n";
      return 0;
    }

    if (train->parsed()) {
      Networks nets = make_networks(spec, lambda);
      train_from_gold(read_corpus_file(train_corpus), spec, nets);
      save_networks_file(nets, train_out);
      return 0;
    }

    if (run->parsed()) {
      Networks nets = load_model(common, spec);
      Glosses glosses = Glosses::load_file(common.glosses);
      run_config.policy = Policy::parse(run_policy);
      StdinAnswerer human;
      bool any = false;
      for (const ParserOutput &po : read_corpus_file(run_corpus)) {
        if (!run_record.empty() && po.id != run_record) continue;
        any = true;
        std::cout << "# " << po.id << "\n";
        SessionResult r;
        if (run_oracle || !run_gold.empty()) {
          std::optional<FeatureStructure> gold = po.gold;
          if (!run_gold.empty()) gold = read_fs(read_file(run_gold));
          if (!gold) throw std::runtime_error(po.id + " has no gold");
          OracleAnswerer oracle(*gold, spec);
          r = run_session(po, spec, nets, oracle, glosses, run_config);
        } else {
          r = run_session(po, spec, nets, human, glosses, run_config);
        }
        std::cout << transcript_text(r.transcript);
        std::cout << "ILT: " << print_fs(r.final_ilt) << "\n";
        std::cout << "Paraphrase: " << paraphrase(r.final_ilt, glosses) << "\n";
        if (r.accuracy_after) {
          std::printf("Accuracy: %.4f -> %.4f\n", *r.accuracy_before,
                      *r.accuracy_after);
        }
      }
      if (!any) throw std::runtime_error("no record " + run_record);
      if (!run_save.empty()) save_networks_file(nets, run_save);
      return 0;
    }

    if (eval->parsed()) {
      Networks nets = load_model(common, spec);
      EvalOptions options;
      options.budgets = parse_budgets(eval_budgets);
      options.policies = parse_policies(eval_policies);
      options.reinforcement = parse_reinforcement(eval_reinforcement);
      options.enable_combine = eval_combine;
      std::string table = eval_table(
          evaluate_corpus(read_corpus_file(eval_corpus), spec, nets, options));
      if (eval_out.empty()) {
        std::cout << table;
      } else {
        write_file(eval_out, table);
      }
      return 0;
    }

    if (serve->parsed()) {
      Networks nets = load_model(common, spec);
      Glosses glosses = Glosses::load_file(common.glosses);
      SessionService service(spec, std::move(nets), std::move(glosses));
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!serve_http(service, host, port)) {
        throw std::runtime_error("cannot listen on " + host + ":" +
                                 std::to_string(port));
      }
      return 0;
    }
  } catch (const std::exception &e) {
    std::cerr << "repair: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
