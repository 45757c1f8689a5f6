// Copyright 2026 The EdgeGAE Authors
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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgegae/checkpoint.hpp"
#include "edgegae/errors.hpp"
#include "edgegae/io.hpp"
#include "edgegae/metrics.hpp"
#include "edgegae/oracle.hpp"
#include "edgegae/parallel.hpp"
#include "edgegae/rng.hpp"
#include "edgegae/search.hpp"
#include "edgegae/train.hpp"

namespace edgegae::cli {
namespace {

struct GenerateArgs {
  int n_min = 50;
  int n_max = 500;
  std::size_t total = 50000;
  std::uint64_t seed = 0;
  std::string oracle = "auto";
  int exact_cutoff = kExactCutoff;
  int restarts = 20;
  std::string out;
};

struct TrainArgs {
  std::string data;
  int epochs = 500;
  int batch = 32;
  double lr = 1e-3;
  int hidden = 64;
  int layers = 4;
  int knn = 25;
  int mlp_layers = 3;
  double pos_weight = 1.0;
  std::string sampling = "shuffle";
  std::uint64_t seed = 0;
  int checkpoint_every = 10;
  std::string resume;
  std::string log;
  std::string out;
};

struct SearchArgs {
  int samples = 200;
  std::string strategy = "roulette";
  int beam_width = 10;
  std::string two_opt = "on";
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
};

struct EvalArgs {
  std::string ckpt;
  std::string data;
  int knn = 0;
  double threshold = 0.5;
  std::string out;
};

struct SolveArgs {
  std::string ckpt;
  std::string instance;
  bool oracle = false;
  int exact_cutoff = kExactCutoff;
  std::string heatmap_out;
  std::string out;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void add_search_options(CLI::App& cmd, SearchArgs& args) {
  cmd.add_option("--samples", args.samples, "Roulette samples per instance");
  cmd.add_option("--strategy", args.strategy, "roulette or beam")
      ->check(CLI::IsMember({"roulette", "beam"}));
  cmd.add_option("--beam-width", args.beam_width, "Beam width");
  cmd.add_option("--two-opt", args.two_opt, "Apply 2-opt: on or off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd.add_option("--epsilon", args.epsilon, "Floor for heatmap scores");
  cmd.add_option("--seed", args.seed, "Search seed");
}

SearchConfig search_config(const SearchArgs& args) {
  SearchConfig config;
  config.strategy = parse_search_strategy(args.strategy);
  config.samples = args.samples;
  config.beam_width = args.beam_width;
  config.two_opt = args.two_opt == "on";
  config.epsilon_prob = args.epsilon;
  config.seed = args.seed;
  validate(config);
  return config;
}

// Writes every option of `cmd` as `key = value`, readable by --config.
void echo_config(const CLI::App& cmd, const std::string& artifact) {
  const std::string path = artifact + ".config";
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << "# edgegae " << cmd.get_name() << '\n';
  for (const CLI::Option* opt : cmd.get_options()) {
    const std::string& name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    std::string value;
    if (opt->get_expected_min() == 0) {
      value = opt->count() && opt->as<bool>() ? "true" : "false";
    } else if (opt->count()) {
      value = opt->as<std::string>();
    } else {
      value = opt->get_default_str();
    }
    file << name << " = " << value << '\n';
  }
  if (!file) throw IoError("cannot write '" + path + "'");
}

int cmd_generate(const GenerateArgs& args, unsigned threads, std::ostream& out) {
  DatasetSpec spec;
  spec.n_min = args.n_min;
  spec.n_max = args.n_max;
  spec.total = args.total;
  spec.seed = args.seed;
  spec.oracle = parse_oracle_mode(args.oracle);
  spec.exact_cutoff = args.exact_cutoff;
  spec.heuristic_restarts = args.restarts;
  const auto counts = allocate_counts(spec);
  const auto dataset = build_dataset(spec, threads);
  write_dataset(args.out, dataset);
  out << "wrote " << dataset.size() << " instances to " << args.out
      << " (n=" << spec.n_min << ": " << counts.front() << ", n="
      << spec.n_max << ": " << counts.back() << ")\n";
  return kOk;
}

int cmd_train(const TrainArgs& args, std::ostream& out) {
  const auto dataset = read_dataset(std::filesystem::path(args.data));
  std::optional<Trainer> trainer;
  if (!args.resume.empty()) {
    trainer.emplace(load_checkpoint(std::filesystem::path(args.resume)),
                    dataset);
  } else {
    ModelConfig model;
    model.layers = args.layers;
    model.hidden = args.hidden;
    model.knn = args.knn;
    model.mlp_layers = args.mlp_layers;
    TrainConfig config;
    config.batch_size = args.batch;
    config.lr = args.lr;
    config.sampling = parse_sampling_mode(args.sampling);
    config.pos_weight = args.pos_weight;
    config.seed = args.seed;
    trainer.emplace(EdgeGae(model, mix64(args.seed)), config, dataset);
  }
  if (args.epochs < 0) throw std::invalid_argument("epochs must be >= 0");

  const std::string log_path = args.log.empty() ? args.out + ".log.csv" : args.log;
  const bool resuming = trainer->epochs_done() > 0;
  std::ofstream log(log_path, std::ios::binary |
                                  (resuming ? std::ios::app : std::ios::trunc));
  if (!log) throw IoError("cannot write '" + log_path + "'");
  if (!resuming) log << "epoch,mean_loss,steps,sampling\n";
  const std::string sampling(to_string(trainer->config().sampling));

  while (trainer->epochs_done() < static_cast<std::uint64_t>(args.epochs)) {
    const EpochStats stats = trainer->run_epoch();
    log << stats.epoch << ',' << format_double(stats.mean_loss) << ','
        << stats.steps << ',' << sampling << '\n';
    log.flush();
    out << "epoch " << stats.epoch << '/' << args.epochs << " loss "
        << format_double(stats.mean_loss) << '\n';
    if (args.checkpoint_every > 0 &&
        stats.epoch % static_cast<std::uint64_t>(args.checkpoint_every) == 0 &&
        stats.epoch < static_cast<std::uint64_t>(args.epochs)) {
      save_checkpoint(std::filesystem::path(args.out + ".epoch" +
                                            std::to_string(stats.epoch)),
                      trainer->model(), trainer->meta());
    }
  }
  save_checkpoint(std::filesystem::path(args.out), trainer->model(),
                  trainer->meta());
  if (!log) throw IoError("cannot write '" + log_path + "'");
  out << "saved " << args.out << '\n';
  return kOk;
}

int cmd_eval(const EvalArgs& args, const SearchArgs& search, unsigned threads,
             std::ostream& out) {
  const auto config = search_config(search);
  const auto dataset = read_dataset(std::filesystem::path(args.data));
  const auto checkpoint = load_checkpoint(std::filesystem::path(args.ckpt));
  EvalOptions options;
  options.threads = threads;
  options.f1_threshold = args.threshold;
  if (args.knn > 0) options.knn = args.knn;
  const EvalReport report = evaluate(checkpoint.model, dataset, config, options);
  write_report_csv(std::filesystem::path(args.out), report);
  const Aggregate& all = report.overall;
  out << "instances " << all.count << " mean_f1 " << format_double(all.mean_f1)
      << " mean_auc "
      << (all.auc_count ? format_double(all.mean_auc) : std::string("NA"))
      << " mean_gap_percent " << format_double(all.mean_gap) << '\n';
  return kOk;
}

int cmd_solve(const SolveArgs& args, const SearchArgs& search, unsigned threads,
              std::ostream& out) {
  const auto config = search_config(search);
  const auto checkpoint = load_checkpoint(std::filesystem::path(args.ckpt));
  const auto instances = read_instances(std::filesystem::path(args.instance));
  std::ofstream solution(args.out, std::ios::binary | std::ios::trunc);
  if (!solution) throw IoError("cannot write '" + args.out + "'");
  std::ofstream heatmaps;
  if (!args.heatmap_out.empty()) {
    heatmaps.open(args.heatmap_out, std::ios::binary | std::ios::trunc);
    if (!heatmaps) throw IoError("cannot write '" + args.heatmap_out + "'");
  }
  solution << "# id length gap_percent tour\n";
  for (const Instance& instance : instances) {
    const SparseGraph graph =
        knn_sparsify(instance, checkpoint.model.config().knn);
    const Heatmap heatmap = predict_heatmap(checkpoint.model, graph);
    if (heatmaps.is_open()) write_heatmap(heatmaps, heatmap);
    SearchConfig per_instance = config;
    per_instance.seed = derive_seed(config.seed, instance.id);
    const SolveResult result = solve(instance, heatmap, per_instance, threads);

    std::string gap = "NA";
    if (args.oracle) {
      if (instance.n() <= args.exact_cutoff) {
        const Tour best = held_karp(instance, args.exact_cutoff);
        gap = format_double(optimal_gap(result.tour.length, best.length));
      } else {
        const Tour best = heuristic_oracle(instance, 20, mix64(instance.id));
        gap = "~" + format_double(optimal_gap(result.tour.length, best.length));
      }
    }
    solution << instance.id << ' ' << format_double(result.tour.length) << ' '
             << gap;
    for (int v : result.tour.order) solution << ' ' << v;
    solution << '\n';
    out << "instance " << instance.id << " length "
        << format_double(result.tour.length) << " gap " << gap << '\n';
  }
  if (!solution) throw IoError("cannot write '" + args.out + "'");
  return kOk;
}

}  // namespace

std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(number, "expected 'key = value' in " + path);
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (key.empty()) throw ParseError(number, "empty key in " + path);
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"EdgeGAE: learned edge heatmaps for the travelling salesman"};
  app.name("edgegae");
  app.require_subcommand(1);
  app.option_defaults()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
      ->always_capture_default();

  unsigned threads = default_threads(1);
  std::string config_file;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file,
                    "File of 'key = value' lines applied before flags");
    cmd->add_option("--threads", threads,
                    "Worker threads (default: $EDGEGAE_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  };

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Build a labelled dataset");
  generate->add_option("--n-min", gen.n_min, "Smallest city count");
  generate->add_option("--n-max", gen.n_max, "Largest city count");
  generate->add_option("--total", gen.total, "Number of instances");
  generate->add_option("--seed", gen.seed, "Master seed");
  generate->add_option("--oracle", gen.oracle, "exact, heuristic or auto")
      ->check(CLI::IsMember({"exact", "heuristic", "auto"}));
  generate->add_option("--exact-cutoff", gen.exact_cutoff,
                       "Largest n solved by Held-Karp");
  generate->add_option("--restarts", gen.restarts,
                       "Restarts for the heuristic oracle");
  generate->add_option("--out", gen.out, "Output dataset file")->required();
  add_common(generate);

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train a model");
  train->add_option("--data", tr.data, "Training dataset")->required();
  train->add_option("--epochs", tr.epochs, "Total epochs");
  train->add_option("--batch", tr.batch, "Batch size");
  train->add_option("--lr", tr.lr, "Adam learning rate");
  train->add_option("--hidden", tr.hidden, "Hidden dimension H");
  train->add_option("--layers", tr.layers, "Encoder layers L");
  train->add_option("--knn", tr.knn, "Neighbours per city k");
  train->add_option("--mlp-layers", tr.mlp_layers, "Decoder MLP depth");
  train->add_option("--pos-weight", tr.pos_weight, "BCE weight of positives");
  train->add_option("--sampling", tr.sampling, "shuffle or active")
      ->check(CLI::IsMember({"shuffle", "active"}));
  train->add_option("--seed", tr.seed, "Initialisation and batch seed");
  train->add_option("--checkpoint-every", tr.checkpoint_every,
                    "Epochs between intermediate checkpoints (0 = none)");
  train->add_option("--resume", tr.resume,
                    "Continue from this checkpoint")->check(CLI::ExistingFile);
  train->add_option("--log", tr.log, "Loss log (default: <out>.log.csv)");
  train->add_option("--out", tr.out, "Final checkpoint path")->required();
  add_common(train);

  EvalArgs ev;
  SearchArgs ev_search;
  auto* eval = app.add_subcommand("eval", "Evaluate a model on a dataset");
  eval->add_option("--ckpt", ev.ckpt, "Checkpoint")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--data", ev.data, "Labelled dataset")->required();
  eval->add_option("--knn", ev.knn, "Expected k (0 = model's own)");
  eval->add_option("--f1-threshold", ev.threshold, "Positive threshold for F1");
  add_search_options(*eval, ev_search);
  eval->add_option("--out", ev.out, "Report CSV")->required();
  add_common(eval);

  SolveArgs so;
  SearchArgs so_search;
  auto* solve_cmd = app.add_subcommand("solve", "Solve instances with a model");
  solve_cmd->add_option("--ckpt", so.ckpt, "Checkpoint")
      ->required()
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--instance", so.instance, "Coordinates file")
      ->required();
  solve_cmd->add_flag("--oracle", so.oracle, "Also report the optimal gap");
  solve_cmd->add_option("--exact-cutoff", so.exact_cutoff,
                        "Largest n checked with Held-Karp");
  solve_cmd->add_option("--heatmap-out", so.heatmap_out,
                        "Write predicted heatmaps here");
  add_search_options(*solve_cmd, so_search);
  solve_cmd->add_option("--out", so.out, "Solution file")->required();
  add_common(solve_cmd);

  // Config-file entries go right after the command name so flags override.
  std::vector<std::string> argv = args;
  try {
    for (std::size_t i = 1; i < argv.size(); ++i) {
      std::string path;
      if (argv[i] == "--config" && i + 1 < argv.size()) {
        path = argv[i + 1];
      } else if (argv[i].rfind("--config=", 0) == 0) {
        path = argv[i].substr(9);
      }
      if (!path.empty()) {
        const auto tokens = config_tokens(path);
        argv.insert(argv.begin() + 1, tokens.begin(), tokens.end());
        break;
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) {
      const int code = cmd_generate(gen, threads, out);
      echo_config(*generate, gen.out);
      return code;
    }
    if (*train) {
      const int code = cmd_train(tr, out);
      echo_config(*train, tr.out);
      return code;
    }
    if (*eval) {
      const int code = cmd_eval(ev, ev_search, threads, out);
      echo_config(*eval, ev.out);
      return code;
    }
    if (*solve_cmd) {
      const int code = cmd_solve(so, so_search, threads, out);
      echo_config(*solve_cmd, so.out);
      return code;
    }
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace edgegae::cli
