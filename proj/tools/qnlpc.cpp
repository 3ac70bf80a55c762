// Copyright 2026 The qnlpc Authors
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

// qnlpc: parse -> rewrite -> compile -> check / train, one artifact per stage.
// Exit codes: 0 success, 1 error, 2 sentence not grammatical (parse) or
// check failure (check).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnlp/ansatz.hpp"
#include "qnlp/bigraph.hpp"
#include "qnlp/compiler.hpp"
#include "qnlp/errors.hpp"
#include "qnlp/io.hpp"
#include "qnlp/snake.hpp"
#include "qnlp/trainer.hpp"

namespace {

using namespace qnlp;

constexpr double kCheckTolerance = 1e-9;

struct CompileFlags {
  std::string ansatz = "cnotu3";
  std::vector<std::string> layers;
  std::vector<std::string> qubits;
  std::vector<std::string> functional;
  std::string sharing = "pos";
  std::string mode = "linear";
};

struct CostFlags {
  double swap_cost = 3.0;
  double intra_cost = 6.0;
  bool block_reversal = false;
  std::string search = "auto";
};

void add_compile_flags(CLI::App* cmd, CompileFlags& f) {
  cmd->add_option("--ansatz", f.ansatz, "Ansatz family")
      ->check(CLI::IsMember({"cnotu3", "iqp"}));
  cmd->add_option("--layers", f.layers, "Layers per word arity, as arity=layers")
      ->allow_extra_args(false);
  cmd->add_option("--qubits", f.qubits, "Qubits per atom, as atom=n")
      ->allow_extra_args(false);
  cmd->add_option("--functional", f.functional, "Words compiled as spiders")
      ->allow_extra_args(false);
  cmd->add_option("--sharing", f.sharing, "Template sharing")
      ->check(CLI::IsMember({"pos", "word"}));
  cmd->add_option("--mode", f.mode, "Snake word processes")
      ->check(CLI::IsMember({"linear", "bent"}));
}

void add_cost_flags(CLI::App* cmd, CostFlags& f) {
  cmd->add_option("--swap-cost", f.swap_cost, "Cost per crossing");
  cmd->add_option("--intra-cost", f.intra_cost, "Cost per dragged edge");
  cmd->add_flag("--block-reversal", f.block_reversal, "Allow free word reversal");
  cmd->add_option("--search", f.search, "Crossing search")
      ->check(CLI::IsMember({"auto", "exhaustive", "local"}));
}

std::pair<std::string, std::size_t> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw FormatError("'" + text + "'", "expected key=value");
  }
  const std::string value = text.substr(eq + 1);
  char* end = nullptr;
  const unsigned long long n = std::strtoull(value.c_str(), &end, 10);
  if (*end != '\0') throw FormatError("'" + text + "'", "value is not a count");
  return {text.substr(0, eq), static_cast<std::size_t>(n)};
}

CompileConfig compile_config(const CompileFlags& f, const std::set<std::string>& functional) {
  CompileConfig cfg;
  cfg.family = parse_family(f.ansatz);
  for (const auto& l : f.layers) {
    const auto [arity, layers] = split_assignment(l);
    cfg.layers_by_arity[std::stoul(arity)] = layers;
  }
  for (const auto& q : f.qubits) {
    const auto [atom, n] = split_assignment(q);
    cfg.qubits[atom] = n;
  }
  cfg.functional_words = functional;
  cfg.functional_words.insert(f.functional.begin(), f.functional.end());
  cfg.sharing = f.sharing == "pos" ? Sharing::PerPos : Sharing::PerWord;
  cfg.process_mode = f.mode == "linear" ? ProcessMode::LinearMap : ProcessMode::BentState;
  return cfg;
}

CostConfig cost_config(const CostFlags& f, std::uint64_t seed) {
  CostConfig cfg;
  cfg.swap_cost = f.swap_cost;
  cfg.intra_cost = f.intra_cost;
  cfg.allow_block_reversal = f.block_reversal;
  cfg.search = f.search == "auto"         ? SearchMode::Auto
               : f.search == "exhaustive" ? SearchMode::Exhaustive
                                          : SearchMode::Local;
  cfg.seed = seed;
  return cfg;
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("QNLPC_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0') throw FormatError("QNLPC_SEED", "not an unsigned integer");
    return v;
  }
  return flag;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

/// Symbols bound in `params` become literal angles.
Circuit bind_literals(Circuit c, const ParamStore& params) {
  for (auto& g : c.gates) {
    if (g.parametric() && g.angle.symbolic() && params.bound(g.angle.symbol)) {
      g.angle = Angle::literal(params.value(g.angle));
    }
  }
  return c;
}

/// Largest deviation between a compiled circuit and the tensor oracle.
double deviation(const CompiledCircuit& cc, const Tensor& oracle, const ParamStore& params) {
  if (cc.boundary_perm.size() != oracle.rank()) {
    throw WiringMismatch("circuit outputs do not match the sentence boundary");
  }
  return max_abs_diff(simulate(cc.circuit, params), oracle.permuted(cc.boundary_perm));
}

int cmd_parse(const std::string& lexicon_path, const std::vector<std::string>& tokens,
              const std::string& out) {
  const auto lex = lexicon_from_json(read_file(lexicon_path));
  for (const auto& t : tokens) {
    if (!lex.lexicon.contains(t)) throw UnknownWord(t);
  }
  const auto reduction = parse(tokens, lex.lexicon);
  const int h = harmony(tokens, lex.lexicon);
  if (!reduction) {
    std::cout << "grammatical: no\nharmony: " << h << "\n";
    return 2;
  }
  emit(out, diagram_to_json(from_parse(tokens, lex.lexicon, *reduction)));
  std::cerr << "grammatical: yes\nharmony: " << h << "\n";
  return 0;
}

int cmd_rewrite(const std::string& method, const std::string& in, const CostFlags& cf,
                const std::vector<std::string>& functional, std::uint64_t seed,
                const std::string& out) {
  const Diagram d = diagram_from_json(read_file(in));
  if (method == "snake") {
    try {
      const auto s = snake_removal(d, {functional.begin(), functional.end()});
      emit(out, snake_to_json(s));
      std::cerr << "processes: " << s.processes.size() << "\nwires: " << s.wires.size()
                << "\nbell processes: " << bell_process_count(s) << "\n";
    } catch (const CyclicWiring& e) {
      std::cerr << "error: " << e.what() << " (try --method bigraph)\n";
      return 1;
    }
    return 0;
  }
  const CostConfig cost = cost_config(cf, seed);
  const BigraphLayout layout = bigraph_rewrite(d, cost);
  std::vector<bool> is_state(d.nodes.size(), false);
  for (auto n : layout.states()) is_state[n] = true;
  const BigraphLayout naive = layout_for_partition(d, is_state);
  emit(out, layout_to_json(layout, cost));
  std::cerr << "crossings: " << count_crossings(naive) << " -> " << count_crossings(layout)
            << "\ndragged: " << layout.dragged.size() << "\nwidth: " << layout_width(layout)
            << " (ideal " << ideal_width(layout) << ", +" << layout_width(layout) - ideal_width(layout)
            << ")\ncost: " << layout_cost(naive, cost) << " -> " << layout_cost(layout, cost) << "\n";
  return 0;
}

int cmd_compile(const std::string& in, const CompileFlags& flags, const std::string& params_path,
                const std::string& out, const std::string& qcir_out) {
  const std::string text = read_file(in);
  const CompileConfig cfg = compile_config(flags, {});
  CompiledCircuit cc;
  if (text.find("\"state_row\"") != std::string::npos) {
    cc = compile_bigraph(layout_from_json(text), cfg);
  } else if (text.find("\"processes\"") != std::string::npos) {
    cc = compile_snake(snake_from_json(text), cfg);
  } else {
    throw FormatError(in, "neither a bigraph layout nor a snake-free diagram");
  }
  if (!params_path.empty()) {
    cc.circuit = bind_literals(cc.circuit, params_from_json(read_file(params_path)));
  }
  emit(out, circuit_to_json(cc));
  if (!qcir_out.empty()) write_file(qcir_out, to_qcir(cc.circuit));
  const Metrics m = metrics(cc.circuit);
  std::cerr << "width: " << m.width << "\ndepth: " << m.depth << "\ncnot: " << m.cnot_count
            << "\ncrz: " << m.crz_count << "\nswap: " << m.swap_count
            << "\npostselect: " << m.postselect_count
            << "\ncnot-equivalent depth: " << m.cnot_equiv_depth << "\n";
  return 0;
}

struct CheckFlags {
  std::string lexicon;
  std::vector<std::string> tokens;
  std::string params;
  bool zero_params = false;
  std::string circuit;
  std::string circuit_method = "bigraph";
};

int cmd_check(const CheckFlags& cf, const CompileFlags& flags, const CostFlags& costf,
              std::uint64_t seed) {
  const auto lex = lexicon_from_json(read_file(cf.lexicon));
  const CompileConfig cfg = compile_config(flags, lex.functional_words);
  const CostConfig cost = cost_config(costf, seed);
  const Diagram d = sentence_diagram(cf.tokens, lex.lexicon);

  ParamStore params;
  if (!cf.params.empty()) params = params_from_json(read_file(cf.params));
  auto symbols = required_symbols(d, cfg, EmbeddingForm::State);
  const auto process_symbols = required_symbols(d, cfg, EmbeddingForm::Process);
  symbols.insert(process_symbols.begin(), process_symbols.end());
  if (cf.zero_params) {
    params.zero_missing(symbols);
  } else {
    params.randomize_missing(symbols, seed);
  }

  const Tensor state_oracle = contract(d, embedding_of(d, cfg, params, EmbeddingForm::State));
  double worst = 0.0;
  auto report = [&](const std::string& what, double delta) {
    std::cout << what << ": max |delta| = " << delta << "\n";
    worst = std::max(worst, delta);
  };

  if (!cf.circuit.empty()) {
    const CompiledCircuit given = circuit_from_json(read_file(cf.circuit));
    const Tensor oracle = cf.circuit_method == "snake"
                              ? contract(d, embedding_of(d, cfg, params, EmbeddingForm::Process))
                              : state_oracle;
    report("circuit", deviation(given, oracle, params));
  } else {
    report("bigraph", deviation(compile_bigraph(bigraph_rewrite(d, cost), cfg), state_oracle, params));
    try {
      const auto s = snake_removal(d, cfg.functional_words);
      const Tensor oracle = contract(d, embedding_of(d, cfg, params, EmbeddingForm::Process));
      report("snake", deviation(compile_snake(s, cfg), oracle, params));
      report("snake semantics", max_abs_diff(evaluate(s, embedding_of(d, cfg, params, EmbeddingForm::Process)), oracle));
    } catch (const CyclicWiring&) {
      std::cout << "snake: skipped (cyclic wiring)\n";
    }
  }
  const bool pass = worst <= kCheckTolerance;
  std::cout << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 2;
}

struct TrainFlags {
  std::string lexicon;
  std::string corpus;
  std::string method = "bigraph";
  std::string optimizer = "fd";
  double learning_rate = TrainConfig{}.learning_rate;
  std::size_t iterations = TrainConfig{}.iterations;
  std::string init;
  std::string params_out;
  std::string trace_out;
};

int cmd_train(const TrainFlags& tf, const CompileFlags& flags, const CostFlags& costf,
              std::uint64_t seed) {
  const auto lex = lexicon_from_json(read_file(tf.lexicon));
  const Corpus corpus = corpus_from_json(read_file(tf.corpus), lex.lexicon);
  ModelConfig model;
  model.compile = compile_config(flags, lex.functional_words);
  model.method = tf.method == "snake" ? Method::Snake : Method::Bigraph;
  model.cost = cost_config(costf, seed);
  TrainConfig tcfg;
  tcfg.optimizer = tf.optimizer == "spsa" ? Optimizer::Spsa : Optimizer::FiniteDifference;
  tcfg.learning_rate = tf.learning_rate;
  tcfg.iterations = tf.iterations;
  tcfg.seed = seed;
  ParamStore init;
  if (!tf.init.empty()) init = params_from_json(read_file(tf.init));
  const TrainResult r = train(corpus, model, tcfg, init);
  emit(tf.params_out, params_to_json(r.params));
  if (!tf.trace_out.empty()) write_file(tf.trace_out, trace_csv(r.trace));
  std::fprintf(stderr, "loss: %.6f -> %.6f\naccuracy: %.4f\n", r.trace.front().loss,
               r.trace.back().loss, r.trace.back().accuracy);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qnlpc: sentences to variational quantum circuits"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = TrainConfig{}.seed;
  app.add_option("--seed", seed, "Seed for every random choice (QNLPC_SEED overrides)")
      ->capture_default_str();

  std::string out;
  CompileFlags compile_flags;
  CostFlags cost_flags;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a sentence into a diagram");
  std::string lexicon;
  std::vector<std::string> tokens;
  parse_cmd->add_option("--lexicon", lexicon, "Lexicon JSON")->required();
  parse_cmd->add_option("tokens", tokens, "Sentence tokens")->required();
  parse_cmd->add_option("-o,--output", out, "Diagram JSON output (default stdout)");

  auto* rewrite_cmd = app.add_subcommand("rewrite", "Rewrite a diagram for circuit compilation");
  std::string method = "bigraph";
  std::string input;
  rewrite_cmd->add_option("--method", method, "Rewrite method")
      ->check(CLI::IsMember({"bigraph", "snake"}));
  rewrite_cmd->add_option("diagram", input, "Diagram JSON")->required();
  rewrite_cmd->add_option("-o,--output", out, "Rewritten JSON output (default stdout)");
  std::vector<std::string> rewrite_functional;
  rewrite_cmd->add_option("--functional", rewrite_functional, "Words rewritten as spiders")
      ->allow_extra_args(false);
  add_cost_flags(rewrite_cmd, cost_flags);

  auto* compile_cmd = app.add_subcommand("compile", "Compile a rewritten diagram to a circuit");
  std::string params_path, qcir_out;
  compile_cmd->add_option("rewritten", input, "Layout or snake-free JSON")->required();
  compile_cmd->add_option("--params", params_path, "Parameter JSON to bind");
  compile_cmd->add_option("--qcir", qcir_out, "Also write qcir text here");
  compile_cmd->add_option("-o,--output", out, "Circuit JSON output (default stdout)");
  add_compile_flags(compile_cmd, compile_flags);

  auto* check_cmd = app.add_subcommand("check", "Compare both pipelines with the tensor oracle");
  CheckFlags check_flags;
  check_cmd->add_option("--lexicon", check_flags.lexicon, "Lexicon JSON")->required();
  check_cmd->add_option("tokens", check_flags.tokens, "Sentence tokens")->required();
  check_cmd->add_option("--params", check_flags.params, "Parameter JSON");
  check_cmd->add_flag("--zero-params", check_flags.zero_params, "Unbound parameters are 0");
  check_cmd->add_option("--circuit", check_flags.circuit, "Check this circuit JSON instead");
  check_cmd->add_option("--circuit-method", check_flags.circuit_method, "Pipeline of --circuit")
      ->check(CLI::IsMember({"bigraph", "snake"}));
  add_compile_flags(check_cmd, compile_flags);
  add_cost_flags(check_cmd, cost_flags);

  auto* train_cmd = app.add_subcommand("train", "Train word parameters on a labeled corpus");
  TrainFlags train_flags;
  train_cmd->add_option("--lexicon", train_flags.lexicon, "Lexicon JSON")->required();
  train_cmd->add_option("corpus", train_flags.corpus, "Corpus JSON")->required();
  train_cmd->add_option("--method", train_flags.method, "Rewrite method")
      ->check(CLI::IsMember({"bigraph", "snake"}));
  train_cmd->add_option("--optimizer", train_flags.optimizer, "Optimizer")
      ->check(CLI::IsMember({"fd", "spsa"}));
  train_cmd->add_option("--lr", train_flags.learning_rate, "Learning rate")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--iterations", train_flags.iterations, "Optimizer steps");
  train_cmd->add_option("--init", train_flags.init, "Initial parameter JSON");
  train_cmd->add_option("-o,--params-out", train_flags.params_out,
                        "Trained parameter JSON (default stdout)");
  train_cmd->add_option("--trace", train_flags.trace_out, "Loss trace CSV");
  add_compile_flags(train_cmd, compile_flags);
  add_cost_flags(train_cmd, cost_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const std::uint64_t s = effective_seed(seed);
    if (*parse_cmd) return cmd_parse(lexicon, tokens, out);
    if (*rewrite_cmd) return cmd_rewrite(method, input, cost_flags, rewrite_functional, s, out);
    if (*compile_cmd) return cmd_compile(input, compile_flags, params_path, out, qcir_out);
    if (*check_cmd) return cmd_check(check_flags, compile_flags, cost_flags, s);
    if (*train_cmd) return cmd_train(train_flags, compile_flags, cost_flags, s);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
