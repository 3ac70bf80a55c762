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


// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>

#include "qnlp/ansatz.hpp"
#include "qnlp/circuit.hpp"
#include "qnlp/trainer.hpp"
#include "testutil.hpp"

namespace qnlp::acceptance {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

CompileConfig config_for(const test::SentenceFixture& f) {
  CompileConfig cfg;
  cfg.functional_words = test::load_lexicon(f.lexicon).functional_words;
  return cfg;
}

/// Functoriality of both pipelines on every fixture, 20 draws each.
Outcome functoriality() {
  const auto start = Clock::now();
  const auto fixtures = test::sentence_fixtures();
  std::set<std::string> names;
  double worst = 0.0;
  std::size_t checks = 0;
  bool snake_missing = false;
  for (const auto& f : fixtures) {
    names.insert(f.name);
    const Diagram d = test::fixture_diagram(f.name);
    const CompileConfig cfg = config_for(f);
    for (int draw = 0; draw < 20; ++draw) {
      const ParamStore p = test::random_bindings(d, cfg, 5000 + static_cast<std::uint64_t>(draw));
      const auto dev = test::functor_deviation(d, cfg, p);
      worst = std::max(worst, dev.bigraph);
      ++checks;
      if (!dev.snake) {
        snake_missing = true;
        continue;
      }
      worst = std::max(worst, *dev.snake);
      ++checks;
    }
  }
  const double elapsed = seconds_since(start);
  const bool coverage = fixtures.size() >= 10 && names.count("adjectives-adverb") &&
                        names.count("five-adjectives") && names.count("relative-pronoun") &&
                        names.count("cyclic");
  return {coverage && !snake_missing && worst <= 1e-9 && elapsed < 60.0,
          fmt("%zu sentences, %zu comparisons, max |delta| = %.3g, %.1f s", fixtures.size(), checks,
              worst, elapsed)};
}

/// Naive and minimized crossing counts on the five-adjective sentence.
Outcome crossing_counts() {
  const Diagram d = test::fixture_diagram("five-adjectives");
  const BigraphLayout rewritten = bigraph_rewrite(d);
  std::vector<bool> is_state(d.nodes.size(), false);
  for (auto n : rewritten.states()) is_state[n] = true;
  const BigraphLayout naive = layout_for_partition(d, is_state);
  CostConfig exhaustive, local;
  exhaustive.search = SearchMode::Exhaustive;
  local.search = SearchMode::Local;
  const std::size_t n = count_crossings(naive);
  const std::size_t e = count_crossings(minimize_crossings(naive, exhaustive));
  const std::size_t h = count_crossings(minimize_crossings(naive, local));
  return {n == 5 && e == 1 && h == 1 && count_crossings(rewritten) == 1,
          fmt("naive %zu, exhaustive %zu, heuristic %zu", n, e, h)};
}

/// Every wire runs from an output leg to an input leg or the boundary, each
/// leg is used once, and the process network evaluates to the diagram.
bool directed_only(const SnakeFreeDiagram& s) {
  std::set<ProcessPort> outs, ins;
  for (const auto& w : s.wires) {
    if (w.from.on_boundary() || w.from.process >= s.processes.size()) return false;
    if (w.from.leg >= s.processes[w.from.process].outputs.size()) return false;
    if (!outs.insert(w.from).second || !ins.insert(w.to).second) return false;
    if (w.to.on_boundary() ? w.to.leg >= s.boundary.size()
                           : w.to.process >= s.processes.size() ||
                                 w.to.leg >= s.processes[w.to.process].inputs.size()) {
      return false;
    }
  }
  std::size_t legs_out = 0, legs_in = s.boundary.size();
  for (const auto& p : s.processes) {
    legs_out += p.outputs.size();
    legs_in += p.inputs.size();
  }
  return outs.size() == legs_out && ins.size() == legs_in;
}

Outcome snake_free() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  std::size_t bell = 0, fixtures = 0;
  bool structural = true;
  for (const auto& f : test::sentence_fixtures()) {
    const Diagram d = test::fixture_diagram(f.name);
    const auto functional = test::load_lexicon(f.lexicon).functional_words;
    const SnakeFreeDiagram s = snake_removal(d, functional);
    structural = structural && directed_only(s);
    bell += bell_process_count(s);
    for (int draw = 0; draw < 5; ++draw) {
      const WordEmbedding emb = test::random_embedding(d, functional, rng);
      worst = std::max(worst, max_abs_diff(evaluate(s, emb), contract(d, emb)));
    }
    ++fixtures;
  }
  return {structural && worst <= 1e-12,
          fmt("%zu fixtures, directed wires only: %s, bell processes: %zu, max |delta| = %.3g", fixtures,
              structural ? "yes" : "no", bell, worst)};
}

Tensor matrix_of(const Circuit& c, const ParamStore& p) {
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  return simulate(c, p).reshaped({dim, dim});
}

Outcome ansatz_identities() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  auto random_params = [&](const AnsatzSpec& spec) {
    ParamStore p;
    for (const auto& s : spec.param_slots()) p.bind(s, angle(rng));
    return p;
  };
  const std::size_t order[] = {1, 0};
  double worst = 0.0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t l = 1; l <= 3; ++l) {
      for (int draw = 0; draw < 10; ++draw) {
        const AnsatzSpec iqp{AnsatzFamily::Iqp, n, l};
        const ParamStore pi = random_params(iqp);
        const Tensor u = matrix_of(build_unitary(iqp), pi);
        worst = std::max(worst, max_abs_diff(matrix_of(iqp_reordered(iqp, true, false), pi), u.permuted(order)));
        worst = std::max(worst, max_abs_diff(matrix_of(iqp_reordered(iqp, false, true), pi),
                                             matrix_of(reverse_outputs(build_unitary(iqp)), pi)));
        const AnsatzSpec cu{AnsatzFamily::CnotU3, n, l};
        const ParamStore pc = random_params(cu);
        worst = std::max(worst, max_abs_diff(matrix_of(cnotu3_mirrored(cu), pc),
                                             matrix_of(reverse_outputs(build_unitary(cu)), pc)));
      }
    }
  }
  return {worst <= 1e-12, fmt("270 comparisons, max |delta| = %.3g", worst)};
}

Outcome spider_deltas() {
  double worst = 0.0;
  std::size_t configs = 0;
  for (std::size_t n_in = 0; n_in <= 4; ++n_in) {
    for (std::size_t n_out = 0; n_in + n_out <= 4; ++n_out) {
      if (n_in + n_out == 0) continue;
      const Tensor got = simulate(spider_circuit(n_in, n_out, 1), {});
      worst = std::max(worst, max_abs_diff(got, Tensor::delta(n_in + n_out, 2)));
      ++configs;
    }
  }
  return {configs == 14 && worst <= 1e-12, fmt("%zu leg configurations, max |delta| = %.3g", configs, worst)};
}

Outcome parser_oracle() {
  const Lexicon lex({{"n", 2}, {"s", 2}}, "s",
                    {{"Alice", parse_type("n")},
                     {"loves", parse_type("n.r s n.l")},
                     {"runs", parse_type("n.r s")},
                     {"big", parse_type("n n.l")},
                     {"loudly", parse_type("s.r s")},
                     {"that", parse_type("n.r n s.l n")}});
  std::vector<std::string> vocab;
  for (const auto& [w, t] : lex.words()) vocab.push_back(w);
  std::size_t checked = 0, grammatical = 0, mismatches = 0;
  std::vector<std::string> tokens;
  std::function<void()> visit = [&] {
    if (!tokens.empty()) {
      const auto atoms = sentence_atoms(tokens, lex);
      const auto expected = test::brute_force_parse(atoms, "s");
      const auto got = parse(tokens, lex);
      if (got != expected || is_grammatical(tokens, lex) != expected.has_value()) ++mismatches;
      if (expected) ++grammatical;
      ++checked;
    }
    if (tokens.size() == 4) return;
    for (const auto& w : vocab) {
      tokens.push_back(w);
      visit();
      tokens.pop_back();
    }
  };
  visit();
  return {checked == 1554 && mismatches == 0,
          fmt("%zu sequences, %zu grammatical, %zu mismatches", checked, grammatical, mismatches)};
}

Circuit random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t gates) {
  Circuit c(n);
  std::uniform_int_distribution<int> kind(0, n > 1 ? 5 : 2), sym(0, 4);
  std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::bernoulli_distribution coin(0.5);
  auto pick_angle = [&] {
    const int s = sym(rng);
    return s == 4 ? Angle::literal(angle(rng)) : Angle::param("t" + std::to_string(s));
  };
  auto pick_pair = [&] {
    const std::size_t a = qubit(rng);
    std::size_t b = qubit(rng);
    while (b == a) b = qubit(rng);
    return std::pair{a, b};
  };
  for (std::size_t k = 0; k < gates; ++k) {
    switch (kind(rng)) {
      case 0: c.h(qubit(rng)); break;
      case 1: c.rx(qubit(rng), pick_angle()); break;
      case 2: c.rz(qubit(rng), pick_angle()); break;
      case 3: { auto [a, b] = pick_pair(); c.cnot(a, b); break; }
      case 4: { auto [a, b] = pick_pair(); c.crz(a, b, pick_angle()); break; }
      default: { auto [a, b] = pick_pair(); c.swap(a, b); break; }
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (coin(rng)) c.prep(q, coin(rng) ? Basis::Zero : Basis::Plus);
    if (coin(rng)) c.post(q, coin(rng) ? Basis::Zero : Basis::Plus);
  }
  return c;
}

Outcome gradient_check() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const double h = 1e-5;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit c = random_circuit(rng, 1 + trial % 3, 8);
    ParamStore p;
    for (int s = 0; s < 4; ++s) p.bind("t" + std::to_string(s), angle(rng));
    const std::string symbol = "t" + std::to_string(trial % 4);
    const Tensor grad = simulate_derivative(c, p, symbol);
    const double theta = p.bindings[symbol];
    p.bind(symbol, theta + h);
    const Tensor plus = simulate(c, p);
    p.bind(symbol, theta - h);
    const Tensor minus = simulate(c, p);
    for (std::size_t i = 0; i < grad.size(); ++i) {
      worst = std::max(worst, std::abs(grad[i] - (plus[i] - minus[i]) / (2 * h)));
    }
  }
  return {worst <= 1e-6, fmt("100 circuits, max |delta| = %.3g", worst)};
}

Outcome training() {
  const auto start = Clock::now();
  const Lexicon lex = test::load_lexicon("toy_lexicon.json").lexicon;
  const Corpus corpus = corpus_from_json(read_file(test::fixture("toy_corpus.json")), lex);
  TrainConfig tcfg;
  tcfg.seed = 7;
  tcfg.iterations = 200;
  const TrainResult r = train(corpus, ModelConfig{}, tcfg);
  const double elapsed = seconds_since(start);
  const TraceRow& first = r.trace.front();
  const TraceRow& last = r.trace.back();
  return {corpus.items.size() == 16 && last.loss < first.loss && last.accuracy >= 0.9 && elapsed < 120.0,
          fmt("%zu sentences, loss %.4f -> %.4f, accuracy %.4f, %.1f s", corpus.items.size(), first.loss,
              last.loss, last.accuracy, elapsed)};
}

Outcome resource_monotonicity() {
  std::size_t fixtures = 0, violations = 0;
  for (const auto& f : test::sentence_fixtures()) {
    const Diagram d = test::fixture_diagram(f.name);
    const CompileConfig cfg = config_for(f);
    std::vector<bool> is_state(d.nodes.size(), false);
    for (auto n : bigraph_rewrite(d).states()) is_state[n] = true;
    const BigraphLayout naive = layout_for_partition(d, is_state);
    const BigraphLayout best = minimize_crossings(naive, {});
    if (metrics(compile_bigraph(best, cfg).circuit).cnot_equiv_depth >
        metrics(compile_bigraph(naive, cfg).circuit).cnot_equiv_depth) {
      ++violations;
    }
    ++fixtures;
  }
  return {violations == 0, fmt("%zu fixtures, %zu depth increases", fixtures, violations)};
}

}  // namespace qnlp::acceptance

int main() {
  using namespace qnlp::acceptance;
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"functoriality", functoriality},
      {"crossing counts", crossing_counts},
      {"snake-free rewriting", snake_free},
      {"ansatz transpose and reversal", ansatz_identities},
      {"spider circuits", spider_deltas},
      {"parser oracle", parser_oracle},
      {"gradient check", gradient_check},
      {"training", training},
      {"resource monotonicity", resource_monotonicity},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d %s: %s (%s)\n", index, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
