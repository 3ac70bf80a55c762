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


#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qnlp/errors.hpp"
#include "qnlp/trainer.hpp"
#include "testutil.hpp"

namespace qnlp {
namespace test_trainer {

Corpus toy_corpus() {
  const Lexicon lex = test::load_lexicon("toy_lexicon.json").lexicon;
  return corpus_from_json(read_file(test::fixture("toy_corpus.json")), lex);
}

/// Class-0 probability through the tensor oracle: contract the parsed
/// diagram with the classical word embedding.
double oracle_probability(const std::vector<std::string>& tokens, const Lexicon& lex,
                          const CompileConfig& cfg, const ParamStore& p, double eps) {
  const Diagram d = sentence_diagram(tokens, lex);
  const Tensor v = contract(d, embedding_of(d, cfg, p, EmbeddingForm::State));
  const double a0 = std::norm(v[0]), a1 = std::norm(v[1]);
  return a0 / (a0 + a1 + eps);
}

SCENARIO("Class probabilities and cross-entropy") {
  const double eps = 1e-12;
  REQUIRE(class_probability(Tensor({2}, {1.0, 0.0}), eps) == Catch::Approx(1.0).margin(1e-11));
  REQUIRE(class_probability(Tensor({2}, {std::sqrt(0.5), std::sqrt(0.5)}), eps) ==
          Catch::Approx(0.5).margin(1e-11));
  REQUIRE(class_probability(Tensor({2}, {0.0, 0.0}), eps) == 0.0);
  REQUIRE_THROWS_AS(class_probability(Tensor({4}), eps), DimensionMismatch);
  REQUIRE(cross_entropy(0.5, 0, eps) == Catch::Approx(std::log(2.0)));
  REQUIRE(cross_entropy(0.5, 1, eps) == Catch::Approx(std::log(2.0)));
  REQUIRE(cross_entropy(1.0, 0, eps) <= 1e-6);
  REQUIRE(cross_entropy(0.0, 1, eps) <= 1e-6);
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double p = u(rng);
    REQUIRE(cross_entropy(p, 0, eps) == Catch::Approx(cross_entropy(1.0 - p, 1, eps)).epsilon(1e-9));
  }
}

SCENARIO("Predictions match the tensor oracle") {
  const Lexicon lex = test::load_lexicon("lexicon.json").lexicon;
  const auto tokens = test::words("Alice loves Bob");
  const ModelConfig model;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ParamStore p;
    p.randomize_missing(sentence_symbols(tokens, lex, model), seed);
    const double got = predict(tokens, lex, model, p);
    REQUIRE(got > 0.0);
    REQUIRE(got < 1.0);
    REQUIRE(std::abs(got - oracle_probability(tokens, lex, model.compile, p, 1e-12)) <= 1e-9);
  }
  GIVEN("An ungrammatical sentence") {
    REQUIRE_THROWS_AS(predict(test::words("Alice Bob"), lex, model, {}), NotGrammatical);
  }
  GIVEN("A post-selection that annihilates the sentence") {
    // Alice's effect rotated by Rx(pi) is orthogonal to the |0> it meets.
    ParamStore p;
    const auto symbols = sentence_symbols(tokens, lex, model);
    p.zero_missing(symbols);
    const std::string flip = word_symbol("Alice", AnsatzSpec{AnsatzFamily::CnotU3, 1, 1}.slot(1));
    REQUIRE(symbols.count(flip));
    p.bind(flip, M_PI);
    REQUIRE_THROWS_AS(predict(tokens, lex, model, p), ZeroNorm);
  }
}

SCENARIO("Corpus loss") {
  const Corpus corpus = toy_corpus();
  const ModelConfig model;
  const CompiledCorpus compiled(corpus, model);
  GIVEN("Random parameters") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      ParamStore p;
      p.randomize_missing(compiled.symbols(), seed);
      double want = 0.0;
      for (const auto& item : corpus.items) {
        const double q = oracle_probability(item.tokens, corpus.lexicon, model.compile, p, 1e-12);
        want += cross_entropy(q, item.label, 1e-12);
      }
      want /= static_cast<double>(corpus.items.size());
      REQUIRE(std::abs(loss(corpus, model, p) - want) <= 1e-9);
      REQUIRE(std::abs(compiled.loss(p, 1e-12) - want) <= 1e-9);
    }
  }
  GIVEN("Every prediction at one half") {
    // Verbs put their sentence qubit through Rx(pi/2) in the last layer;
    // every other angle is zero.
    ParamStore p;
    const std::string last_rx = AnsatzSpec{AnsatzFamily::CnotU3, 2, 2}.slot(7);
    for (const auto& s : compiled.symbols()) {
      const bool verb_rx = s.ends_with("@" + last_rx);
      p.bind(s, verb_rx ? M_PI / 2 : 0.0);
    }
    for (double q : compiled.probabilities(p, 1e-12)) REQUIRE(q == Catch::Approx(0.5).margin(1e-9));
    REQUIRE(compiled.loss(p, 1e-12) == Catch::Approx(std::log(2.0)).margin(1e-9));
  }
  GIVEN("Flipped labels and complemented predictions") {
    ParamStore p;
    p.randomize_missing(compiled.symbols(), 3);
    double flipped = 0.0;
    for (std::size_t i = 0; i < compiled.size(); ++i) {
      // An X on the sentence qubit swaps the two amplitudes.
      Circuit c = compiled.circuit(i);
      c.rx(c.outputs().at(0), Angle::literal(M_PI));
      const double q = class_probability(simulate(c, p), 1e-12);
      flipped += cross_entropy(q, 1 - compiled.label(i), 1e-12);
    }
    flipped /= static_cast<double>(compiled.size());
    REQUIRE(std::abs(flipped - compiled.loss(p, 1e-12)) <= 1e-9);
  }
  GIVEN("Invalid corpora") {
    Corpus bad = corpus;
    bad.items[0].label = 2;
    REQUIRE_THROWS_AS(check_corpus(bad), FormatError);
    bad = corpus;
    bad.items[0].tokens = {"dog", "cat"};
    REQUIRE_THROWS_AS(check_corpus(bad), NotGrammatical);
  }
}

SCENARIO("Gradients") {
  const Corpus corpus = toy_corpus();
  const ModelConfig model;
  const CompiledCorpus compiled(corpus, model);
  ParamStore p;
  p.randomize_missing(compiled.symbols(), 11);
  const TrainConfig tcfg;
  const auto fd = fd_gradient(compiled, p, tcfg);
  REQUIRE(fd.size() == compiled.symbols().size());
  GIVEN("A coarser central difference") {
    std::size_t k = 0;
    for (const auto& s : compiled.symbols()) {
      ParamStore plus = p, minus = p;
      plus.bindings[s] += 1e-4;
      minus.bindings[s] -= 1e-4;
      const double coarse = (compiled.loss(plus, 1e-12) - compiled.loss(minus, 1e-12)) / 2e-4;
      REQUIRE(std::abs(coarse - fd[k++]) <= 1e-5);
    }
  }
  GIVEN("The mean SPSA estimate") {
    std::mt19937_64 rng(12);
    std::vector<double> mean(fd.size(), 0.0);
    const int samples = 400;
    for (int n = 0; n < samples; ++n) {
      std::vector<int> delta(fd.size());
      for (auto& d : delta) d = (rng() & 1u) ? 1 : -1;
      const auto g = spsa_gradient(compiled, p, 0.01, delta, 1e-12);
      for (std::size_t k = 0; k < g.size(); ++k) mean[k] += g[k] / samples;
    }
    std::size_t agree = 0, counted = 0;
    for (std::size_t k = 0; k < fd.size(); ++k) {
      if (std::abs(fd[k]) < 1e-3) continue;
      ++counted;
      agree += (fd[k] > 0) == (mean[k] > 0);
    }
    REQUIRE(counted > 0);
    REQUIRE(static_cast<double>(agree) >= 0.8 * static_cast<double>(counted));
  }
  GIVEN("A perturbation of the wrong length") {
    const std::vector<int> delta{1};
    REQUIRE_THROWS_AS(spsa_gradient(compiled, p, 0.1, delta, 1e-12), ArityMismatch);
  }
}

SCENARIO("Training") {
  const Corpus corpus = toy_corpus();
  const ModelConfig model;
  GIVEN("Zero iterations") {
    ParamStore init;
    init.randomize_missing(CompiledCorpus(corpus, model).symbols(), 99);
    TrainConfig tcfg;
    tcfg.iterations = 0;
    const TrainResult r = train(corpus, model, tcfg, init);
    REQUIRE(r.params.bindings == init.bindings);
    REQUIRE(r.trace.size() == 1);
    REQUIRE(r.trace[0].iteration == 0);
  }
  GIVEN("The separable toy corpus") {
    const TrainResult r = train(corpus, model, TrainConfig{});
    REQUIRE(r.trace.size() == 201);
    REQUIRE(r.trace.back().loss < r.trace.front().loss);
    REQUIRE(r.trace.back().accuracy >= 0.9);
    REQUIRE(r.params.sharing.at("dog") == r.params.sharing.at("car"));
    THEN("a second run is bit-identical") {
      const TrainResult again = train(corpus, model, TrainConfig{});
      REQUIRE(again.params == r.params);
      REQUIRE(again.trace == r.trace);
      REQUIRE(trace_csv(again.trace) == trace_csv(r.trace));
    }
  }
  GIVEN("SPSA") {
    TrainConfig tcfg;
    tcfg.optimizer = Optimizer::Spsa;
    const TrainResult r = train(corpus, model, tcfg);
    REQUIRE(r.trace.back().loss < r.trace.front().loss);
    REQUIRE(train(corpus, model, tcfg).trace == r.trace);
  }
  GIVEN("The snake method") {
    ModelConfig snake;
    snake.method = Method::Snake;
    TrainConfig tcfg;
    tcfg.iterations = 50;
    const TrainResult r = train(corpus, snake, tcfg);
    REQUIRE(r.trace.back().loss < r.trace.front().loss);
  }
  GIVEN("Contradictory duplicates") {
    Corpus dup;
    dup.lexicon = corpus.lexicon;
    dup.items = {{{"dog", "runs"}, 0}, {{"dog", "runs"}, 1}, {{"car", "stops"}, 0}, {{"car", "stops"}, 1}};
    TrainConfig tcfg;
    tcfg.iterations = 100;
    const TrainResult r = train(dup, model, tcfg);
    for (const auto& row : r.trace) REQUIRE(row.loss >= std::log(2.0) - 1e-9);
    REQUIRE(r.trace.back().loss <= r.trace.front().loss);
    const CompiledCorpus compiled(dup, model);
    ParamStore init;
    init.randomize_missing(compiled.symbols(), tcfg.seed);
    const auto before = compiled.probabilities(init, 1e-12);
    const auto after = compiled.probabilities(r.params, 1e-12);
    for (std::size_t i = 0; i < after.size(); ++i) {
      REQUIRE(std::abs(after[i] - 0.5) <= std::abs(before[i] - 0.5) + 1e-12);
    }
  }
  GIVEN("Invalid rates") {
    TrainConfig tcfg;
    tcfg.learning_rate = 0.0;
    REQUIRE_THROWS_AS(train(corpus, model, tcfg), ArityMismatch);
  }
}

}  // namespace test_trainer
}  // namespace qnlp
