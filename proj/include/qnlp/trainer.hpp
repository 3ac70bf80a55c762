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

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qnlp/bigraph.hpp"
#include "qnlp/compiler.hpp"
#include "qnlp/pregroup.hpp"

namespace qnlp {

enum class Method { Bigraph, Snake };

/// Everything that turns a token sequence into a circuit.
struct ModelConfig {
  CompileConfig compile;
  Method method = Method::Bigraph;
  CostConfig cost;
};

/// Parsed diagram of a sentence. Throws UnknownWord, NotGrammatical.
Diagram sentence_diagram(std::span<const std::string> tokens, const Lexicon& lex);

/// Parse, rewrite with the configured method, compile.
CompiledCircuit compile_sentence(std::span<const std::string> tokens,
                                 const Lexicon& lex, const ModelConfig& model);

/// Symbols the configured method needs for the sentence.
std::set<std::string> sentence_symbols(std::span<const std::string> tokens,
                                       const Lexicon& lex, const ModelConfig& model);

struct CorpusItem {
  std::vector<std::string> tokens;
  int label = 0;

  bool operator==(const CorpusItem&) const = default;
};

/// Labeled sentences; every item is grammatical and labels are 0 or 1.
struct Corpus {
  Lexicon lexicon;
  std::vector<CorpusItem> items;
};

/// Throws NotGrammatical or FormatError when an item breaks the invariants.
void check_corpus(const Corpus& corpus);

enum class Optimizer { FiniteDifference, Spsa };

struct TrainConfig {
  Optimizer optimizer = Optimizer::FiniteDifference;
  double learning_rate = 0.5;
  std::size_t iterations = 200;
  std::uint64_t seed = 7;
  /// Zero-norm guard inside probabilities and logarithms.
  double epsilon = 1e-12;
  /// Central-difference step.
  double fd_step = 1e-5;
  /// SPSA perturbation size.
  double spsa_perturbation = 0.1;
};

/// |a0|^2 / (|a0|^2 + |a1|^2 + epsilon) of an unnormalized sentence vector.
double class_probability(const Tensor& sentence_vector, double epsilon);

/// -ln(q + epsilon) with q the probability given to `label`.
double cross_entropy(double p, int label, double epsilon);

/// Throws NotGrammatical, ZeroNorm, and propagated compile errors. The
/// sentence atom must be a single qubit.
double predict(std::span<const std::string> tokens, const Lexicon& lex,
               const ModelConfig& model, const ParamStore& params,
               double epsilon = 1e-12);

/// Circuits of a corpus compiled once, evaluated many times.
class CompiledCorpus {
 public:
  CompiledCorpus(const Corpus& corpus, const ModelConfig& model);

  const std::set<std::string>& symbols() const { return symbols_; }
  std::size_t size() const { return circuits_.size(); }
  const Circuit& circuit(std::size_t i) const { return circuits_.at(i); }
  int label(std::size_t i) const { return labels_.at(i); }

  /// Class-0 probability per item.
  std::vector<double> probabilities(const ParamStore& params, double epsilon) const;
  /// Mean binary cross-entropy.
  double loss(const ParamStore& params, double epsilon) const;
  /// Fraction of items whose more likely class is the label.
  double accuracy(const ParamStore& params, double epsilon) const;

 private:
  std::vector<Circuit> circuits_;
  std::vector<int> labels_;
  std::set<std::string> symbols_;
};

double loss(const Corpus& corpus, const ModelConfig& model,
            const ParamStore& params, double epsilon = 1e-12);

struct TraceRow {
  std::size_t iteration = 0;
  double loss = 0.0;
  double accuracy = 0.0;

  bool operator==(const TraceRow&) const = default;
};

struct TrainResult {
  ParamStore params;
  /// Row 0 holds the initial parameters, row k the parameters after step k.
  std::vector<TraceRow> trace;
};

/// Central finite-difference gradient of the mean loss, one entry per
/// symbol in set order.
std::vector<double> fd_gradient(const CompiledCorpus& corpus,
                                const ParamStore& params, const TrainConfig& tcfg);

/// One SPSA estimate with the given +-1 perturbation, one entry per symbol.
std::vector<double> spsa_gradient(const CompiledCorpus& corpus,
                                  const ParamStore& params, double perturbation,
                                  std::span<const int> delta, double epsilon);

/// Unbound symbols start uniform in [0, 2pi) from `tcfg.seed`; bound ones
/// keep their value. Deterministic given the inputs.
TrainResult train(const Corpus& corpus, const ModelConfig& model,
                  const TrainConfig& tcfg, ParamStore init = {});

/// "iteration,loss,accuracy" header plus one line per row.
std::string trace_csv(const std::vector<TraceRow>& trace);

}  // namespace qnlp
