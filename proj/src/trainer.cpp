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

#include "qnlp/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "qnlp/errors.hpp"
#include "qnlp/snake.hpp"

namespace qnlp {

Diagram sentence_diagram(std::span<const std::string> tokens, const Lexicon& lex) {
  const auto reduction = parse(tokens, lex);
  if (!reduction) {
    std::string sentence;
    for (const auto& t : tokens) sentence += (sentence.empty() ? "" : " ") + t;
    throw NotGrammatical("'" + sentence + "' does not reduce to the sentence type");
  }
  return from_parse(tokens, lex, *reduction);
}

CompiledCircuit compile_sentence(std::span<const std::string> tokens,
                                 const Lexicon& lex, const ModelConfig& model) {
  const Diagram d = sentence_diagram(tokens, lex);
  if (model.method == Method::Snake) {
    return compile_snake(snake_removal(d, model.compile.functional_words), model.compile);
  }
  return compile_bigraph(bigraph_rewrite(d, model.cost), model.compile);
}

std::set<std::string> sentence_symbols(std::span<const std::string> tokens,
                                       const Lexicon& lex, const ModelConfig& model) {
  const auto form = model.method == Method::Snake ? EmbeddingForm::Process
                                                  : EmbeddingForm::State;
  return required_symbols(sentence_diagram(tokens, lex), model.compile, form);
}

void check_corpus(const Corpus& corpus) {
  for (std::size_t i = 0; i < corpus.items.size(); ++i) {
    const auto& item = corpus.items[i];
    if (item.label != 0 && item.label != 1) {
      throw FormatError("item " + std::to_string(i), "label must be 0 or 1");
    }
    if (!is_grammatical(item.tokens, corpus.lexicon)) {
      throw NotGrammatical("corpus item " + std::to_string(i) + " is not grammatical");
    }
  }
}

double class_probability(const Tensor& v, double epsilon) {
  if (v.size() != 2) {
    throw DimensionMismatch("sentence vector has " + std::to_string(v.size()) +
                            " entries, expected 2");
  }
  const double p0 = std::norm(v[0]);
  const double p1 = std::norm(v[1]);
  return p0 / (p0 + p1 + epsilon);
}

double cross_entropy(double p, int label, double epsilon) {
  const double q = label == 0 ? p : 1.0 - p;
  return -std::log(q + epsilon);
}

double predict(std::span<const std::string> tokens, const Lexicon& lex,
               const ModelConfig& model, const ParamStore& params, double epsilon) {
  const Tensor v = simulate(compile_sentence(tokens, lex, model).circuit, params);
  if (v.size() == 2 && std::norm(v[0]) + std::norm(v[1]) <= epsilon) {
    throw ZeroNorm("post-selected sentence vector has zero norm");
  }
  return class_probability(v, epsilon);
}

CompiledCorpus::CompiledCorpus(const Corpus& corpus, const ModelConfig& model) {
  check_corpus(corpus);
  for (const auto& item : corpus.items) {
    circuits_.push_back(compile_sentence(item.tokens, corpus.lexicon, model).circuit);
    if (!circuits_.back().inputs().empty() || circuits_.back().outputs().size() != 1) {
      throw DimensionMismatch("classification needs a single-qubit sentence atom");
    }
    labels_.push_back(item.label);
    const auto syms = sentence_symbols(item.tokens, corpus.lexicon, model);
    symbols_.insert(syms.begin(), syms.end());
  }
}

std::vector<double> CompiledCorpus::probabilities(const ParamStore& params,
                                                  double epsilon) const {
  std::vector<double> out;
  out.reserve(circuits_.size());
  for (const auto& c : circuits_) out.push_back(class_probability(simulate(c, params), epsilon));
  return out;
}

double CompiledCorpus::loss(const ParamStore& params, double epsilon) const {
  if (circuits_.empty()) return 0.0;
  const auto p = probabilities(params, epsilon);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += cross_entropy(p[i], labels_[i], epsilon);
  return total / static_cast<double>(p.size());
}

double CompiledCorpus::accuracy(const ParamStore& params, double epsilon) const {
  if (circuits_.empty()) return 0.0;
  const auto p = probabilities(params, epsilon);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if ((p[i] >= 0.5 ? 0 : 1) == labels_[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(p.size());
}

double loss(const Corpus& corpus, const ModelConfig& model, const ParamStore& params,
            double epsilon) {
  return CompiledCorpus(corpus, model).loss(params, epsilon);
}

std::vector<double> fd_gradient(const CompiledCorpus& corpus, const ParamStore& params,
                                const TrainConfig& tcfg) {
  std::vector<double> grad;
  ParamStore probe = params;
  for (const auto& s : corpus.symbols()) {
    const double v = params.bindings.at(s);
    probe.bindings[s] = v + tcfg.fd_step;
    const double up = corpus.loss(probe, tcfg.epsilon);
    probe.bindings[s] = v - tcfg.fd_step;
    const double down = corpus.loss(probe, tcfg.epsilon);
    probe.bindings[s] = v;
    grad.push_back((up - down) / (2.0 * tcfg.fd_step));
  }
  return grad;
}

std::vector<double> spsa_gradient(const CompiledCorpus& corpus, const ParamStore& params,
                                  double perturbation, std::span<const int> delta,
                                  double epsilon) {
  if (delta.size() != corpus.symbols().size()) {
    throw ArityMismatch("perturbation has the wrong length");
  }
  ParamStore plus = params, minus = params;
  std::size_t k = 0;
  for (const auto& s : corpus.symbols()) {
    plus.bindings[s] += perturbation * delta[k];
    minus.bindings[s] -= perturbation * delta[k];
    ++k;
  }
  const double diff = (corpus.loss(plus, epsilon) - corpus.loss(minus, epsilon)) /
                      (2.0 * perturbation);
  std::vector<double> grad;
  for (int d : delta) grad.push_back(diff * d);
  return grad;
}

TrainResult train(const Corpus& corpus, const ModelConfig& model,
                  const TrainConfig& tcfg, ParamStore init) {
  if (!(tcfg.learning_rate > 0.0) || !(tcfg.epsilon > 0.0) || !(tcfg.fd_step > 0.0) ||
      !(tcfg.spsa_perturbation > 0.0)) {
    throw ArityMismatch("training rates must be positive");
  }
  const CompiledCorpus compiled(corpus, model);
  init.randomize_missing(compiled.symbols(), tcfg.seed);
  for (const auto& item : corpus.items) {
    const auto r = sharing_record(sentence_diagram(item.tokens, corpus.lexicon), model.compile);
    init.sharing.insert(r.begin(), r.end());
  }

  TrainResult result{std::move(init), {}};
  ParamStore& p = result.params;
  auto log_row = [&](std::size_t it) {
    result.trace.push_back({it, compiled.loss(p, tcfg.epsilon), compiled.accuracy(p, tcfg.epsilon)});
  };
  log_row(0);

  std::mt19937_64 rng(tcfg.seed ^ 0x9E3779B97F4A7C15ull);
  for (std::size_t it = 1; it <= tcfg.iterations; ++it) {
    std::vector<double> grad;
    double rate = tcfg.learning_rate;
    if (tcfg.optimizer == Optimizer::FiniteDifference) {
      grad = fd_gradient(compiled, p, tcfg);
    } else {
      const double k = static_cast<double>(it);
      rate = tcfg.learning_rate / std::pow(k, 0.602);
      const double c = tcfg.spsa_perturbation / std::pow(k, 0.101);
      std::vector<int> delta(compiled.symbols().size());
      for (auto& d : delta) d = (rng() & 1u) ? 1 : -1;
      grad = spsa_gradient(compiled, p, c, delta, tcfg.epsilon);
    }
    std::size_t k = 0;
    for (const auto& s : compiled.symbols()) p.bindings[s] -= rate * grad[k++];
    log_row(it);
  }
  return result;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::string out = "iteration,loss,accuracy\n";
  char buf[96];
  for (const auto& row : trace) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", row.iteration, row.loss, row.accuracy);
    out += buf;
  }
  return out;
}

}  // namespace qnlp
