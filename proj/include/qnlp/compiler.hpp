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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qnlp/ansatz.hpp"
#include "qnlp/bigraph.hpp"
#include "qnlp/circuit.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/snake.hpp"

namespace qnlp {

/// Words of equal type share one template (PerPos) or each word names its
/// own (PerWord). Parameter values are always per word.
enum class Sharing { PerPos, PerWord };

/// How a snake-free word process is realized: a linear-map ansatz with
/// ancillas and post-selections, or the word's state ansatz whose bent legs
/// are joined to their inputs by Bell effects.
enum class ProcessMode { LinearMap, BentState };

struct CompileConfig {
  /// Qubits per atom; atoms not listed use log2 of their dimension.
  std::map<std::string, std::size_t> qubits;
  AnsatzFamily family = AnsatzFamily::CnotU3;
  /// Layers by word arity; arities not listed use the arity itself.
  std::map<std::size_t, std::size_t> layers_by_arity;
  /// Words compiled as spiders over all of their legs.
  std::set<std::string> functional_words;
  Sharing sharing = Sharing::PerPos;
  ProcessMode process_mode = ProcessMode::LinearMap;
};

/// Word tensors as the bigraph pipeline sees them (state ansätze), or as the
/// snake pipeline sees them (process ansätze bent back into states).
enum class EmbeddingForm { State, Process };

struct CompiledCircuit {
  Circuit circuit;
  /// Original boundary slot of every circuit output, in output order.
  std::vector<std::size_t> boundary_perm;
};

/// Qubits realizing `atom`. Throws NonPowerOfTwoDim, DimensionMismatch.
std::size_t qubits_for(const std::string& atom,
                       const std::map<std::string, int>& dims,
                       const CompileConfig& cfg);

std::size_t layers_for(std::size_t arity, const CompileConfig& cfg);

/// Template of a word's state ansatz.
AnsatzSpec state_spec(const std::vector<TypedAtom>& type,
                      const std::map<std::string, int>& dims,
                      const CompileConfig& cfg);
/// Template of a word's process ansatz: max(input qubits, output qubits).
AnsatzSpec process_spec(const ProcessNode& process,
                        const std::map<std::string, int>& dims,
                        const CompileConfig& cfg);

/// "<word>@<slot>".
std::string word_symbol(const std::string& word, const std::string& slot);

/// Every symbol the given form needs for the word nodes of `d`, and the
/// word -> template record.
std::set<std::string> required_symbols(const Diagram& d, const CompileConfig& cfg,
                                       EmbeddingForm form);
std::map<std::string, std::string> sharing_record(const Diagram& d,
                                                  const CompileConfig& cfg);

/// States row of state ansätze and Bell states, SWAP network for the
/// crossings, effects row of effect ansätze and Bell effects. Outputs are the
/// layout's open wires in boundary_perm order.
CompiledCircuit compile_bigraph(const BigraphLayout& layout,
                                const CompileConfig& cfg);

/// Processes emitted in topological order; SWAPs only order the outputs.
CompiledCircuit compile_snake(const SnakeFreeDiagram& s, const CompileConfig& cfg);

/// Dense tensor per word of `d`, axes in type order. Functional words get
/// exact deltas. Throws UnboundParameter.
WordEmbedding embedding_of(const Diagram& d, const CompileConfig& cfg,
                           const ParamStore& params, EmbeddingForm form);

}  // namespace qnlp
