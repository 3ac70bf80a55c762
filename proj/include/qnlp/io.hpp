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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qnlp/bigraph.hpp"
#include "qnlp/circuit.hpp"
#include "qnlp/compiler.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/snake.hpp"
#include "qnlp/trainer.hpp"

namespace qnlp {

// JSON artifacts of every pipeline stage. Readers throw FormatError whose
// `where` is "line N" for syntax errors and a JSON pointer for schema errors.
// Types are written in the "n.r s n.l" notation.

/// {"atoms": {atom: dim}, "sentence_type": atom,
///  "words": {word: [[atom, winding], ...]}, "functional": [word, ...]}.
/// A word type may also be a string such as "n.r s n.l"; "functional" is
/// optional.
struct LexiconFile {
  Lexicon lexicon;
  std::set<std::string> functional_words;
};
LexiconFile lexicon_from_json(std::string_view text);
std::string lexicon_to_json(const LexiconFile& lex);

std::string diagram_to_json(const Diagram& d);
Diagram diagram_from_json(std::string_view text);

/// Layout plus its crossings, dragged count, width and cost under `cfg`.
/// The report fields are ignored when reading.
std::string layout_to_json(const BigraphLayout& layout, const CostConfig& cfg);
BigraphLayout layout_from_json(std::string_view text);

std::string snake_to_json(const SnakeFreeDiagram& s);
SnakeFreeDiagram snake_from_json(std::string_view text);

/// Circuit, the boundary permutation of its outputs, and its metrics.
std::string circuit_to_json(const CompiledCircuit& c);
CompiledCircuit circuit_from_json(std::string_view text);

std::string params_to_json(const ParamStore& p);
ParamStore params_from_json(std::string_view text);

/// [{"tokens": [...], "label": 0|1}, ...]; items are checked against `lex`.
Corpus corpus_from_json(std::string_view text, const Lexicon& lex);
std::string corpus_to_json(const Corpus& corpus);

/// {"shape": [...], "data": [[re, im], ...]} in row-major order.
std::string tensor_to_json(const Tensor& t);
Tensor tensor_from_json(std::string_view text);

/// Whole file contents. Throws FormatError naming the path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace qnlp
