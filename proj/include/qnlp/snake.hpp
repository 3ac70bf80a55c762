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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qnlp/diagram.hpp"

namespace qnlp {

/// A word bent into a process, or a spider. `input_ports` and
/// `output_ports` give the original port slot behind every leg; input
/// atoms carry winding 0.
struct ProcessNode {
  NodeKind kind = NodeKind::Word;
  std::string word;
  std::vector<TypedAtom> inputs;
  std::vector<TypedAtom> outputs;
  std::vector<std::size_t> input_ports;
  std::vector<std::size_t> output_ports;

  bool operator==(const ProcessNode&) const = default;
};

/// Output leg of a process, or input leg of a process. A `process` of
/// kBoundary names a boundary slot through `leg`.
struct ProcessPort {
  std::size_t process = kBoundary;
  std::size_t leg = 0;

  bool on_boundary() const { return process == kBoundary; }
  auto operator<=>(const ProcessPort&) const = default;
};

/// Directed wire from an output leg to an input leg or boundary slot.
struct SnakeWire {
  ProcessPort from;
  ProcessPort to;

  bool operator==(const SnakeWire&) const = default;
};

/// Processes in topological order joined by directed wires only. Links
/// that joined two inputs (or an input and the boundary) become two-output
/// spider processes, links that joined two outputs become two-input spider
/// processes.
struct SnakeFreeDiagram {
  std::map<std::string, int> dims;
  std::vector<ProcessNode> processes;
  std::vector<SnakeWire> wires;
  std::vector<TypedAtom> boundary;

  bool operator==(const SnakeFreeDiagram&) const = default;
};

/// Word ports with nonzero winding become inputs, in reverse reading order,
/// with winding reset to 0; winding-0 ports stay outputs in order. A spider
/// keeps its first `legs_in` ports as inputs.
ProcessNode autonomise(const Node& node);

/// Autonomises every node and yanks every cap and cup. Input atoms compare
/// by name only. Every word in `functional` becomes one spider process per
/// atom group whose legs are oriented against their partners, so that no
/// cup or cap remains around it. Throws InvalidDiagram, CyclicWiring.
SnakeFreeDiagram snake_removal(const Diagram& d,
                               const std::set<std::string>& functional = {});

/// Symmetric diagram with the same processes: outputs first, then inputs
/// reversed as left adjoints, so that snake_removal maps it back.
Diagram to_diagram(const SnakeFreeDiagram& s);

/// Exact contraction of the process network, using the word tensors of the
/// unbent words (axes in type order) and deltas for spiders.
Tensor evaluate(const SnakeFreeDiagram& s, const WordEmbedding& embedding);

/// Processes that realize a leftover cup or cap.
std::size_t bell_process_count(const SnakeFreeDiagram& s);

}  // namespace qnlp
