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
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qnlp/pregroup.hpp"
#include "qnlp/tensor.hpp"

namespace qnlp {

enum class NodeKind { Word, Spider };

/// A word state (or, once transposed, a word effect) or a spider. Spider
/// ports all share one atomic type; the first `legs_in` of them are inputs.
struct Node {
  NodeKind kind = NodeKind::Word;
  std::string name;
  std::vector<TypedAtom> ports;
  bool effect = false;
  std::size_t legs_in = 0;

  bool operator==(const Node&) const = default;
};

inline constexpr std::size_t kBoundary = std::numeric_limits<std::size_t>::max();

/// A port of a node, or a slot of the diagram boundary when
/// `node == kBoundary`.
struct PortRef {
  std::size_t node = kBoundary;
  std::size_t slot = 0;

  static PortRef boundary(std::size_t slot) { return {kBoundary, slot}; }
  bool on_boundary() const { return node == kBoundary; }
  auto operator<=>(const PortRef&) const = default;
};

enum class LinkKind { Cap, Cup, Wire };

/// Caps satisfy winding(a) + 1 = winding(b), cups winding(a) = winding(b) + 1,
/// wires join equal atoms. `a` is the left end in reading order.
struct Link {
  PortRef a;
  PortRef b;
  LinkKind kind = LinkKind::Cap;

  bool operator==(const Link&) const = default;
};

/// A DisCoCat string diagram: nodes in reading order, links joining ports,
/// and the ordered open type. `dims` gives the Hilbert dimension per atom.
struct Diagram {
  std::map<std::string, int> dims;
  std::vector<Node> nodes;
  std::vector<Link> links;
  std::vector<TypedAtom> boundary;
  bool symmetric = false;

  const TypedAtom& atom_at(PortRef port) const;
  std::size_t dim_at(PortRef port) const;

  bool operator==(const Diagram&) const = default;
};

/// Dense tensor per word, one axis per atom of the word's type.
using WordEmbedding = std::map<std::string, Tensor>;

/// Image of a parse: one word node per token, one cap per contraction, and a
/// wire from every open atom to the boundary. Throws InvalidReduction.
Diagram from_parse(std::span<const std::string> tokens, const Lexicon& lex,
                   const Reduction& reduction);

/// Every invariant violation as a short message; empty when well formed.
/// Planarity is only checked for non-symmetric diagrams.
std::vector<std::string> validate(const Diagram& d);

/// Exact contraction with caps, cups and wires as Kronecker deltas and
/// spiders as generalized deltas. Result axes follow the boundary.
/// Throws MissingEmbedding or DimensionMismatch.
Tensor contract(const Diagram& d, const WordEmbedding& embedding);

/// Flips a word between state and effect. The computational-basis transpose
/// leaves the contraction value unchanged.
Diagram transpose_word(Diagram d, std::size_t node);

/// Reading-order position of every non-boundary port.
std::vector<std::vector<std::size_t>> port_positions(const Diagram& d);

/// Port slots grouped by atom name, groups ordered by first appearance.
/// A functional word means one spider per group.
std::vector<std::vector<std::size_t>> atom_groups(const std::vector<TypedAtom>& ports);

/// Tensor of shape `shape` equal to 1 where the indices of every group
/// agree, 0 elsewhere.
Tensor group_delta(const std::vector<std::size_t>& shape,
                   const std::vector<std::vector<std::size_t>>& groups);

}  // namespace qnlp
