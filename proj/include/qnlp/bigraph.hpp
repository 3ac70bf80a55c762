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
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "qnlp/diagram.hpp"

namespace qnlp {

enum class SearchMode { Auto, Exhaustive, Local };

struct CostConfig {
  double swap_cost = 3.0;
  double intra_cost = 6.0;
  bool allow_block_reversal = false;
  SearchMode search = SearchMode::Auto;
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
};

/// Pseudo-elements model what cannot be drawn between the two rows: a
/// dragged state-state link becomes a Bell effect in the effects row, a
/// dragged effect-effect link (or a link joining two boundary slots) becomes
/// a Bell state in the states row, and every open wire ends on a stub in the
/// effects row.
enum class ElementKind { Word, BellState, BellEffect, Stub };

/// `ref` is a node index (Word), a link index (Bell*), or a boundary slot
/// (Stub). A flipped element presents its ports in reverse order.
struct RowElement {
  ElementKind kind = ElementKind::Word;
  std::size_t ref = 0;
  bool flipped = false;

  bool operator==(const RowElement&) const = default;
};

/// Identity of a row position: a node port, a boundary slot, or one end of
/// the link carried by a Bell element.
struct AttachKey {
  enum Kind { NodePort, Boundary, BellEnd } kind = NodePort;
  std::size_t a = 0;
  std::size_t b = 0;

  auto operator<=>(const AttachKey&) const = default;
};

/// Two-row state/effect drawing of a diagram. `diagram` carries the effect
/// flags of the effects row. Nodes with open wires are always states.
struct BigraphLayout {
  Diagram diagram;
  std::vector<RowElement> state_row;
  std::vector<RowElement> effect_row;
  /// Link indices realized through a Bell element, in increasing order.
  std::vector<std::size_t> dragged;

  std::vector<std::size_t> states() const;
  std::vector<std::size_t> effects() const;
  /// Original boundary slot of each layout output, in output order.
  std::vector<std::size_t> boundary_perm() const;

  bool operator==(const BigraphLayout&) const = default;
};

/// A wire between position `state_pos` of the states row and `effect_pos`
/// of the effects row, counted in ports.
struct LayoutEdge {
  std::size_t state_pos = 0;
  std::size_t effect_pos = 0;
  bool operator==(const LayoutEdge&) const = default;
};

/// Breadth-first distances from the node holding the unique open wire over
/// the node adjacency graph; node 0 is the root of a closed diagram.
/// Returns nullopt when the graph has a cycle (a self-loop counts; parallel
/// links do not). Throws MultipleRoots, Disconnected.
std::optional<std::vector<std::size_t>> distances_from_root(const Diagram& d);

/// Row positions in order.
std::vector<AttachKey> row_keys(const BigraphLayout& layout, bool state_row);
std::vector<LayoutEdge> layout_edges(const BigraphLayout& layout);
/// Atom carried by a row position.
const TypedAtom& key_atom(const Diagram& d, const AttachKey& key);

/// Number of edge pairs whose endpoints interleave between the rows.
std::size_t count_crossings(const BigraphLayout& layout);
double layout_cost(const BigraphLayout& layout, const CostConfig& cfg);

/// Layout for a fixed partition: `is_state[n]` places node n. Rows follow
/// reading order. Throws InvalidDiagram if a node with an open wire is placed
/// among the effects.
BigraphLayout layout_for_partition(const Diagram& d,
                                   const std::vector<bool>& is_state);

/// Reorders (and, when allowed, flips) row elements. Exhaustive when both
/// rows hold at most 6 elements and the search space is at most 2^20 under
/// Auto; otherwise barycenter ordering plus adjacent-transposition descent
/// with seeded restarts. Never returns a costlier layout than the input.
BigraphLayout minimize_crossings(const BigraphLayout& layout,
                                 const CostConfig& cfg);

/// Parity partition for an acyclic diagram with one open wire; otherwise the
/// cheapest partition with open-wire nodes among the states. Crossings are
/// minimized. Throws InvalidDiagram when `d` does not validate.
BigraphLayout bigraph_rewrite(const Diagram& d, const CostConfig& cfg = {});

/// Symmetric diagram of the layout: states row then effects row, Bell
/// elements as two-legged spiders, boundary in layout output order.
Diagram reconstruct(const BigraphLayout& layout);

/// Wires of the drawn layout: one per non-dragged node link, two per Bell
/// element.
std::size_t layout_width(const BigraphLayout& layout);
/// Width the layout would have if dragged links were not drawn at all.
std::size_t ideal_width(const BigraphLayout& layout);

}  // namespace qnlp
