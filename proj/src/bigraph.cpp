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

#include "qnlp/bigraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "qnlp/errors.hpp"

namespace qnlp {

std::vector<std::size_t> BigraphLayout::states() const {
  std::vector<std::size_t> out;
  for (const auto& e : state_row) {
    if (e.kind == ElementKind::Word) out.push_back(e.ref);
  }
  return out;
}

std::vector<std::size_t> BigraphLayout::effects() const {
  std::vector<std::size_t> out;
  for (const auto& e : effect_row) {
    if (e.kind == ElementKind::Word) out.push_back(e.ref);
  }
  return out;
}

std::vector<std::size_t> BigraphLayout::boundary_perm() const {
  std::vector<std::size_t> out;
  for (const auto& e : effect_row) {
    if (e.kind == ElementKind::Stub) out.push_back(e.ref);
  }
  return out;
}

std::optional<std::vector<std::size_t>> distances_from_root(const Diagram& d) {
  const std::size_t n = d.nodes.size();
  if (d.boundary.size() > 1) {
    throw MultipleRoots(std::to_string(d.boundary.size()) +
                        " open wires; no unique root");
  }
  if (n == 0) return std::vector<std::size_t>{};
  std::size_t root = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  bool self_loop = false;
  for (const auto& link : d.links) {
    if (link.a.on_boundary() != link.b.on_boundary()) {
      root = link.a.on_boundary() ? link.b.node : link.a.node;
      continue;
    }
    if (link.a.on_boundary()) continue;
    if (link.a.node == link.b.node) {
      self_loop = true;
      continue;
    }
    edges.insert(std::minmax(link.a.node, link.b.node));
  }
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n, kUnseen);
  std::deque<std::size_t> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (auto v : adj[u]) {
      if (dist[v] == kUnseen) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (dist[v] == kUnseen) {
      throw Disconnected("node " + std::to_string(v) + " is unreachable from the root");
    }
  }
  if (self_loop || edges.size() != n - 1) return std::nullopt;
  return dist;
}

namespace {

AttachKey end_key(PortRef p) {
  if (p.on_boundary()) return {AttachKey::Boundary, p.slot, 0};
  return {AttachKey::NodePort, p.node, p.slot};
}

std::size_t element_size(const Diagram& d, const RowElement& e) {
  switch (e.kind) {
    case ElementKind::Word:
      return d.nodes.at(e.ref).ports.size();
    case ElementKind::BellState:
    case ElementKind::BellEffect:
      return 2;
    case ElementKind::Stub:
      return 1;
  }
  return 0;
}

/// Key of port `p` of an unflipped element.
AttachKey element_key(const RowElement& e, std::size_t p) {
  switch (e.kind) {
    case ElementKind::Word:
      return {AttachKey::NodePort, e.ref, p};
    case ElementKind::BellState:
    case ElementKind::BellEffect:
      return {AttachKey::BellEnd, e.ref, p};
    case ElementKind::Stub:
      break;
  }
  return {AttachKey::Boundary, e.ref, 0};
}

std::map<AttachKey, std::size_t> positions(const BigraphLayout& layout,
                                           bool state_row) {
  std::map<AttachKey, std::size_t> out;
  const auto keys = row_keys(layout, state_row);
  for (std::size_t k = 0; k < keys.size(); ++k) out[keys[k]] = k;
  return out;
}

}  // namespace

std::vector<AttachKey> row_keys(const BigraphLayout& layout, bool state_row) {
  std::vector<AttachKey> out;
  for (const auto& e : state_row ? layout.state_row : layout.effect_row) {
    const std::size_t size = element_size(layout.diagram, e);
    for (std::size_t k = 0; k < size; ++k) {
      out.push_back(element_key(e, e.flipped ? size - 1 - k : k));
    }
  }
  return out;
}

std::vector<LayoutEdge> layout_edges(const BigraphLayout& layout) {
  const auto s_pos = positions(layout, true);
  const auto e_pos = positions(layout, false);
  std::vector<LayoutEdge> out;
  const auto& d = layout.diagram;
  for (std::size_t l = 0; l < d.links.size(); ++l) {
    const auto& link = d.links[l];
    const AttachKey bell0{AttachKey::BellEnd, l, 0};
    const AttachKey bell1{AttachKey::BellEnd, l, 1};
    if (s_pos.count(bell0)) {
      out.push_back({s_pos.at(bell0), e_pos.at(end_key(link.a))});
      out.push_back({s_pos.at(bell1), e_pos.at(end_key(link.b))});
    } else if (e_pos.count(bell0)) {
      out.push_back({s_pos.at(end_key(link.a)), e_pos.at(bell0)});
      out.push_back({s_pos.at(end_key(link.b)), e_pos.at(bell1)});
    } else {
      const AttachKey ka = end_key(link.a), kb = end_key(link.b);
      if (s_pos.count(ka)) {
        out.push_back({s_pos.at(ka), e_pos.at(kb)});
      } else {
        out.push_back({s_pos.at(kb), e_pos.at(ka)});
      }
    }
  }
  return out;
}

const TypedAtom& key_atom(const Diagram& d, const AttachKey& key) {
  switch (key.kind) {
    case AttachKey::NodePort:
      return d.nodes.at(key.a).ports.at(key.b);
    case AttachKey::Boundary:
      return d.boundary.at(key.a);
    case AttachKey::BellEnd:
      break;
  }
  const auto& link = d.links.at(key.a);
  return d.atom_at(key.b == 0 ? link.a : link.b);
}

namespace {

std::size_t inversions(std::vector<LayoutEdge> edges) {
  std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
    return x.state_pos < y.state_pos;
  });
  std::size_t count = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (edges[i].effect_pos > edges[j].effect_pos) ++count;
    }
  }
  return count;
}

}  // namespace

std::size_t count_crossings(const BigraphLayout& layout) {
  return inversions(layout_edges(layout));
}

double layout_cost(const BigraphLayout& layout, const CostConfig& cfg) {
  return cfg.swap_cost * static_cast<double>(count_crossings(layout)) +
         cfg.intra_cost * static_cast<double>(layout.dragged.size());
}

BigraphLayout layout_for_partition(const Diagram& d,
                                   const std::vector<bool>& is_state) {
  if (is_state.size() != d.nodes.size()) {
    throw InvalidDiagram("partition does not cover the nodes");
  }
  BigraphLayout layout;
  layout.diagram = d;
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    layout.diagram.nodes[n].effect = !is_state[n];
  }

  // Reading position of every port; boundary slots come after all ports.
  const auto port_pos = port_positions(d);
  std::size_t total = 0;
  std::vector<std::size_t> first(d.nodes.size());
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    first[n] = total;
    total += d.nodes[n].ports.size();
  }
  auto pos = [&](PortRef p) -> double {
    if (p.on_boundary()) return static_cast<double>(total + p.slot);
    return static_cast<double>(port_pos[p.node][p.slot]);
  };

  struct Placed {
    double key;
    RowElement element;
  };
  std::vector<Placed> srow, erow;
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    const RowElement e{ElementKind::Word, n, false};
    (is_state[n] ? srow : erow).push_back({static_cast<double>(first[n]), e});
  }
  for (std::size_t l = 0; l < d.links.size(); ++l) {
    const auto& link = d.links[l];
    const bool a_open = link.a.on_boundary(), b_open = link.b.on_boundary();
    const double mid = (pos(link.a) + pos(link.b)) / 2.0;
    if (a_open && b_open) {
      srow.push_back({mid, {ElementKind::BellState, l, false}});
      erow.push_back({pos(link.a), {ElementKind::Stub, link.a.slot, false}});
      erow.push_back({pos(link.b), {ElementKind::Stub, link.b.slot, false}});
      continue;
    }
    if (a_open || b_open) {
      const PortRef inner = a_open ? link.b : link.a;
      const PortRef open = a_open ? link.a : link.b;
      if (!is_state[inner.node]) {
        throw InvalidDiagram("node " + std::to_string(inner.node) +
                             " has an open wire but is not a state");
      }
      erow.push_back({pos(inner), {ElementKind::Stub, open.slot, false}});
      continue;
    }
    const bool sa = is_state[link.a.node], sb = is_state[link.b.node];
    if (sa && sb) {
      erow.push_back({mid, {ElementKind::BellEffect, l, false}});
      layout.dragged.push_back(l);
    } else if (!sa && !sb) {
      srow.push_back({mid, {ElementKind::BellState, l, false}});
      layout.dragged.push_back(l);
    }
  }
  auto by_key = [](const Placed& x, const Placed& y) {
    if (x.key != y.key) return x.key < y.key;
    if (x.element.kind != y.element.kind) return x.element.kind < y.element.kind;
    return x.element.ref < y.element.ref;
  };
  std::stable_sort(srow.begin(), srow.end(), by_key);
  std::stable_sort(erow.begin(), erow.end(), by_key);
  for (const auto& p : srow) layout.state_row.push_back(p.element);
  for (const auto& p : erow) layout.effect_row.push_back(p.element);
  return layout;
}

namespace {

/// Ordering problem over row elements with precomputed edge endpoints.
class OrderProblem {
 public:
  OrderProblem(const BigraphLayout& layout, bool allow_flips) {
    BigraphLayout plain = layout;
    for (auto& e : plain.state_row) e.flipped = false;
    for (auto& e : plain.effect_row) e.flipped = false;
    for (int row = 0; row < 2; ++row) {
      const auto& elems = row == 0 ? plain.state_row : plain.effect_row;
      auto& sizes = row == 0 ? s_size_ : e_size_;
      auto& flippable = row == 0 ? s_flip_ : e_flip_;
      auto& owner = row == 0 ? s_owner_ : e_owner_;
      for (std::size_t k = 0; k < elems.size(); ++k) {
        const std::size_t size = element_size(layout.diagram, elems[k]);
        sizes.push_back(size);
        flippable.push_back(allow_flips && size >= 2);
        for (std::size_t p = 0; p < size; ++p) owner.emplace_back(k, p);
      }
    }
    for (const auto& edge : layout_edges(plain)) {
      edges_.push_back({s_owner_[edge.state_pos], e_owner_[edge.effect_pos]});
    }
  }

  struct State {
    std::vector<std::size_t> s_order, e_order;
    std::vector<bool> s_flip, e_flip;
  };

  std::size_t n_states() const { return s_size_.size(); }
  std::size_t n_effects() const { return e_size_.size(); }
  bool state_flippable(std::size_t k) const { return s_flip_[k]; }
  bool effect_flippable(std::size_t k) const { return e_flip_[k]; }
  std::size_t flippable_count() const {
    return static_cast<std::size_t>(std::count(s_flip_.begin(), s_flip_.end(), true) +
                                    std::count(e_flip_.begin(), e_flip_.end(), true));
  }

  State from_layout(const BigraphLayout& layout) const {
    // Element k of the plain rows corresponds to layout element k; order is
    // the identity on the input.
    State st;
    st.s_order.resize(n_states());
    st.e_order.resize(n_effects());
    std::iota(st.s_order.begin(), st.s_order.end(), 0);
    std::iota(st.e_order.begin(), st.e_order.end(), 0);
    for (const auto& e : layout.state_row) st.s_flip.push_back(e.flipped);
    for (const auto& e : layout.effect_row) st.e_flip.push_back(e.flipped);
    return st;
  }

  /// Port position per (element, port) given orders and flips.
  static void place(const std::vector<std::size_t>& order,
                    const std::vector<std::size_t>& sizes,
                    std::vector<std::size_t>& base) {
    base.assign(sizes.size(), 0);
    std::size_t offset = 0;
    for (auto k : order) {
      base[k] = offset;
      offset += sizes[k];
    }
  }

  std::size_t crossings(const State& st) const {
    std::vector<std::size_t> sb, eb;
    place(st.s_order, s_size_, sb);
    place(st.e_order, e_size_, eb);
    scratch_.clear();
    for (const auto& [s, e] : edges_) {
      const std::size_t sp = sb[s.first] + (st.s_flip[s.first] ? s_size_[s.first] - 1 - s.second : s.second);
      const std::size_t ep = eb[e.first] + (st.e_flip[e.first] ? e_size_[e.first] - 1 - e.second : e.second);
      scratch_.push_back({sp, ep});
    }
    return inversions(scratch_);
  }

  /// Mean position of the partners of every element in the other row.
  std::vector<double> barycenters(const State& st, bool of_states) const {
    std::vector<std::size_t> sb, eb;
    place(st.s_order, s_size_, sb);
    place(st.e_order, e_size_, eb);
    const std::size_t n = of_states ? n_states() : n_effects();
    std::vector<double> sum(n, 0.0), count(n, 0.0);
    for (const auto& [s, e] : edges_) {
      const double sp = static_cast<double>(sb[s.first] + s.second);
      const double ep = static_cast<double>(eb[e.first] + e.second);
      if (of_states) {
        sum[s.first] += ep;
        count[s.first] += 1.0;
      } else {
        sum[e.first] += sp;
        count[e.first] += 1.0;
      }
    }
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = count[k] > 0 ? sum[k] / count[k] : static_cast<double>(k);
    }
    return out;
  }

 private:
  using Owner = std::pair<std::size_t, std::size_t>;
  std::vector<std::size_t> s_size_, e_size_;
  std::vector<bool> s_flip_, e_flip_;
  std::vector<Owner> s_owner_, e_owner_;
  std::vector<std::pair<Owner, Owner>> edges_;
  mutable std::vector<LayoutEdge> scratch_;
};

using State = OrderProblem::State;

State exhaustive(const OrderProblem& prob, const State& start) {
  State best = start;
  std::size_t best_cross = prob.crossings(start);
  // Flip bit k selects state element k, or effect element k - n_states().
  std::vector<std::size_t> flip_slots;
  for (std::size_t k = 0; k < prob.n_states(); ++k) {
    if (prob.state_flippable(k)) flip_slots.push_back(k);
  }
  for (std::size_t k = 0; k < prob.n_effects(); ++k) {
    if (prob.effect_flippable(k)) flip_slots.push_back(prob.n_states() + k);
  }
  State cur;
  cur.s_order.resize(prob.n_states());
  cur.e_order.resize(prob.n_effects());
  std::iota(cur.s_order.begin(), cur.s_order.end(), 0);
  do {
    std::iota(cur.e_order.begin(), cur.e_order.end(), 0);
    do {
      for (std::size_t mask = 0; mask < (std::size_t{1} << flip_slots.size()); ++mask) {
        cur.s_flip.assign(prob.n_states(), false);
        cur.e_flip.assign(prob.n_effects(), false);
        for (std::size_t bit = 0; bit < flip_slots.size(); ++bit) {
          if (!((mask >> bit) & 1U)) continue;
          const std::size_t slot = flip_slots[bit];
          if (slot < prob.n_states()) {
            cur.s_flip[slot] = true;
          } else {
            cur.e_flip[slot - prob.n_states()] = true;
          }
        }
        const std::size_t c = prob.crossings(cur);
        if (c < best_cross) {
          best_cross = c;
          best = cur;
          if (c == 0) return best;
        }
      }
    } while (std::next_permutation(cur.e_order.begin(), cur.e_order.end()));
  } while (std::next_permutation(cur.s_order.begin(), cur.s_order.end()));
  return best;
}

/// Adjacent transpositions and single flips until no move strictly helps.
void descend(const OrderProblem& prob, State& st, std::size_t& cross) {
  bool improved = true;
  while (improved && cross > 0) {
    improved = false;
    for (int row = 0; row < 2; ++row) {
      auto& order = row == 0 ? st.s_order : st.e_order;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        std::swap(order[i], order[i + 1]);
        const std::size_t c = prob.crossings(st);
        if (c < cross) {
          cross = c;
          improved = true;
        } else {
          std::swap(order[i], order[i + 1]);
        }
      }
      auto& flips = row == 0 ? st.s_flip : st.e_flip;
      for (std::size_t k = 0; k < flips.size(); ++k) {
        const bool ok = row == 0 ? prob.state_flippable(k) : prob.effect_flippable(k);
        if (!ok) continue;
        flips[k] = !flips[k];
        const std::size_t c = prob.crossings(st);
        if (c < cross) {
          cross = c;
          improved = true;
        } else {
          flips[k] = !flips[k];
        }
      }
    }
  }
}

State local_search(const OrderProblem& prob, const State& start,
                   const CostConfig& cfg) {
  State best = start;
  std::size_t best_cross = prob.crossings(start);
  auto consider = [&](State st) {
    std::size_t c = prob.crossings(st);
    descend(prob, st, c);
    if (c < best_cross) {
      best_cross = c;
      best = std::move(st);
    }
  };

  consider(start);
  // Barycenter sweeps, alternating rows.
  State bary = start;
  for (int sweep = 0; sweep < 4; ++sweep) {
    for (int row = 1; row >= 0; --row) {
      const auto centers = prob.barycenters(bary, row == 0);
      auto& order = row == 0 ? bary.s_order : bary.e_order;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return centers[x] < centers[y];
      });
    }
  }
  consider(bary);

  std::mt19937_64 rng(cfg.seed);
  for (std::size_t r = 0; r < cfg.restarts && best_cross > 0; ++r) {
    State st = start;
    std::shuffle(st.s_order.begin(), st.s_order.end(), rng);
    std::shuffle(st.e_order.begin(), st.e_order.end(), rng);
    consider(std::move(st));
  }
  return best;
}

double factorial(std::size_t n) {
  double out = 1.0;
  for (std::size_t k = 2; k <= n; ++k) out *= static_cast<double>(k);
  return out;
}

BigraphLayout apply(const BigraphLayout& layout, const State& st) {
  BigraphLayout out = layout;
  out.state_row.clear();
  out.effect_row.clear();
  for (auto k : st.s_order) {
    auto e = layout.state_row[k];
    e.flipped = st.s_flip[k];
    out.state_row.push_back(e);
  }
  for (auto k : st.e_order) {
    auto e = layout.effect_row[k];
    e.flipped = st.e_flip[k];
    out.effect_row.push_back(e);
  }
  return out;
}

std::size_t first_state_node(const BigraphLayout& layout) {
  for (const auto& e : layout.state_row) {
    if (e.kind == ElementKind::Word) return e.ref;
  }
  return std::numeric_limits<std::size_t>::max();
}

}  // namespace

BigraphLayout minimize_crossings(const BigraphLayout& layout,
                                 const CostConfig& cfg) {
  const OrderProblem prob(layout, cfg.allow_block_reversal);
  State start = prob.from_layout(layout);
  if (!cfg.allow_block_reversal) {
    start.s_flip.assign(prob.n_states(), false);
    start.e_flip.assign(prob.n_effects(), false);
  }
  bool use_exhaustive = cfg.search == SearchMode::Exhaustive;
  if (cfg.search == SearchMode::Auto) {
    const double space = factorial(prob.n_states()) * factorial(prob.n_effects()) *
                         static_cast<double>(std::size_t{1} << std::min<std::size_t>(prob.flippable_count(), 40));
    use_exhaustive = prob.n_states() <= 6 && prob.n_effects() <= 6 &&
                     space <= static_cast<double>(1 << 20);
  }
  const State best =
      use_exhaustive ? exhaustive(prob, start) : local_search(prob, start, cfg);
  BigraphLayout result = apply(layout, best);

  // Mirror image: both rows reversed (each element reversed too when free).
  BigraphLayout mirror = result;
  std::reverse(mirror.state_row.begin(), mirror.state_row.end());
  std::reverse(mirror.effect_row.begin(), mirror.effect_row.end());
  if (cfg.allow_block_reversal) {
    for (auto* row : {&mirror.state_row, &mirror.effect_row}) {
      for (auto& e : *row) {
        if (element_size(layout.diagram, e) >= 2) e.flipped = !e.flipped;
      }
    }
  }
  if (count_crossings(mirror) == count_crossings(result) &&
      first_state_node(mirror) < first_state_node(result)) {
    result = std::move(mirror);
  }
  if (layout_cost(result, cfg) >= layout_cost(layout, cfg)) return layout;
  return result;
}

BigraphLayout bigraph_rewrite(const Diagram& d, const CostConfig& cfg) {
  const auto problems = validate(d);
  if (!problems.empty()) {
    std::string msg = "invalid diagram:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InvalidDiagram(msg);
  }
  const std::size_t n = d.nodes.size();

  std::optional<std::vector<std::size_t>> dist;
  try {
    dist = distances_from_root(d);
  } catch (const MultipleRoots&) {
  } catch (const Disconnected&) {
  }
  if (dist) {
    std::vector<bool> is_state(n);
    for (std::size_t v = 0; v < n; ++v) is_state[v] = (*dist)[v] % 2 == 0;
    return minimize_crossings(layout_for_partition(d, is_state), cfg);
  }

  // General case: open-wire nodes are states; everything else is searched.
  std::vector<bool> forced(n, false);
  bool any_open = false;
  for (const auto& link : d.links) {
    if (link.a.on_boundary() != link.b.on_boundary()) {
      forced[link.a.on_boundary() ? link.b.node : link.a.node] = true;
      any_open = true;
    }
  }
  if (!any_open && n > 0) forced[0] = true;
  std::vector<std::size_t> free_nodes;
  for (std::size_t v = 0; v < n; ++v) {
    if (!forced[v]) free_nodes.push_back(v);
  }

  auto partition_of = [&](std::size_t mask) {
    std::vector<bool> is_state(n, true);
    for (std::size_t k = 0; k < free_nodes.size(); ++k) {
      is_state[free_nodes[k]] = ((mask >> k) & 1U) == 0;
    }
    return is_state;
  };
  auto dragged_of = [&](const std::vector<bool>& is_state) {
    std::size_t count = 0;
    for (const auto& link : d.links) {
      if (link.a.on_boundary() || link.b.on_boundary()) continue;
      if (is_state[link.a.node] == is_state[link.b.node]) ++count;
    }
    return count;
  };

  std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (dragged, mask)
  if (free_nodes.size() <= 16) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << free_nodes.size()); ++mask) {
      candidates.emplace_back(dragged_of(partition_of(mask)), mask);
    }
    std::sort(candidates.begin(), candidates.end());
  }

  std::optional<BigraphLayout> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const auto& [dragged, mask] : candidates) {
    if (cfg.intra_cost * static_cast<double>(dragged) >= best_cost) break;
    auto candidate = minimize_crossings(layout_for_partition(d, partition_of(mask)), cfg);
    const double cost = layout_cost(candidate, cfg);
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(candidate);
    }
  }
  if (best) return *best;

  // Too many free nodes to enumerate: two-colour a breadth-first forest.
  std::vector<int> colour(n, -1);
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& link : d.links) {
    if (link.a.on_boundary() || link.b.on_boundary()) continue;
    adj[link.a.node].push_back(link.b.node);
    adj[link.b.node].push_back(link.a.node);
  }
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (forced[v]) {
      colour[v] = 0;
      queue.push_back(v);
    }
  }
  for (std::size_t v = 0; v <= n; ++v) {
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto w : adj[u]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[u];
          queue.push_back(w);
        }
      }
    }
    if (v < n && colour[v] < 0) {
      colour[v] = 0;
      queue.push_back(v);
    }
  }
  std::vector<bool> is_state(n);
  for (std::size_t v = 0; v < n; ++v) is_state[v] = colour[v] == 0 || forced[v];
  return minimize_crossings(layout_for_partition(d, is_state), cfg);
}

Diagram reconstruct(const BigraphLayout& layout) {
  const Diagram& src = layout.diagram;
  Diagram out;
  out.dims = src.dims;
  out.symmetric = true;

  std::map<std::size_t, std::size_t> node_index;  // old node -> new node
  std::map<std::size_t, std::size_t> bell_index;  // link -> new node
  auto add_element = [&](const RowElement& e) {
    switch (e.kind) {
      case ElementKind::Word:
        node_index[e.ref] = out.nodes.size();
        out.nodes.push_back(src.nodes.at(e.ref));
        break;
      case ElementKind::BellState:
      case ElementKind::BellEffect: {
        const auto& link = src.links.at(e.ref);
        Node spider;
        spider.kind = NodeKind::Spider;
        spider.name = e.kind == ElementKind::BellState ? "cup" : "cap";
        spider.ports = {src.atom_at(link.a), src.atom_at(link.b)};
        spider.effect = e.kind == ElementKind::BellEffect;
        spider.legs_in = e.kind == ElementKind::BellEffect ? 2 : 0;
        bell_index[e.ref] = out.nodes.size();
        out.nodes.push_back(std::move(spider));
        break;
      }
      case ElementKind::Stub:
        break;
    }
  };
  for (const auto& e : layout.state_row) add_element(e);
  for (const auto& e : layout.effect_row) add_element(e);

  std::map<std::size_t, std::size_t> slot_index;  // old slot -> new slot
  for (const auto& e : layout.effect_row) {
    if (e.kind != ElementKind::Stub) continue;
    slot_index[e.ref] = out.boundary.size();
    out.boundary.push_back(src.boundary.at(e.ref));
  }
  auto map_end = [&](PortRef p) {
    if (p.on_boundary()) return PortRef::boundary(slot_index.at(p.slot));
    return PortRef{node_index.at(p.node), p.slot};
  };

  for (std::size_t l = 0; l < src.links.size(); ++l) {
    const auto& link = src.links[l];
    auto bell = bell_index.find(l);
    if (bell != bell_index.end()) {
      out.links.push_back({{bell->second, 0}, map_end(link.a), LinkKind::Wire});
      out.links.push_back({{bell->second, 1}, map_end(link.b), LinkKind::Wire});
      continue;
    }
    out.links.push_back({map_end(link.a), map_end(link.b), link.kind});
  }
  return out;
}

std::size_t layout_width(const BigraphLayout& layout) {
  return row_keys(layout, true).size();
}

std::size_t ideal_width(const BigraphLayout& layout) {
  std::size_t width = 0;
  const std::set<std::size_t> dragged(layout.dragged.begin(), layout.dragged.end());
  for (std::size_t l = 0; l < layout.diagram.links.size(); ++l) {
    if (dragged.count(l)) continue;
    const auto& link = layout.diagram.links[l];
    width += link.a.on_boundary() && link.b.on_boundary() ? 2 : 1;
  }
  return width;
}

}  // namespace qnlp
