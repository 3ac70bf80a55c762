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

#include "qnlp/diagram.hpp"

#include <algorithm>
#include <utility>

#include "qnlp/errors.hpp"

namespace qnlp {

const TypedAtom& Diagram::atom_at(PortRef port) const {
  if (port.on_boundary()) return boundary.at(port.slot);
  return nodes.at(port.node).ports.at(port.slot);
}

std::size_t Diagram::dim_at(PortRef port) const {
  const auto& atom = atom_at(port);
  auto it = dims.find(atom.atom);
  if (it == dims.end()) {
    throw DimensionMismatch("no dimension for atom '" + atom.atom + "'");
  }
  return static_cast<std::size_t>(it->second);
}

std::vector<std::vector<std::size_t>> port_positions(const Diagram& d) {
  std::vector<std::vector<std::size_t>> out(d.nodes.size());
  std::size_t next = 0;
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    for (std::size_t s = 0; s < d.nodes[n].ports.size(); ++s) {
      out[n].push_back(next++);
    }
  }
  return out;
}

Diagram from_parse(std::span<const std::string> tokens, const Lexicon& lex,
                   const Reduction& reduction) {
  const auto atoms = sentence_atoms(tokens, lex);
  const auto problems =
      reduction_violations(atoms, reduction, lex.sentence_atom());
  if (!problems.empty()) {
    std::string msg = "invalid reduction:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InvalidReduction(msg);
  }

  Diagram d;
  d.dims = lex.atoms();
  std::vector<PortRef> owner;
  for (std::size_t w = 0; w < tokens.size(); ++w) {
    Node node;
    node.name = tokens[w];
    node.ports = lex.type_of(tokens[w]).atoms;
    for (std::size_t s = 0; s < node.ports.size(); ++s) owner.push_back({w, s});
    d.nodes.push_back(std::move(node));
  }
  for (const auto& [i, j] : reduction.caps) {
    d.links.push_back({owner[i], owner[j], LinkKind::Cap});
  }
  for (auto k : reduction.open) {
    d.links.push_back(
        {owner[k], PortRef::boundary(d.boundary.size()), LinkKind::Wire});
    d.boundary.push_back(atoms[k]);
  }
  return d;
}

namespace {

bool port_exists(const Diagram& d, PortRef p) {
  if (p.on_boundary()) return p.slot < d.boundary.size();
  return p.node < d.nodes.size() && p.slot < d.nodes[p.node].ports.size();
}

std::string describe(PortRef p) {
  if (p.on_boundary()) return "boundary[" + std::to_string(p.slot) + "]";
  return "node " + std::to_string(p.node) + " port " + std::to_string(p.slot);
}

}  // namespace

std::vector<std::string> validate(const Diagram& d) {
  std::vector<std::string> out;
  for (const auto& [atom, dim] : d.dims) {
    if (dim < 1) out.push_back("dimension of '" + atom + "' not positive");
  }
  auto check_dim = [&](const TypedAtom& a, const std::string& where) {
    if (d.dims.count(a.atom) == 0) {
      out.push_back(where + ": missing dimension for '" + a.atom + "'");
    }
  };
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    const auto& node = d.nodes[n];
    for (const auto& p : node.ports) check_dim(p, "node " + std::to_string(n));
    if (node.kind == NodeKind::Spider) {
      if (node.legs_in > node.ports.size()) {
        out.push_back("node " + std::to_string(n) + ": spider legs_in exceeds arity");
      }
      for (const auto& p : node.ports) {
        if (p.atom != node.ports.front().atom) {
          out.push_back("node " + std::to_string(n) + ": spider atoms differ");
          break;
        }
      }
    }
  }
  for (std::size_t b = 0; b < d.boundary.size(); ++b) {
    check_dim(d.boundary[b], "boundary[" + std::to_string(b) + "]");
  }

  std::map<PortRef, int> uses;
  for (std::size_t l = 0; l < d.links.size(); ++l) {
    const auto& link = d.links[l];
    const std::string where = "link " + std::to_string(l);
    if (!port_exists(d, link.a) || !port_exists(d, link.b)) {
      out.push_back(where + ": port out of range");
      continue;
    }
    if (link.a == link.b) {
      out.push_back(where + ": links a port to itself");
      continue;
    }
    ++uses[link.a];
    ++uses[link.b];
    const auto& a = d.atom_at(link.a);
    const auto& b = d.atom_at(link.b);
    if (a.atom != b.atom) {
      out.push_back(where + ": atom mismatch " + to_string(a) + " / " +
                    to_string(b));
      continue;
    }
    bool ok = true;
    switch (link.kind) {
      case LinkKind::Cap:
        ok = a.winding + 1 == b.winding;
        break;
      case LinkKind::Cup:
        ok = a.winding == b.winding + 1;
        break;
      case LinkKind::Wire:
        ok = a.winding == b.winding;
        break;
    }
    if (!ok) {
      out.push_back(where + ": winding mismatch " + to_string(a) + " / " +
                    to_string(b));
    }
  }
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    for (std::size_t s = 0; s < d.nodes[n].ports.size(); ++s) {
      const int count = uses.count({n, s}) ? uses[{n, s}] : 0;
      if (count != 1) {
        out.push_back(describe({n, s}) + " used by " + std::to_string(count) +
                      " links");
      }
    }
  }
  for (std::size_t b = 0; b < d.boundary.size(); ++b) {
    const int count =
        uses.count(PortRef::boundary(b)) ? uses[PortRef::boundary(b)] : 0;
    if (count != 1) {
      out.push_back(describe(PortRef::boundary(b)) + " used by " +
                    std::to_string(count) + " links");
    }
  }

  if (!d.symmetric) {
    // Unfold the disc: top ports left to right, then the boundary right to
    // left. A planar diagram is a noncrossing arc system on that circle.
    const auto positions = port_positions(d);
    std::size_t total = 0;
    for (const auto& node : d.nodes) total += node.ports.size();
    auto pos = [&](PortRef p) {
      if (p.on_boundary()) return total + (d.boundary.size() - 1 - p.slot);
      return positions[p.node][p.slot];
    };
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (const auto& link : d.links) {
      if (!port_exists(d, link.a) || !port_exists(d, link.b)) continue;
      auto lo = pos(link.a), hi = pos(link.b);
      if (lo > hi) std::swap(lo, hi);
      arcs.emplace_back(lo, hi);
    }
    bool crossing = false;
    for (const auto& [i, j] : arcs) {
      for (const auto& [k, l] : arcs) {
        if (i < k && k < j && j < l) crossing = true;
      }
    }
    if (crossing) out.push_back("planarity: links cross in a non-symmetric diagram");
  }
  return out;
}

Tensor contract(const Diagram& d, const WordEmbedding& embedding) {
  std::map<PortRef, int> label_of;
  std::vector<LabeledTensor> factors;
  int next_label = static_cast<int>(d.links.size());
  std::vector<int> output(d.boundary.size(), -1);
  for (std::size_t l = 0; l < d.links.size(); ++l) {
    const auto& link = d.links[l];
    if (d.dim_at(link.a) != d.dim_at(link.b)) {
      throw DimensionMismatch("link " + std::to_string(l) +
                              " joins different dimensions");
    }
    if (link.a.on_boundary() && link.b.on_boundary()) {
      // Open cup: an identity factor between two output axes.
      const int la = next_label++, lb = next_label++;
      factors.push_back({Tensor::delta(2, d.dim_at(link.a)), {la, lb}});
      output.at(link.a.slot) = la;
      output.at(link.b.slot) = lb;
      continue;
    }
    label_of[link.a] = static_cast<int>(l);
    label_of[link.b] = static_cast<int>(l);
  }
  for (std::size_t b = 0; b < d.boundary.size(); ++b) {
    if (output[b] >= 0) continue;
    auto it = label_of.find(PortRef::boundary(b));
    if (it == label_of.end()) {
      throw InvalidDiagram("boundary slot " + std::to_string(b) + " is unlinked");
    }
    output[b] = it->second;
  }

  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    const auto& node = d.nodes[n];
    std::vector<int> labels;
    std::vector<std::size_t> shape;
    for (std::size_t s = 0; s < node.ports.size(); ++s) {
      auto it = label_of.find({n, s});
      if (it == label_of.end()) {
        throw InvalidDiagram(describe({n, s}) + " is unlinked");
      }
      labels.push_back(it->second);
      shape.push_back(d.dim_at({n, s}));
    }
    if (node.kind == NodeKind::Spider) {
      const std::size_t dim = shape.empty() ? 1 : shape.front();
      factors.push_back({Tensor::delta(shape.size(), dim), std::move(labels)});
      continue;
    }
    auto it = embedding.find(node.name);
    if (it == embedding.end()) throw MissingEmbedding(node.name);
    if (it->second.shape() != shape) {
      throw DimensionMismatch("embedding of '" + node.name +
                              "' has the wrong shape for its type");
    }
    factors.push_back({it->second, std::move(labels)});
  }
  return contract_network(std::move(factors), output);
}

Diagram transpose_word(Diagram d, std::size_t node) {
  d.nodes.at(node).effect = !d.nodes.at(node).effect;
  return d;
}

std::vector<std::vector<std::size_t>> atom_groups(const std::vector<TypedAtom>& ports) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::string> names;
  for (std::size_t s = 0; s < ports.size(); ++s) {
    const auto it = std::find(names.begin(), names.end(), ports[s].atom);
    if (it == names.end()) {
      names.push_back(ports[s].atom);
      groups.push_back({s});
    } else {
      groups[static_cast<std::size_t>(it - names.begin())].push_back(s);
    }
  }
  return groups;
}

Tensor group_delta(const std::vector<std::size_t>& shape,
                   const std::vector<std::vector<std::size_t>>& groups) {
  Tensor t(shape);
  std::vector<std::size_t> index(shape.size(), 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    bool one = true;
    for (const auto& g : groups) {
      for (auto s : g) one = one && index[s] == index[g.front()];
    }
    if (one) t[flat] = 1.0;
    for (std::size_t k = shape.size(); k-- > 0;) {
      if (++index[k] < shape[k]) break;
      index[k] = 0;
    }
  }
  return t;
}

}  // namespace qnlp
