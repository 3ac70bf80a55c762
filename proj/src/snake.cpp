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

#include "qnlp/snake.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "qnlp/errors.hpp"

namespace qnlp {

ProcessNode autonomise(const Node& node) {
  ProcessNode p;
  p.kind = node.kind;
  p.word = node.name;
  auto plain = [](TypedAtom a) {
    a.winding = 0;
    return a;
  };
  if (node.kind == NodeKind::Spider) {
    for (std::size_t s = 0; s < node.ports.size(); ++s) {
      auto& atoms = s < node.legs_in ? p.inputs : p.outputs;
      auto& slots = s < node.legs_in ? p.input_ports : p.output_ports;
      atoms.push_back(plain(node.ports[s]));
      slots.push_back(s);
    }
    return p;
  }
  for (std::size_t s = 0; s < node.ports.size(); ++s) {
    if (node.ports[s].winding == 0) {
      p.outputs.push_back(node.ports[s]);
      p.output_ports.push_back(s);
    }
  }
  for (std::size_t s = node.ports.size(); s-- > 0;) {
    if (node.ports[s].winding != 0) {
      p.inputs.push_back(plain(node.ports[s]));
      p.input_ports.push_back(s);
    }
  }
  return p;
}

namespace {

/// Role of a diagram port after autonomisation: a producing output leg or a
/// consuming input leg (the boundary consumes).
struct Role {
  bool produces = false;
  ProcessPort port;
};

ProcessNode bell_process(const TypedAtom& atom, bool cup) {
  ProcessNode p;
  p.kind = NodeKind::Spider;
  p.word = cup ? "cup" : "cap";
  TypedAtom plain = atom;
  plain.winding = 0;
  if (cup) {
    p.outputs = {plain, plain};
    p.output_ports = {0, 1};
  } else {
    p.inputs = {plain, plain};
    p.input_ports = {0, 1};
  }
  return p;
}

}  // namespace

SnakeFreeDiagram snake_removal(const Diagram& d, const std::set<std::string>& functional) {
  const auto problems = validate(d);
  if (!problems.empty()) {
    std::string msg = "invalid diagram:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InvalidDiagram(msg);
  }

  auto flexible = [&](std::size_t n) {
    return d.nodes[n].kind == NodeKind::Word && functional.count(d.nodes[n].name) != 0;
  };
  std::vector<ProcessNode> procs;
  std::vector<std::vector<Role>> roles(d.nodes.size());
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    roles[n].resize(d.nodes[n].ports.size());
    if (flexible(n)) continue;
    const std::size_t index = procs.size();
    procs.push_back(autonomise(d.nodes[n]));
    const auto& p = procs.back();
    for (std::size_t j = 0; j < p.outputs.size(); ++j) {
      roles[n][p.output_ports[j]] = {true, {index, j}};
    }
    for (std::size_t j = 0; j < p.inputs.size(); ++j) {
      roles[n][p.input_ports[j]] = {false, {index, j}};
    }
  }

  // Spider legs of functional words take the role opposite to their
  // partner; between two spider legs the earlier port produces.
  auto is_flexible = [&](PortRef p) { return !p.on_boundary() && flexible(p.node); };
  for (const auto& link : d.links) {
    const bool fa = is_flexible(link.a), fb = is_flexible(link.b);
    if (fa && fb) {
      const bool a_first = link.a < link.b;
      roles[link.a.node][link.a.slot].produces = a_first || link.a.node == link.b.node;
      roles[link.b.node][link.b.slot].produces = !a_first || link.a.node == link.b.node;
    } else if (fa) {
      const bool partner = link.b.on_boundary() ? false : roles[link.b.node][link.b.slot].produces;
      roles[link.a.node][link.a.slot].produces = !partner;
    } else if (fb) {
      const bool partner = link.a.on_boundary() ? false : roles[link.a.node][link.a.slot].produces;
      roles[link.b.node][link.b.slot].produces = !partner;
    }
  }
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    if (!flexible(n)) continue;
    for (const auto& group : atom_groups(d.nodes[n].ports)) {
      const std::size_t index = procs.size();
      ProcessNode p;
      p.kind = NodeKind::Spider;
      p.word = d.nodes[n].name;
      TypedAtom atom = d.nodes[n].ports[group.front()];
      atom.winding = 0;
      for (auto slot : group) {
        if (!roles[n][slot].produces) p.inputs.push_back(atom);
      }
      for (auto slot : group) {
        if (roles[n][slot].produces) p.outputs.push_back(atom);
      }
      std::size_t in = 0, out = 0;
      for (auto slot : group) {
        auto& r = roles[n][slot];
        r.port = {index, r.produces ? out++ : in++};
      }
      for (std::size_t j = 0; j < p.inputs.size(); ++j) p.input_ports.push_back(j);
      for (std::size_t j = 0; j < p.outputs.size(); ++j) p.output_ports.push_back(p.inputs.size() + j);
      procs.push_back(std::move(p));
    }
  }
  auto role_of = [&](PortRef p) -> Role {
    if (p.on_boundary()) return {false, {kBoundary, p.slot}};
    return roles[p.node][p.slot];
  };

  std::vector<SnakeWire> wires;
  for (const auto& link : d.links) {
    const Role a = role_of(link.a), b = role_of(link.b);
    if (a.produces != b.produces) {
      wires.push_back(a.produces ? SnakeWire{a.port, b.port} : SnakeWire{b.port, a.port});
    } else if (!a.produces) {
      const std::size_t cup = procs.size();
      procs.push_back(bell_process(d.atom_at(link.a), true));
      wires.push_back({{cup, 0}, a.port});
      wires.push_back({{cup, 1}, b.port});
    } else {
      const std::size_t cap = procs.size();
      procs.push_back(bell_process(d.atom_at(link.a), false));
      wires.push_back({a.port, {cap, 0}});
      wires.push_back({b.port, {cap, 1}});
    }
  }

  // Kahn's algorithm, lowest index first.
  const std::size_t n = procs.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& w : wires) {
    if (w.to.on_boundary()) continue;
    succ[w.from.process].push_back(w.to.process);
    ++indegree[w.to.process];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order, rank(n);
  while (!ready.empty()) {
    const std::size_t u = ready.top();
    ready.pop();
    rank[u] = order.size();
    order.push_back(u);
    for (auto v : succ[u]) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (order.size() != n) {
    throw CyclicWiring("autonomised words feed each other in a cycle; use the bigraph method");
  }

  SnakeFreeDiagram out;
  out.dims = d.dims;
  for (auto v : order) out.processes.push_back(std::move(procs[v]));
  for (auto w : wires) {
    w.from.process = rank[w.from.process];
    if (!w.to.on_boundary()) w.to.process = rank[w.to.process];
    out.wires.push_back(w);
  }
  std::sort(out.wires.begin(), out.wires.end(), [](const auto& x, const auto& y) {
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });
  for (auto atom : d.boundary) {
    atom.winding = 0;
    out.boundary.push_back(atom);
  }
  return out;
}

Diagram to_diagram(const SnakeFreeDiagram& s) {
  Diagram d;
  d.dims = s.dims;
  d.symmetric = true;
  d.boundary = s.boundary;
  for (const auto& p : s.processes) {
    Node node;
    node.kind = p.kind;
    node.name = p.word;
    node.ports.resize(p.inputs.size() + p.outputs.size());
    for (std::size_t j = 0; j < p.outputs.size(); ++j) {
      node.ports.at(p.output_ports[j]) = p.outputs[j];
    }
    for (std::size_t j = 0; j < p.inputs.size(); ++j) {
      TypedAtom bent = p.inputs[j];
      if (p.kind == NodeKind::Word) bent.winding = -1;
      node.ports.at(p.input_ports[j]) = bent;
    }
    node.legs_in = p.kind == NodeKind::Spider ? p.inputs.size() : 0;
    d.nodes.push_back(std::move(node));
  }
  auto port_of = [&](const ProcessPort& pp, bool output) {
    if (pp.on_boundary()) return PortRef::boundary(pp.leg);
    const auto& p = s.processes.at(pp.process);
    return PortRef{pp.process, output ? p.output_ports.at(pp.leg) : p.input_ports.at(pp.leg)};
  };
  for (const auto& w : s.wires) {
    const PortRef from = port_of(w.from, true), to = port_of(w.to, false);
    const int wf = d.atom_at(from).winding, wt = d.atom_at(to).winding;
    if (wf == wt) {
      d.links.push_back({from, to, LinkKind::Wire});
    } else if (wt + 1 == wf) {
      d.links.push_back({to, from, LinkKind::Cap});
    } else {
      d.links.push_back({from, to, LinkKind::Cap});
    }
  }
  return d;
}

Tensor evaluate(const SnakeFreeDiagram& s, const WordEmbedding& embedding) {
  std::map<ProcessPort, int> out_label, in_label;
  for (std::size_t w = 0; w < s.wires.size(); ++w) {
    const auto& wire = s.wires[w];
    if (!out_label.emplace(wire.from, static_cast<int>(w)).second ||
        !in_label.emplace(wire.to, static_cast<int>(w)).second) {
      throw InvalidDiagram("leg used by two wires");
    }
  }
  auto dim_of = [&](const TypedAtom& atom) {
    auto it = s.dims.find(atom.atom);
    if (it == s.dims.end()) {
      throw DimensionMismatch("no dimension for atom '" + atom.atom + "'");
    }
    return static_cast<std::size_t>(it->second);
  };
  auto label = [](const std::map<ProcessPort, int>& table, ProcessPort pp) {
    auto it = table.find(pp);
    if (it == table.end()) {
      throw InvalidDiagram("unwired leg " + std::to_string(pp.leg) + " of process " +
                           std::to_string(pp.process));
    }
    return it->second;
  };

  std::vector<LabeledTensor> factors;
  for (std::size_t p = 0; p < s.processes.size(); ++p) {
    const auto& proc = s.processes[p];
    const std::size_t rank = proc.inputs.size() + proc.outputs.size();
    std::vector<int> labels(rank);
    std::vector<std::size_t> shape(rank);
    for (std::size_t j = 0; j < proc.outputs.size(); ++j) {
      labels.at(proc.output_ports[j]) = label(out_label, {p, j});
      shape.at(proc.output_ports[j]) = dim_of(proc.outputs[j]);
    }
    for (std::size_t j = 0; j < proc.inputs.size(); ++j) {
      labels.at(proc.input_ports[j]) = label(in_label, {p, j});
      shape.at(proc.input_ports[j]) = dim_of(proc.inputs[j]);
    }
    if (proc.kind == NodeKind::Spider) {
      factors.push_back({Tensor::delta(rank, rank ? shape.front() : 1), labels});
      continue;
    }
    auto it = embedding.find(proc.word);
    if (it == embedding.end()) throw MissingEmbedding(proc.word);
    if (it->second.shape() != shape) {
      throw DimensionMismatch("embedding of '" + proc.word +
                              "' has the wrong shape for its type");
    }
    factors.push_back({it->second, labels});
  }
  std::vector<int> output;
  for (std::size_t b = 0; b < s.boundary.size(); ++b) {
    output.push_back(label(in_label, {kBoundary, b}));
  }
  return contract_network(std::move(factors), output);
}

std::size_t bell_process_count(const SnakeFreeDiagram& s) {
  return static_cast<std::size_t>(std::count_if(
      s.processes.begin(), s.processes.end(), [](const ProcessNode& p) {
        return p.kind == NodeKind::Spider && (p.word == "cup" || p.word == "cap");
      }));
}

}  // namespace qnlp
