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

#include "qnlp/compiler.hpp"

#include <algorithm>
#include <numeric>

#include "qnlp/errors.hpp"

namespace qnlp {

std::size_t qubits_for(const std::string& atom,
                       const std::map<std::string, int>& dims,
                       const CompileConfig& cfg) {
  auto dim_it = dims.find(atom);
  if (dim_it == dims.end()) {
    throw DimensionMismatch("no dimension for atom '" + atom + "'");
  }
  const auto dim = static_cast<std::size_t>(dim_it->second);
  auto q_it = cfg.qubits.find(atom);
  if (q_it != cfg.qubits.end()) {
    if (q_it->second == 0 || (std::size_t{1} << q_it->second) != dim) {
      throw DimensionMismatch("atom '" + atom + "' has dimension " +
                              std::to_string(dim) + " but is assigned " +
                              std::to_string(q_it->second) + " qubits");
    }
    return q_it->second;
  }
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw NonPowerOfTwoDim("atom '" + atom + "' has dimension " +
                           std::to_string(dim) + ", not a power of two");
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

std::size_t layers_for(std::size_t arity, const CompileConfig& cfg) {
  auto it = cfg.layers_by_arity.find(arity);
  const std::size_t layers = it != cfg.layers_by_arity.end() ? it->second : arity;
  return std::max<std::size_t>(layers, 1);
}

namespace {

std::size_t total_qubits(const std::vector<TypedAtom>& atoms,
                         const std::map<std::string, int>& dims,
                         const CompileConfig& cfg) {
  std::size_t q = 0;
  for (const auto& a : atoms) q += qubits_for(a.atom, dims, cfg);
  return q;
}

/// Qubits per leg of a delta over `atoms`. Throws DimensionMismatch.
std::size_t spider_leg_qubits(const std::string& name,
                              const std::vector<TypedAtom>& atoms,
                              const std::map<std::string, int>& dims,
                              const CompileConfig& cfg) {
  if (atoms.empty()) throw ArityMismatch("spider '" + name + "' has no legs");
  const std::size_t q = qubits_for(atoms.front().atom, dims, cfg);
  for (const auto& a : atoms) {
    if (qubits_for(a.atom, dims, cfg) != q) {
      throw DimensionMismatch("spider '" + name + "' joins legs of different dimension");
    }
  }
  return q;
}

bool is_functional(const Node& node, const CompileConfig& cfg) {
  return node.kind == NodeKind::Word && cfg.functional_words.count(node.name) != 0;
}

bool is_functional(const ProcessNode& p, const CompileConfig& cfg) {
  return p.kind == NodeKind::Word && cfg.functional_words.count(p.word) != 0;
}

/// One spider per atom group over `ports`, all legs outputs (a state) or all
/// inputs (an effect); port p owns the qubits [off[p], off[p + 1]).
Circuit group_spiders(const std::vector<TypedAtom>& ports, const std::vector<std::size_t>& off,
                      bool state) {
  Circuit c(off.back());
  for (const auto& group : atom_groups(ports)) {
    const std::size_t q = off[group.front() + 1] - off[group.front()];
    const Circuit sub = state ? spider_circuit(0, group.size(), q) : spider_circuit(group.size(), 0, q);
    std::vector<std::size_t> map;
    for (auto slot : group) {
      for (std::size_t b = 0; b < q; ++b) map.push_back(off[slot] + b);
    }
    append(c, sub, map);
  }
  return c;
}

std::vector<TypedAtom> legs_of(const ProcessNode& p) {
  auto out = p.inputs;
  out.insert(out.end(), p.outputs.begin(), p.outputs.end());
  return out;
}

}  // namespace

AnsatzSpec state_spec(const std::vector<TypedAtom>& type,
                      const std::map<std::string, int>& dims,
                      const CompileConfig& cfg) {
  return {cfg.family, total_qubits(type, dims, cfg), layers_for(type.size(), cfg)};
}

AnsatzSpec process_spec(const ProcessNode& process,
                        const std::map<std::string, int>& dims,
                        const CompileConfig& cfg) {
  const std::size_t k_in = total_qubits(process.inputs, dims, cfg);
  const std::size_t k_out = total_qubits(process.outputs, dims, cfg);
  return {cfg.family, std::max(k_in, k_out),
          layers_for(process.inputs.size() + process.outputs.size(), cfg)};
}

std::string word_symbol(const std::string& word, const std::string& slot) {
  return word + "@" + slot;
}

namespace {

bool process_form_uses_linear_map(const CompileConfig& cfg, EmbeddingForm form) {
  return form == EmbeddingForm::Process && cfg.process_mode == ProcessMode::LinearMap;
}

}  // namespace

std::set<std::string> required_symbols(const Diagram& d, const CompileConfig& cfg,
                                       EmbeddingForm form) {
  std::set<std::string> out;
  for (const auto& node : d.nodes) {
    if (node.kind == NodeKind::Spider || is_functional(node, cfg) || node.ports.empty()) continue;
    const AnsatzSpec spec = process_form_uses_linear_map(cfg, form)
                                ? process_spec(autonomise(node), d.dims, cfg)
                                : state_spec(node.ports, d.dims, cfg);
    if (spec.qubits == 0) continue;
    for (const auto& slot : spec.param_slots()) out.insert(word_symbol(node.name, slot));
  }
  return out;
}

std::map<std::string, std::string> sharing_record(const Diagram& d,
                                                  const CompileConfig& cfg) {
  std::map<std::string, std::string> out;
  for (const auto& node : d.nodes) {
    if (node.kind != NodeKind::Word) continue;
    out[node.name] = cfg.sharing == Sharing::PerPos
                         ? to_string(PregroupType{node.ports})
                         : node.name;
  }
  return out;
}

CompiledCircuit compile_bigraph(const BigraphLayout& layout,
                                const CompileConfig& cfg) {
  const Diagram& d = layout.diagram;
  const auto s_keys = row_keys(layout, true);
  const auto e_keys = row_keys(layout, false);
  auto offsets = [&](const std::vector<AttachKey>& keys) {
    std::vector<std::size_t> off(keys.size() + 1, 0);
    for (std::size_t k = 0; k < keys.size(); ++k) {
      off[k + 1] = off[k] + qubits_for(key_atom(d, keys[k]).atom, d.dims, cfg);
    }
    return off;
  };
  const auto s_off = offsets(s_keys);
  const auto e_off = offsets(e_keys);
  if (s_off.back() != e_off.back()) {
    throw WiringMismatch("state and effect rows carry different qubit counts");
  }
  Circuit c(s_off.back());

  // Emits `sub` for one row element; element port p owns the sub-circuit
  // qubits [sub_off[p], sub_off[p + 1]).
  auto place = [&](const Circuit& sub, const std::vector<std::size_t>& sub_off,
                   const RowElement& e, std::size_t first_pos,
                   const std::vector<std::size_t>& row_off) {
    const std::size_t size = sub_off.size() - 1;
    std::vector<std::size_t> map(sub.n_qubits);
    for (std::size_t p = 0; p < size; ++p) {
      const std::size_t pos = first_pos + (e.flipped ? size - 1 - p : p);
      for (std::size_t b = 0; b < sub_off[p + 1] - sub_off[p]; ++b) {
        map[sub_off[p] + b] = row_off[pos] + b;
      }
    }
    append(c, sub, map);
  };
  auto port_offsets = [&](const std::vector<TypedAtom>& atoms) {
    std::vector<std::size_t> off(atoms.size() + 1, 0);
    for (std::size_t p = 0; p < atoms.size(); ++p) {
      off[p + 1] = off[p] + qubits_for(atoms[p].atom, d.dims, cfg);
    }
    return off;
  };

  auto emit_row = [&](bool state_row) {
    const auto& row = state_row ? layout.state_row : layout.effect_row;
    const auto& row_off = state_row ? s_off : e_off;
    std::size_t pos = 0;
    for (const auto& e : row) {
      switch (e.kind) {
        case ElementKind::Word: {
          const Node& node = d.nodes.at(e.ref);
          if (!node.ports.empty()) {
            const auto off = port_offsets(node.ports);
            Circuit sub;
            if (node.kind == NodeKind::Spider) {
              const std::size_t q = spider_leg_qubits(node.name, node.ports, d.dims, cfg);
              sub = state_row ? spider_circuit(0, node.ports.size(), q)
                              : spider_circuit(node.ports.size(), 0, q);
            } else if (is_functional(node, cfg)) {
              sub = group_spiders(node.ports, off, state_row);
            } else {
              const AnsatzSpec spec = state_spec(node.ports, d.dims, cfg);
              sub = scoped(state_row ? state_ansatz(spec) : effect_ansatz(spec), node.name);
            }
            place(sub, off, e, pos, row_off);
          }
          pos += node.ports.size();
          break;
        }
        case ElementKind::BellState:
        case ElementKind::BellEffect: {
          const auto& link = d.links.at(e.ref);
          const std::size_t q = qubits_for(d.atom_at(link.a).atom, d.dims, cfg);
          const Circuit sub = e.kind == ElementKind::BellState ? bell_state(q) : bell_effect(q);
          place(sub, {0, q, 2 * q}, e, pos, row_off);
          pos += 2;
          break;
        }
        case ElementKind::Stub:
          pos += 1;
          break;
      }
    }
  };

  emit_row(true);

  // Route every state-row qubit to its effects-row qubit with adjacent swaps.
  std::vector<std::size_t> target(c.n_qubits);
  for (const auto& edge : layout_edges(layout)) {
    const std::size_t q = s_off[edge.state_pos + 1] - s_off[edge.state_pos];
    for (std::size_t b = 0; b < q; ++b) {
      target[s_off[edge.state_pos] + b] = e_off[edge.effect_pos] + b;
    }
  }
  for (bool sorted = false; !sorted;) {
    sorted = true;
    for (std::size_t i = 0; i + 1 < target.size(); ++i) {
      if (target[i] > target[i + 1]) {
        c.swap(i, i + 1);
        std::swap(target[i], target[i + 1]);
        sorted = false;
      }
    }
  }

  emit_row(false);
  return {std::move(c), layout.boundary_perm()};
}

CompiledCircuit compile_snake(const SnakeFreeDiagram& s, const CompileConfig& cfg) {
  Circuit c;
  auto fresh = [&](std::size_t count) {
    std::vector<std::size_t> out(count);
    std::iota(out.begin(), out.end(), c.n_qubits);
    c.n_qubits += count;
    return out;
  };
  std::map<ProcessPort, ProcessPort> source;  // consumer leg -> producer leg
  for (const auto& w : s.wires) source[w.to] = w.from;
  std::map<ProcessPort, std::vector<std::size_t>> live;  // producer leg -> qubits
  auto incoming = [&](ProcessPort consumer) {
    auto it = source.find(consumer);
    if (it == source.end()) {
      throw WiringMismatch("input leg " + std::to_string(consumer.leg) + " of process " +
                           std::to_string(consumer.process) + " is unwired");
    }
    return live.at(it->second);
  };
  auto q_of = [&](const TypedAtom& a) { return qubits_for(a.atom, s.dims, cfg); };

  for (std::size_t p = 0; p < s.processes.size(); ++p) {
    const auto& proc = s.processes[p];
    std::vector<std::size_t> in_qubits;
    for (std::size_t j = 0; j < proc.inputs.size(); ++j) {
      const auto blk = incoming({p, j});
      in_qubits.insert(in_qubits.end(), blk.begin(), blk.end());
    }

    if (proc.kind == NodeKind::Spider || is_functional(proc, cfg)) {
      // One spider per atom group; a spider process is a single group.
      const auto legs = legs_of(proc);
      const auto groups = proc.kind == NodeKind::Spider
                              ? std::vector<std::vector<std::size_t>>{[&] {
                                  std::vector<std::size_t> all(legs.size());
                                  std::iota(all.begin(), all.end(), 0);
                                  return all;
                                }()}
                              : atom_groups(legs);
      if (proc.kind == NodeKind::Spider) spider_leg_qubits(proc.word, legs, s.dims, cfg);
      const std::size_t n_in = proc.inputs.size();
      for (const auto& group : groups) {
        const std::size_t q = q_of(legs[group.front()]);
        std::vector<std::size_t> map;
        std::size_t m = 0;
        for (auto leg : group) {
          if (leg >= n_in) continue;
          const auto blk = incoming({p, leg});
          map.insert(map.end(), blk.begin(), blk.end());
          ++m;
        }
        const Circuit sub = spider_circuit(m, group.size() - m, q);
        const auto extra = fresh(sub.n_qubits - map.size());
        map.insert(map.end(), extra.begin(), extra.end());
        append(c, sub, map);
        const auto outs = sub.outputs();
        std::size_t k = 0;
        for (auto leg : group) {
          if (leg < n_in) continue;
          std::vector<std::size_t> blk;
          for (std::size_t b = 0; b < q; ++b) blk.push_back(map[outs[k * q + b]]);
          live[{p, leg - n_in}] = blk;
          ++k;
        }
      }
      continue;
    }

    if (cfg.process_mode == ProcessMode::LinearMap) {
      const AnsatzSpec spec = process_spec(proc, s.dims, cfg);
      std::size_t k_out = 0;
      for (const auto& a : proc.outputs) k_out += q_of(a);
      if (spec.qubits == 0) continue;
      const Circuit sub =
          scoped(linear_map_ansatz(spec, in_qubits.size(), k_out), proc.word);
      std::vector<std::size_t> map = in_qubits;
      const auto extra = fresh(spec.qubits - in_qubits.size());
      map.insert(map.end(), extra.begin(), extra.end());
      append(c, sub, map);
      std::size_t at = 0;
      for (std::size_t j = 0; j < proc.outputs.size(); ++j) {
        std::vector<std::size_t> blk;
        for (std::size_t b = 0; b < q_of(proc.outputs[j]); ++b) blk.push_back(map[at++]);
        live[{p, j}] = blk;
      }
      continue;
    }

    // Bent state: the unbent word state, bent legs capped onto the inputs.
    std::vector<TypedAtom> type(proc.inputs.size() + proc.outputs.size());
    for (std::size_t j = 0; j < proc.outputs.size(); ++j) type.at(proc.output_ports[j]) = proc.outputs[j];
    for (std::size_t j = 0; j < proc.inputs.size(); ++j) type.at(proc.input_ports[j]) = proc.inputs[j];
    if (type.empty()) continue;
    const AnsatzSpec spec = state_spec(type, s.dims, cfg);
    const auto qubits = fresh(spec.qubits);
    append(c, scoped(state_ansatz(spec), proc.word), qubits);
    std::vector<std::size_t> slot_off(type.size() + 1, 0);
    for (std::size_t k = 0; k < type.size(); ++k) slot_off[k + 1] = slot_off[k] + q_of(type[k]);
    auto slot_block = [&](std::size_t slot) {
      return std::vector<std::size_t>(qubits.begin() + static_cast<std::ptrdiff_t>(slot_off[slot]),
                                      qubits.begin() + static_cast<std::ptrdiff_t>(slot_off[slot + 1]));
    };
    for (std::size_t j = 0; j < proc.inputs.size(); ++j) {
      auto map = slot_block(proc.input_ports[j]);
      const auto blk = incoming({p, j});
      map.insert(map.end(), blk.begin(), blk.end());
      append(c, bell_effect(q_of(proc.inputs[j])), map);
    }
    for (std::size_t j = 0; j < proc.outputs.size(); ++j) {
      live[{p, j}] = slot_block(proc.output_ports[j]);
    }
  }

  std::vector<std::size_t> order;
  for (std::size_t b = 0; b < s.boundary.size(); ++b) {
    const auto blk = incoming({kBoundary, b});
    order.insert(order.end(), blk.begin(), blk.end());
  }
  order_outputs(c, order);
  std::vector<std::size_t> perm(s.boundary.size());
  std::iota(perm.begin(), perm.end(), 0);
  return {std::move(c), std::move(perm)};
}

WordEmbedding embedding_of(const Diagram& d, const CompileConfig& cfg,
                           const ParamStore& params, EmbeddingForm form) {
  WordEmbedding out;
  for (const auto& node : d.nodes) {
    if (node.kind != NodeKind::Word || out.count(node.name)) continue;
    std::vector<std::size_t> shape;
    for (const auto& a : node.ports) shape.push_back(std::size_t{1} << qubits_for(a.atom, d.dims, cfg));
    if (node.ports.empty()) {
      out[node.name] = Tensor::scalar(1.0);
      continue;
    }
    if (is_functional(node, cfg)) {
      out[node.name] = group_delta(shape, atom_groups(node.ports));
      continue;
    }
    if (!process_form_uses_linear_map(cfg, form)) {
      const Circuit sc = scoped(state_ansatz(state_spec(node.ports, d.dims, cfg)), node.name);
      out[node.name] = simulate(sc, params).reshaped(shape);
      continue;
    }
    const ProcessNode proc = autonomise(node);
    const AnsatzSpec spec = process_spec(proc, d.dims, cfg);
    std::size_t k_in = 0, k_out = 0;
    for (const auto& a : proc.inputs) k_in += qubits_for(a.atom, d.dims, cfg);
    for (const auto& a : proc.outputs) k_out += qubits_for(a.atom, d.dims, cfg);
    const Circuit sc = scoped(linear_map_ansatz(spec, k_in, k_out), node.name);
    // Axes [outputs..., inputs...] per leg, then back to type order.
    std::vector<std::size_t> leg_shape, order(node.ports.size());
    for (auto slot : proc.output_ports) leg_shape.push_back(shape[slot]);
    for (auto slot : proc.input_ports) leg_shape.push_back(shape[slot]);
    for (std::size_t j = 0; j < proc.output_ports.size(); ++j) order[proc.output_ports[j]] = j;
    for (std::size_t j = 0; j < proc.input_ports.size(); ++j) {
      order[proc.input_ports[j]] = proc.output_ports.size() + j;
    }
    out[node.name] = simulate(sc, params).reshaped(leg_shape).permuted(order);
  }
  return out;
}

}  // namespace qnlp
