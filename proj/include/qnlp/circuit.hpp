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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnlp/tensor.hpp"

namespace qnlp {

enum class GateKind { H, RX, RZ, CNOT, CRZ, SWAP };

/// Rotation angle in radians: either a named parameter or a literal.
struct Angle {
  std::string symbol;
  double value = 0.0;

  static Angle literal(double radians) { return {{}, radians}; }
  static Angle param(std::string name) { return {std::move(name), 0.0}; }
  bool symbolic() const { return !symbol.empty(); }
  bool operator==(const Angle&) const = default;
};

struct Gate {
  GateKind kind = GateKind::H;
  std::array<std::size_t, 2> qubits{0, 0};
  Angle angle;

  std::size_t arity() const {
    return kind == GateKind::CNOT || kind == GateKind::CRZ ||
                   kind == GateKind::SWAP
               ? 2
               : 1;
  }
  bool parametric() const {
    return kind == GateKind::RX || kind == GateKind::RZ ||
           kind == GateKind::CRZ;
  }
  bool operator==(const Gate&) const = default;
};

/// Computational |0> / <0| or Pauli-X |+> / <+|.
enum class Basis { Zero, Plus };

/// Gate list over `n_qubits` wires. Prepared qubits are not inputs;
/// post-selected qubits are not outputs. Post-selection never renormalizes.
/// Inputs and outputs are ordered by qubit index.
struct Circuit {
  std::size_t n_qubits = 0;
  std::map<std::size_t, Basis> preps;
  std::vector<Gate> gates;
  std::map<std::size_t, Basis> postselects;
  cplx global_scalar{1.0, 0.0};

  explicit Circuit(std::size_t qubits = 0) : n_qubits(qubits) {}

  std::vector<std::size_t> inputs() const;
  std::vector<std::size_t> outputs() const;
  std::set<std::string> params() const;

  Circuit& h(std::size_t q);
  Circuit& rx(std::size_t q, Angle angle);
  Circuit& rz(std::size_t q, Angle angle);
  Circuit& cnot(std::size_t control, std::size_t target);
  Circuit& crz(std::size_t control, std::size_t target, Angle angle);
  Circuit& swap(std::size_t a, std::size_t b);
  Circuit& prep(std::size_t q, Basis basis = Basis::Zero);
  Circuit& post(std::size_t q, Basis basis = Basis::Zero);

  bool operator==(const Circuit&) const = default;
};

/// Parameter values plus the word -> template binding record.
class ParamStore {
 public:
  std::map<std::string, double> bindings;
  std::map<std::string, std::string> sharing;

  bool bound(const std::string& symbol) const {
    return bindings.count(symbol) != 0;
  }
  /// Throws UnboundParameter.
  double value(const Angle& angle) const;
  void bind(const std::string& symbol, double value) {
    bindings[symbol] = value;
  }
  /// Binds every symbol not yet bound to a uniform angle in [0, 2pi).
  void randomize_missing(const std::set<std::string>& symbols,
                         std::uint64_t seed);
  void zero_missing(const std::set<std::string>& symbols);

  bool operator==(const ParamStore&) const = default;
};

inline constexpr std::size_t kDefaultMaxQubits = 14;

/// Dense linear map of the circuit with axes [outputs..., inputs...], one
/// axis of extent 2 per qubit; qubit order within a block is index order
/// (first qubit most significant). Throws UnboundParameter, TooManyQubits.
Tensor simulate(const Circuit& c, const ParamStore& params,
                std::size_t max_qubits = kDefaultMaxQubits);

/// Exact derivative of `simulate` with respect to one parameter symbol.
Tensor simulate_derivative(const Circuit& c, const ParamStore& params,
                           const std::string& symbol,
                           std::size_t max_qubits = kDefaultMaxQubits);

struct Metrics {
  std::size_t width = 0;
  std::size_t depth = 0;
  std::size_t cnot_count = 0;
  std::size_t crz_count = 0;
  std::size_t swap_count = 0;
  std::size_t postselect_count = 0;
  /// CNOT = 1, CRZ = 2, SWAP = 3 entangling gates.
  std::size_t entangling_equiv = 0;
  /// Depth counting only entangling gates, weighted as above.
  std::size_t cnot_equiv_depth = 0;
};

Metrics metrics(const Circuit& c);

/// Copies `sub` into `dst`, sending sub qubit k to dst qubit `qubit_map[k]`.
/// Preparations, post-selections and the scalar carry over.
void append(Circuit& dst, const Circuit& sub,
            std::span<const std::size_t> qubit_map);

/// Places the live wire `wire_qubits[k]` on the k-th smallest output qubit
/// by emitting SWAP gates. `wire_qubits` must enumerate the output set.
void order_outputs(Circuit& c, std::vector<std::size_t> wire_qubits);

/// Sequential composition. `wiring` maps an output index of `a` to an input
/// index of `b`. Result inputs: a's inputs then b's unwired inputs; result
/// outputs: a's unwired outputs then b's outputs. Throws WiringMismatch.
Circuit compose(const Circuit& a, const Circuit& b,
                const std::map<std::size_t, std::size_t>& wiring);
/// Parallel composition; b's qubits follow a's.
Circuit tensor(const Circuit& a, const Circuit& b);

/// Prefixes every parameter symbol with `scope` + "@".
Circuit scoped(Circuit c, const std::string& scope);

/// Line-oriented text form; `from_qcir(to_qcir(c)) == c`.
std::string to_qcir(const Circuit& c);
/// Throws FormatError with a line position.
Circuit from_qcir(std::string_view text);

}  // namespace qnlp
