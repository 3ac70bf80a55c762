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
#include <string>
#include <vector>

#include "qnlp/circuit.hpp"

namespace qnlp {

enum class AnsatzFamily { CnotU3, Iqp };

std::string to_string(AnsatzFamily family);
/// Accepts "cnotu3" and "iqp". Throws FormatError.
AnsatzFamily parse_family(const std::string& text);

/// A parameterized unitary template. Slot identifiers have the form
/// "family/qubits/layers/index".
struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::CnotU3;
  std::size_t qubits = 1;
  std::size_t layers = 1;

  /// CnotU3: 2 * qubits * layers. Iqp: (qubits - 1) * layers.
  std::size_t slot_count() const;
  std::string slot(std::size_t index) const;
  std::vector<std::string> param_slots() const;

  bool operator==(const AnsatzSpec&) const = default;
};

/// CnotU3 layer: RZ then RX on every qubit, then CNOT(i, i + 1) for
/// i = 0 .. qubits - 2. Iqp layer: a row of H, then CRZ(i, i + 1); one more
/// row of H closes the circuit. Throws ArityMismatch on zero qubits/layers.
Circuit build_unitary(const AnsatzSpec& spec);

/// IQP structure whose rung (l, i) carries the slot of rung
/// (layers - 1 - l, i) when `reverse_layers` and of (l, qubits - 2 - i) when
/// `reverse_rotations`; rungs of a layer are emitted in the matching order.
Circuit iqp_reordered(const AnsatzSpec& spec, bool reverse_layers,
                      bool reverse_rotations);

/// CnotU3 drawn upside down: the rotations of qubit q sit on qubit
/// qubits - 1 - q and the rungs become CNOT(qubits - 1 - i, qubits - 2 - i).
Circuit cnotu3_mirrored(const AnsatzSpec& spec);

/// |0...0> followed by the unitary.
Circuit state_ansatz(const AnsatzSpec& spec);
/// Transposed unitary followed by <0...0| on every qubit.
Circuit effect_ansatz(const AnsatzSpec& spec);
/// `n_in` inputs on the leading qubits, |0> ancillas on the rest; `n_out`
/// outputs on the leading qubits, <0| on the rest. `n_out == 0` uses the
/// transposed unitary. Throws ArityMismatch.
Circuit linear_map_ansatz(const AnsatzSpec& spec, std::size_t n_in,
                          std::size_t n_out);

/// Delta tensor with `n_in` input and `n_out` output legs of
/// 2^qubits_per_leg dimensions each. Legs occupy contiguous qubit blocks:
/// input legs first, then one ancilla block per extra output leg. The global
/// scalar (a power of sqrt 2) is stored on the circuit. Throws ArityMismatch
/// when no legs are requested.
Circuit spider_circuit(std::size_t n_in, std::size_t n_out,
                       std::size_t qubits_per_leg);

/// Bell state on two blocks of `qubits_per_leg` qubits, scaled to an exact
/// delta: H + CNOT per bit pair.
Circuit bell_state(std::size_t qubits_per_leg);
/// Bell effect on two blocks: CNOT + H and <00| per bit pair, scaled to an
/// exact delta.
Circuit bell_effect(std::size_t qubits_per_leg);

/// Computational-basis transpose: gates reversed (every supported gate is a
/// symmetric matrix), preparations and post-selections exchanged.
Circuit transpose_circuit(const Circuit& c);
/// Relabels qubit q as n_qubits - 1 - q throughout.
Circuit reverse_outputs(const Circuit& c);

}  // namespace qnlp
