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

#include "qnlp/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnlp/errors.hpp"

namespace qnlp {

std::string to_string(AnsatzFamily family) {
  return family == AnsatzFamily::CnotU3 ? "cnotu3" : "iqp";
}

AnsatzFamily parse_family(const std::string& text) {
  if (text == "cnotu3") return AnsatzFamily::CnotU3;
  if (text == "iqp") return AnsatzFamily::Iqp;
  throw FormatError("", "unknown ansatz family '" + text + "'");
}

std::size_t AnsatzSpec::slot_count() const {
  if (family == AnsatzFamily::CnotU3) return 2 * qubits * layers;
  return qubits == 0 ? 0 : (qubits - 1) * layers;
}

std::string AnsatzSpec::slot(std::size_t index) const {
  return to_string(family) + "/" + std::to_string(qubits) + "/" +
         std::to_string(layers) + "/" + std::to_string(index);
}

std::vector<std::string> AnsatzSpec::param_slots() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < slot_count(); ++k) out.push_back(slot(k));
  return out;
}

namespace {

void check_spec(const AnsatzSpec& spec) {
  if (spec.qubits == 0 || spec.layers == 0) {
    throw ArityMismatch("ansatz needs at least one qubit and one layer");
  }
}

void hadamard_row(Circuit& c) {
  for (std::size_t q = 0; q < c.n_qubits; ++q) c.h(q);
}

}  // namespace

Circuit build_unitary(const AnsatzSpec& spec) {
  check_spec(spec);
  const std::size_t n = spec.qubits;
  Circuit c(n);
  if (spec.family == AnsatzFamily::CnotU3) {
    for (std::size_t l = 0; l < spec.layers; ++l) {
      for (std::size_t q = 0; q < n; ++q) {
        c.rz(q, Angle::param(spec.slot(l * 2 * n + 2 * q)));
        c.rx(q, Angle::param(spec.slot(l * 2 * n + 2 * q + 1)));
      }
      for (std::size_t i = 0; i + 1 < n; ++i) c.cnot(i, i + 1);
    }
    return c;
  }
  return iqp_reordered(spec, false, false);
}

Circuit iqp_reordered(const AnsatzSpec& spec, bool reverse_layers,
                      bool reverse_rotations) {
  check_spec(spec);
  if (spec.family != AnsatzFamily::Iqp) {
    throw ArityMismatch("iqp_reordered needs an IQP spec");
  }
  const std::size_t n = spec.qubits;
  const std::size_t rungs = n - 1;
  Circuit c(n);
  for (std::size_t l = 0; l < spec.layers; ++l) {
    hadamard_row(c);
    const std::size_t src_layer = reverse_layers ? spec.layers - 1 - l : l;
    for (std::size_t k = 0; k < rungs; ++k) {
      const std::size_t i = reverse_rotations ? rungs - 1 - k : k;
      const std::size_t src_rung = reverse_rotations ? rungs - 1 - i : i;
      c.crz(i, i + 1, Angle::param(spec.slot(src_layer * rungs + src_rung)));
    }
  }
  hadamard_row(c);
  return c;
}

Circuit cnotu3_mirrored(const AnsatzSpec& spec) {
  check_spec(spec);
  if (spec.family != AnsatzFamily::CnotU3) {
    throw ArityMismatch("cnotu3_mirrored needs a CnotU3 spec");
  }
  const std::size_t n = spec.qubits;
  Circuit c(n);
  for (std::size_t l = 0; l < spec.layers; ++l) {
    for (std::size_t q = n; q-- > 0;) {
      const std::size_t src = n - 1 - q;
      c.rz(q, Angle::param(spec.slot(l * 2 * n + 2 * src)));
      c.rx(q, Angle::param(spec.slot(l * 2 * n + 2 * src + 1)));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) c.cnot(n - 1 - i, n - 2 - i);
  }
  return c;
}

Circuit state_ansatz(const AnsatzSpec& spec) {
  Circuit c = build_unitary(spec);
  for (std::size_t q = 0; q < c.n_qubits; ++q) c.prep(q, Basis::Zero);
  return c;
}

Circuit effect_ansatz(const AnsatzSpec& spec) {
  return transpose_circuit(state_ansatz(spec));
}

Circuit linear_map_ansatz(const AnsatzSpec& spec, std::size_t n_in,
                          std::size_t n_out) {
  if (n_in > spec.qubits || n_out > spec.qubits) {
    throw ArityMismatch("linear map with " + std::to_string(n_in) + " inputs and " +
                        std::to_string(n_out) + " outputs does not fit " +
                        std::to_string(spec.qubits) + " qubits");
  }
  Circuit c = build_unitary(spec);
  if (n_out == 0) c = transpose_circuit(c);
  for (std::size_t q = n_in; q < spec.qubits; ++q) c.prep(q, Basis::Zero);
  for (std::size_t q = n_out; q < spec.qubits; ++q) c.post(q, Basis::Zero);
  return c;
}

Circuit spider_circuit(std::size_t n_in, std::size_t n_out,
                       std::size_t qubits_per_leg) {
  if (n_in + n_out == 0 || qubits_per_leg == 0) {
    throw ArityMismatch("spider needs at least one leg");
  }
  // Input legs 0 .. n_in - 1; ancilla legs for outputs beyond the first.
  const std::size_t ancilla_legs = n_in == 0 ? n_out : n_out - std::min<std::size_t>(n_out, 1);
  const std::size_t legs = n_in + ancilla_legs;
  Circuit c(legs * qubits_per_leg);
  const double root2 = std::numbers::sqrt2;
  for (std::size_t b = 0; b < qubits_per_leg; ++b) {
    auto in = [&](std::size_t j) { return j * qubits_per_leg + b; };
    auto anc = [&](std::size_t j) { return (n_in + j) * qubits_per_leg + b; };
    if (n_in == 0) {
      c.prep(anc(0), Basis::Plus);
      for (std::size_t j = 1; j < n_out; ++j) {
        c.prep(anc(j), Basis::Zero);
        c.cnot(anc(0), anc(j));
      }
      c.global_scalar *= root2;
      continue;
    }
    // Fold the inputs onto the first leg; each <0| enforces equality.
    for (std::size_t j = n_in; j >= 2; --j) c.cnot(in(j - 2), in(j - 1));
    for (std::size_t j = 1; j < n_in; ++j) c.post(in(j), Basis::Zero);
    if (n_out == 0) {
      c.post(in(0), Basis::Plus);
      c.global_scalar *= root2;
      continue;
    }
    for (std::size_t j = 0; j < ancilla_legs; ++j) {
      c.prep(anc(j), Basis::Zero);
      c.cnot(in(0), anc(j));
    }
  }
  return c;
}

Circuit bell_state(std::size_t qubits_per_leg) {
  Circuit c(2 * qubits_per_leg);
  for (std::size_t b = 0; b < qubits_per_leg; ++b) {
    const std::size_t x = b, y = qubits_per_leg + b;
    c.prep(x).prep(y);
    c.h(x).cnot(x, y);
    c.global_scalar *= std::numbers::sqrt2;
  }
  return c;
}

Circuit bell_effect(std::size_t qubits_per_leg) {
  Circuit c(2 * qubits_per_leg);
  for (std::size_t b = 0; b < qubits_per_leg; ++b) {
    const std::size_t x = b, y = qubits_per_leg + b;
    c.cnot(x, y).h(x);
    c.post(x).post(y);
    c.global_scalar *= std::numbers::sqrt2;
  }
  return c;
}

Circuit transpose_circuit(const Circuit& c) {
  Circuit out(c.n_qubits);
  out.preps = c.postselects;
  out.postselects = c.preps;
  out.gates.assign(c.gates.rbegin(), c.gates.rend());
  out.global_scalar = c.global_scalar;
  return out;
}

Circuit reverse_outputs(const Circuit& c) {
  std::vector<std::size_t> map(c.n_qubits);
  for (std::size_t q = 0; q < c.n_qubits; ++q) map[q] = c.n_qubits - 1 - q;
  Circuit out(c.n_qubits);
  append(out, c, map);
  return out;
}

}  // namespace qnlp
