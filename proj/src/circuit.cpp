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

#include "qnlp/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>

#include "qnlp/errors.hpp"

namespace qnlp {

std::vector<std::size_t> Circuit::inputs() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if (!preps.count(q)) out.push_back(q);
  }
  return out;
}

std::vector<std::size_t> Circuit::outputs() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if (!postselects.count(q)) out.push_back(q);
  }
  return out;
}

std::set<std::string> Circuit::params() const {
  std::set<std::string> out;
  for (const auto& g : gates) {
    if (g.parametric() && g.angle.symbolic()) out.insert(g.angle.symbol);
  }
  return out;
}

Circuit& Circuit::h(std::size_t q) {
  gates.push_back({GateKind::H, {q, q}, {}});
  return *this;
}
Circuit& Circuit::rx(std::size_t q, Angle angle) {
  gates.push_back({GateKind::RX, {q, q}, std::move(angle)});
  return *this;
}
Circuit& Circuit::rz(std::size_t q, Angle angle) {
  gates.push_back({GateKind::RZ, {q, q}, std::move(angle)});
  return *this;
}
Circuit& Circuit::cnot(std::size_t control, std::size_t target) {
  gates.push_back({GateKind::CNOT, {control, target}, {}});
  return *this;
}
Circuit& Circuit::crz(std::size_t control, std::size_t target, Angle angle) {
  gates.push_back({GateKind::CRZ, {control, target}, std::move(angle)});
  return *this;
}
Circuit& Circuit::swap(std::size_t a, std::size_t b) {
  gates.push_back({GateKind::SWAP, {a, b}, {}});
  return *this;
}
Circuit& Circuit::prep(std::size_t q, Basis basis) {
  preps[q] = basis;
  return *this;
}
Circuit& Circuit::post(std::size_t q, Basis basis) {
  postselects[q] = basis;
  return *this;
}

double ParamStore::value(const Angle& angle) const {
  if (!angle.symbolic()) return angle.value;
  auto it = bindings.find(angle.symbol);
  if (it == bindings.end()) throw UnboundParameter(angle.symbol);
  return it->second;
}

void ParamStore::randomize_missing(const std::set<std::string>& symbols,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (const auto& s : symbols) {
    const double v = angle(rng);
    if (!bound(s)) bindings[s] = v;
  }
}

void ParamStore::zero_missing(const std::set<std::string>& symbols) {
  for (const auto& s : symbols) {
    if (!bound(s)) bindings[s] = 0.0;
  }
}

namespace {

using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;

constexpr cplx kI{0.0, 1.0};

Mat2 matrix1(GateKind kind, double theta, bool derivative) {
  const double r = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case GateKind::H:
      return {r, r, r, -r};
    case GateKind::RX: {
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      if (derivative) return {-s / 2, -kI * c / 2.0, -kI * c / 2.0, -s / 2};
      return {c, -kI * s, -kI * s, c};
    }
    case GateKind::RZ: {
      const cplx phase = std::exp(kI * theta);
      if (derivative) return {0.0, 0.0, 0.0, kI * phase};
      return {1.0, 0.0, 0.0, phase};
    }
    default:
      break;
  }
  throw UnsupportedGate("not a single-qubit gate");
}

Mat4 matrix2(GateKind kind, double theta, bool derivative) {
  Mat4 m{};
  switch (kind) {
    case GateKind::CNOT:
      m[0] = m[5] = m[11] = m[14] = 1.0;
      return m;
    case GateKind::SWAP:
      m[0] = m[6] = m[9] = m[15] = 1.0;
      return m;
    case GateKind::CRZ: {
      const cplx phase = std::exp(kI * theta);
      if (derivative) {
        m[15] = kI * phase;
      } else {
        m[0] = m[5] = m[10] = 1.0;
        m[15] = phase;
      }
      return m;
    }
    default:
      break;
  }
  throw UnsupportedGate("not a two-qubit gate");
}

class Statevector {
 public:
  explicit Statevector(std::size_t n) : n_(n), amp_(std::size_t{1} << n) {}

  std::size_t mask(std::size_t q) const { return std::size_t{1} << (n_ - 1 - q); }
  cplx& operator[](std::size_t i) { return amp_[i]; }
  std::size_t size() const { return amp_.size(); }

  void apply1(const Mat2& m, std::size_t q) {
    const std::size_t bit = mask(q);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (i & bit) continue;
      const cplx a = amp_[i], b = amp_[i | bit];
      amp_[i] = m[0] * a + m[1] * b;
      amp_[i | bit] = m[2] * a + m[3] * b;
    }
  }

  void apply2(const Mat4& m, std::size_t q0, std::size_t q1) {
    const std::size_t b0 = mask(q0), b1 = mask(q1);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (i & (b0 | b1)) continue;
      const std::size_t idx[4] = {i, i | b1, i | b0, i | b0 | b1};
      cplx v[4];
      for (int k = 0; k < 4; ++k) v[k] = amp_[idx[k]];
      for (int r = 0; r < 4; ++r) {
        cplx acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += m[r * 4 + k] * v[k];
        amp_[idx[r]] = acc;
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<cplx> amp_;
};

void check_gate(const Circuit& c, const Gate& g) {
  for (std::size_t k = 0; k < g.arity(); ++k) {
    if (g.qubits[k] >= c.n_qubits) {
      throw WiringMismatch("gate qubit " + std::to_string(g.qubits[k]) +
                           " out of range");
    }
  }
  if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
    throw WiringMismatch("two-qubit gate on a single qubit");
  }
}

/// Simulation with the gate at `derivative_gate` (if any) replaced by the
/// derivative of its matrix.
Tensor run(const Circuit& c, const std::vector<double>& angles,
           std::size_t derivative_gate, std::size_t max_qubits) {
  if (c.n_qubits > max_qubits) {
    throw TooManyQubits("circuit has " + std::to_string(c.n_qubits) +
                        " qubits, limit is " + std::to_string(max_qubits));
  }
  for (const auto& g : c.gates) check_gate(c, g);
  const auto ins = c.inputs();
  const auto outs = c.outputs();
  const std::size_t n = c.n_qubits;
  std::vector<std::size_t> shape(outs.size() + ins.size(), 2);
  Tensor result(shape);
  const std::size_t n_in_states = std::size_t{1} << ins.size();

  std::vector<Mat2> m1(c.gates.size());
  std::vector<Mat4> m2(c.gates.size());
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    const auto& g = c.gates[k];
    const bool d = k == derivative_gate;
    if (g.arity() == 1) {
      m1[k] = matrix1(g.kind, angles[k], d);
    } else {
      m2[k] = matrix2(g.kind, angles[k], d);
    }
  }
  const Mat2 hadamard = matrix1(GateKind::H, 0.0, false);

  for (std::size_t x = 0; x < n_in_states; ++x) {
    Statevector state(n);
    std::size_t start = 0;
    for (std::size_t k = 0; k < ins.size(); ++k) {
      if ((x >> (ins.size() - 1 - k)) & 1U) start |= state.mask(ins[k]);
    }
    state[start] = 1.0;
    for (const auto& [q, basis] : c.preps) {
      if (basis == Basis::Plus) state.apply1(hadamard, q);
    }
    for (std::size_t k = 0; k < c.gates.size(); ++k) {
      const auto& g = c.gates[k];
      if (g.arity() == 1) {
        state.apply1(m1[k], g.qubits[0]);
      } else {
        state.apply2(m2[k], g.qubits[0], g.qubits[1]);
      }
    }
    for (const auto& [q, basis] : c.postselects) {
      if (basis == Basis::Plus) state.apply1(hadamard, q);
    }
    for (std::size_t y = 0; y < (std::size_t{1} << outs.size()); ++y) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < outs.size(); ++k) {
        if ((y >> (outs.size() - 1 - k)) & 1U) idx |= state.mask(outs[k]);
      }
      result[y * n_in_states + x] = c.global_scalar * state[idx];
    }
  }
  return result;
}

std::vector<double> resolve(const Circuit& c, const ParamStore& params) {
  std::vector<double> angles(c.gates.size(), 0.0);
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    if (c.gates[k].parametric()) angles[k] = params.value(c.gates[k].angle);
  }
  return angles;
}

}  // namespace

Tensor simulate(const Circuit& c, const ParamStore& params,
                std::size_t max_qubits) {
  return run(c, resolve(c, params), c.gates.size(), max_qubits);
}

Tensor simulate_derivative(const Circuit& c, const ParamStore& params,
                           const std::string& symbol, std::size_t max_qubits) {
  const auto angles = resolve(c, params);
  std::vector<std::size_t> shape(c.inputs().size() + c.outputs().size(), 2);
  Tensor total(shape);
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    const auto& g = c.gates[k];
    if (!g.parametric() || g.angle.symbol != symbol) continue;
    const Tensor term = run(c, angles, k, max_qubits);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += term[i];
  }
  return total;
}

Metrics metrics(const Circuit& c) {
  Metrics m;
  m.width = c.n_qubits;
  m.postselect_count = c.postselects.size();
  std::vector<std::size_t> level(c.n_qubits, 0), weighted(c.n_qubits, 0);
  for (const auto& g : c.gates) {
    std::size_t weight = 0;
    switch (g.kind) {
      case GateKind::CNOT:
        ++m.cnot_count;
        weight = 1;
        break;
      case GateKind::CRZ:
        ++m.crz_count;
        weight = 2;
        break;
      case GateKind::SWAP:
        ++m.swap_count;
        weight = 3;
        break;
      default:
        break;
    }
    m.entangling_equiv += weight;
    std::size_t lv = 0, wv = 0;
    for (std::size_t k = 0; k < g.arity(); ++k) {
      lv = std::max(lv, level.at(g.qubits[k]));
      wv = std::max(wv, weighted.at(g.qubits[k]));
    }
    for (std::size_t k = 0; k < g.arity(); ++k) {
      level[g.qubits[k]] = lv + 1;
      weighted[g.qubits[k]] = wv + weight;
    }
  }
  for (std::size_t q = 0; q < c.n_qubits; ++q) {
    m.depth = std::max(m.depth, level[q]);
    m.cnot_equiv_depth = std::max(m.cnot_equiv_depth, weighted[q]);
  }
  return m;
}

void append(Circuit& dst, const Circuit& sub,
            std::span<const std::size_t> qubit_map) {
  if (qubit_map.size() != sub.n_qubits) {
    throw WiringMismatch("qubit map covers " + std::to_string(qubit_map.size()) +
                         " of " + std::to_string(sub.n_qubits) + " qubits");
  }
  for (auto q : qubit_map) {
    if (q >= dst.n_qubits) throw WiringMismatch("qubit map leaves the circuit");
  }
  for (const auto& [q, basis] : sub.preps) dst.preps[qubit_map[q]] = basis;
  for (auto g : sub.gates) {
    for (std::size_t k = 0; k < g.arity(); ++k) g.qubits[k] = qubit_map[g.qubits[k]];
    if (g.arity() == 1) g.qubits[1] = g.qubits[0];
    dst.gates.push_back(std::move(g));
  }
  for (const auto& [q, basis] : sub.postselects) {
    dst.postselects[qubit_map[q]] = basis;
  }
  dst.global_scalar *= sub.global_scalar;
}

void order_outputs(Circuit& c, std::vector<std::size_t> wire_qubits) {
  const auto slots = c.outputs();
  {
    auto sorted = wire_qubits;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != slots) {
      throw WiringMismatch("output ordering does not cover the output qubits");
    }
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (wire_qubits[k] == slots[k]) continue;
    auto it = std::find(wire_qubits.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                        wire_qubits.end(), slots[k]);
    c.swap(wire_qubits[k], slots[k]);
    *it = wire_qubits[k];
    wire_qubits[k] = slots[k];
  }
}

Circuit tensor(const Circuit& a, const Circuit& b) {
  Circuit out(a.n_qubits + b.n_qubits);
  std::vector<std::size_t> map_a(a.n_qubits), map_b(b.n_qubits);
  for (std::size_t q = 0; q < a.n_qubits; ++q) map_a[q] = q;
  for (std::size_t q = 0; q < b.n_qubits; ++q) map_b[q] = a.n_qubits + q;
  append(out, a, map_a);
  append(out, b, map_b);
  return out;
}

Circuit compose(const Circuit& a, const Circuit& b,
                const std::map<std::size_t, std::size_t>& wiring) {
  const auto a_out = a.outputs();
  const auto b_in = b.inputs();
  std::set<std::size_t> targets;
  for (const auto& [from, to] : wiring) {
    if (from >= a_out.size() || to >= b_in.size() || !targets.insert(to).second) {
      throw WiringMismatch("wiring is not an injection from outputs to inputs");
    }
  }
  std::map<std::size_t, std::size_t> b_source;  // b qubit -> a qubit
  for (const auto& [from, to] : wiring) b_source[b_in[to]] = a_out[from];

  Circuit out = a;
  std::vector<std::size_t> map_b(b.n_qubits);
  for (std::size_t q = 0; q < b.n_qubits; ++q) {
    auto it = b_source.find(q);
    map_b[q] = it != b_source.end() ? it->second : out.n_qubits++;
  }
  append(out, b, map_b);

  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < a_out.size(); ++k) {
    if (!wiring.count(k)) order.push_back(a_out[k]);
  }
  for (auto q : b.outputs()) order.push_back(map_b[q]);
  order_outputs(out, std::move(order));
  return out;
}

Circuit scoped(Circuit c, const std::string& scope) {
  for (auto& g : c.gates) {
    if (g.parametric() && g.angle.symbolic()) {
      g.angle.symbol = scope + "@" + g.angle.symbol;
    }
  }
  return c;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int precision = 1; precision <= 17; ++precision) {
    char shorter[64];
    std::snprintf(shorter, sizeof shorter, "%.*g", precision, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::string format_angle(const Angle& a) {
  return a.symbolic() ? a.symbol : format_double(a.value);
}

std::string qubit(std::size_t q) { return "q" + std::to_string(q); }

char basis_char(Basis b) { return b == Basis::Zero ? '0' : '+'; }

}  // namespace

std::string to_qcir(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.n_qubits << '\n';
  for (const auto& [q, b] : c.preps) {
    out << "prep " << qubit(q) << ' ' << basis_char(b) << '\n';
  }
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::H:
        out << "h " << qubit(g.qubits[0]);
        break;
      case GateKind::RX:
        out << "rx " << qubit(g.qubits[0]) << ' ' << format_angle(g.angle);
        break;
      case GateKind::RZ:
        out << "rz " << qubit(g.qubits[0]) << ' ' << format_angle(g.angle);
        break;
      case GateKind::CNOT:
        out << "cnot " << qubit(g.qubits[0]) << ' ' << qubit(g.qubits[1]);
        break;
      case GateKind::CRZ:
        out << "crz " << qubit(g.qubits[0]) << ' ' << qubit(g.qubits[1]) << ' '
            << format_angle(g.angle);
        break;
      case GateKind::SWAP:
        out << "swap " << qubit(g.qubits[0]) << ' ' << qubit(g.qubits[1]);
        break;
    }
    out << '\n';
  }
  for (const auto& [q, b] : c.postselects) {
    out << "post " << qubit(q) << ' ' << basis_char(b) << '\n';
  }
  out << "scalar " << format_double(c.global_scalar.real()) << ' '
      << format_double(c.global_scalar.imag());
  return out.str();
}

namespace {

bool parse_number(const std::string& token, double& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size();
}

}  // namespace

Circuit from_qcir(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  Circuit c;
  bool have_header = false;
  bool have_scalar = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;

    auto want = [&](std::size_t n) {
      if (tok.size() != n) {
        throw FormatError(where, "'" + tok[0] + "' expects " +
                                     std::to_string(n - 1) + " operands");
      }
    };
    auto qubit_at = [&](std::size_t k) {
      const auto& t = tok[k];
      std::size_t q = 0;
      if (t.size() < 2 || t[0] != 'q' ||
          std::from_chars(t.data() + 1, t.data() + t.size(), q).ec != std::errc{} ||
          std::from_chars(t.data() + 1, t.data() + t.size(), q).ptr !=
              t.data() + t.size()) {
        throw FormatError(where, "bad qubit '" + t + "'");
      }
      if (q >= c.n_qubits) throw FormatError(where, "qubit " + t + " out of range");
      return q;
    };
    auto pair_at = [&](std::size_t k) {
      const std::size_t a = qubit_at(k), b = qubit_at(k + 1);
      if (a == b) throw FormatError(where, "two-qubit gate on a single qubit");
      return std::pair{a, b};
    };
    auto angle_at = [&](std::size_t k) {
      double v = 0.0;
      if (parse_number(tok[k], v)) return Angle::literal(v);
      return Angle::param(tok[k]);
    };
    auto basis_at = [&](std::size_t k) {
      if (tok[k] == "0") return Basis::Zero;
      if (tok[k] == "+") return Basis::Plus;
      throw FormatError(where, "basis must be 0 or +");
    };

    const auto& op = tok[0];
    if (!have_header) {
      if (op != "qubits") throw FormatError(where, "expected 'qubits N' header");
      want(2);
      double n = 0.0;
      if (!parse_number(tok[1], n) || n < 0 || n != std::floor(n)) {
        throw FormatError(where, "bad qubit count");
      }
      c.n_qubits = static_cast<std::size_t>(n);
      have_header = true;
      continue;
    }
    if (have_scalar) throw FormatError(where, "content after 'scalar'");
    if (op == "prep") {
      want(3);
      c.prep(qubit_at(1), basis_at(2));
    } else if (op == "post") {
      want(3);
      c.post(qubit_at(1), basis_at(2));
    } else if (op == "h") {
      want(2);
      c.h(qubit_at(1));
    } else if (op == "rx") {
      want(3);
      c.rx(qubit_at(1), angle_at(2));
    } else if (op == "rz") {
      want(3);
      c.rz(qubit_at(1), angle_at(2));
    } else if (op == "cnot") {
      want(3);
      const auto [a, b] = pair_at(1);
      c.cnot(a, b);
    } else if (op == "crz") {
      want(4);
      const auto [a, b] = pair_at(1);
      c.crz(a, b, angle_at(3));
    } else if (op == "swap") {
      want(3);
      const auto [a, b] = pair_at(1);
      c.swap(a, b);
    } else if (op == "scalar") {
      want(3);
      double re = 0.0, im = 0.0;
      if (!parse_number(tok[1], re) || !parse_number(tok[2], im)) {
        throw FormatError(where, "bad scalar");
      }
      c.global_scalar = {re, im};
      have_scalar = true;
    } else {
      throw FormatError(where, "unknown instruction '" + op + "'");
    }
  }
  if (!have_header) throw FormatError("line 1", "missing 'qubits N' header");
  if (!have_scalar) throw FormatError("end of input", "missing 'scalar' line");
  return c;
}

}  // namespace qnlp
