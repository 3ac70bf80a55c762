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


#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qnlp/circuit.hpp"
#include "qnlp/errors.hpp"
#include "testutil.hpp"

namespace qnlp {
namespace test_circuit {

const double kRoot2 = std::sqrt(0.5);

/// Random circuit on `n` qubits. Parametric gates use symbols t0..t3 or
/// literal angles; preps and posts are random subsets.
Circuit random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t gates,
                       bool boundary_ops = true) {
  Circuit c(n);
  std::uniform_int_distribution<int> kind(0, n > 1 ? 5 : 2), sym(0, 4);
  std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::bernoulli_distribution coin(0.5);
  auto pick_angle = [&] {
    const int s = sym(rng);
    return s == 4 ? Angle::literal(angle(rng)) : Angle::param("t" + std::to_string(s));
  };
  auto pick_pair = [&] {
    const std::size_t a = qubit(rng);
    std::size_t b = qubit(rng);
    while (b == a) b = qubit(rng);
    return std::pair{a, b};
  };
  for (std::size_t k = 0; k < gates; ++k) {
    switch (kind(rng)) {
      case 0: c.h(qubit(rng)); break;
      case 1: c.rx(qubit(rng), pick_angle()); break;
      case 2: c.rz(qubit(rng), pick_angle()); break;
      case 3: { auto [a, b] = pick_pair(); c.cnot(a, b); break; }
      case 4: { auto [a, b] = pick_pair(); c.crz(a, b, pick_angle()); break; }
      default: { auto [a, b] = pick_pair(); c.swap(a, b); break; }
    }
  }
  if (boundary_ops) {
    for (std::size_t q = 0; q < n; ++q) {
      if (coin(rng)) c.prep(q, coin(rng) ? Basis::Zero : Basis::Plus);
      if (coin(rng)) c.post(q, coin(rng) ? Basis::Zero : Basis::Plus);
    }
  }
  return c;
}

ParamStore random_params(std::mt19937_64& rng) {
  ParamStore p;
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int s = 0; s < 4; ++s) p.bind("t" + std::to_string(s), angle(rng));
  return p;
}

/// Contracts simulate(a) and simulate(b) along `wiring` into the axis order
/// of compose(a, b, wiring).
Tensor composed_oracle(const Circuit& a, const Circuit& b,
                       const std::map<std::size_t, std::size_t>& wiring, const ParamStore& p) {
  const std::size_t ao = a.outputs().size(), ai = a.inputs().size();
  const std::size_t bo = b.outputs().size(), bi = b.inputs().size();
  int next = 0;
  std::vector<int> la(ao + ai), lb(bo + bi);
  for (auto& l : la) l = next++;
  for (auto& l : lb) l = next++;
  for (const auto& [from, to] : wiring) lb[bo + to] = la[from];
  std::vector<int> output;
  for (std::size_t k = 0; k < ao; ++k) {
    if (!wiring.count(k)) output.push_back(la[k]);
  }
  for (std::size_t k = 0; k < bo; ++k) output.push_back(lb[k]);
  for (std::size_t k = 0; k < ai; ++k) output.push_back(la[ao + k]);
  std::set<std::size_t> wired_inputs;
  for (const auto& [from, to] : wiring) wired_inputs.insert(to);
  for (std::size_t k = 0; k < bi; ++k) {
    if (!wired_inputs.count(k)) output.push_back(lb[bo + k]);
  }
  return contract_network({{simulate(a, p), la}, {simulate(b, p), lb}}, output);
}

SCENARIO("Simulation conventions") {
  GIVEN("An empty one-qubit circuit") {
    const Tensor t = simulate(Circuit(1), {});
    REQUIRE(t.shape() == std::vector<std::size_t>{2, 2});
    REQUIRE(max_abs_diff(t, Tensor::delta(2, 2)) == 0.0);
  }
  GIVEN("prep |0>, H") {
    Circuit c(1);
    c.prep(0).h(0);
    REQUIRE(max_abs_diff(simulate(c, {}), Tensor({2}, {kRoot2, kRoot2})) <= 1e-15);
  }
  GIVEN("A Bell pair with the second qubit post-selected on <0|") {
    Circuit c(2);
    c.prep(0).prep(1).h(0).cnot(0, 1).post(1);
    REQUIRE(max_abs_diff(simulate(c, {}), Tensor({2}, {kRoot2, 0.0})) <= 1e-15);
  }
  GIVEN("Qubit 0 is the most significant axis") {
    Circuit c(2);
    c.prep(0).prep(1).rx(0, Angle::literal(M_PI));
    const Tensor t = simulate(c, {});
    REQUIRE(std::abs(t[2]) == Catch::Approx(1.0));
  }
  GIVEN("Rotation matrices") {
    const double theta = 0.83;
    Circuit z(1);
    z.rz(0, Angle::literal(theta));
    REQUIRE(max_abs_diff(simulate(z, {}),
                         Tensor({2, 2}, {1.0, 0.0, 0.0, std::polar(1.0, theta)})) <= 1e-15);
    Circuit x(1);
    x.rx(0, Angle::literal(theta));
    const cplx c0 = std::cos(theta / 2), s0(0.0, -std::sin(theta / 2));
    REQUIRE(max_abs_diff(simulate(x, {}), Tensor({2, 2}, {c0, s0, s0, c0})) <= 1e-15);
    Circuit cz(2);
    cz.crz(0, 1, Angle::literal(theta));
    const Tensor m = simulate(cz, {}).reshaped({4, 4});
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const cplx want = i != j ? 0.0 : i == 3 ? std::polar(1.0, theta) : 1.0;
        REQUIRE(std::abs(m[i * 4 + j] - want) <= 1e-15);
      }
    }
  }
  GIVEN("A SWAP gate") {
    Circuit c(2);
    c.swap(0, 1);
    const Tensor m = simulate(c, {}).reshaped({4, 4});
    const std::size_t perm[] = {0, 2, 1, 3};
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) REQUIRE(m[i * 4 + j] == cplx(perm[j] == i ? 1.0 : 0.0));
    }
  }
  GIVEN("A global scalar") {
    Circuit c(1);
    c.prep(0).global_scalar = {0.0, 2.0};
    REQUIRE(max_abs_diff(simulate(c, {}), Tensor({2}, {cplx(0.0, 2.0), 0.0})) == 0.0);
  }
}

SCENARIO("Simulation errors") {
  Circuit c(1);
  c.rz(0, Angle::param("theta"));
  REQUIRE_THROWS_AS(simulate(c, {}), UnboundParameter);
  REQUIRE_THROWS_AS(simulate(Circuit(15), {}), TooManyQubits);
  REQUIRE_THROWS_AS(simulate(Circuit(3), {}, 2), TooManyQubits);
}

SCENARIO("Unitary circuits preserve norm") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4;
    Circuit c = random_circuit(rng, n, 12, false);
    for (std::size_t q = 0; q < n; ++q) c.prep(q, trial % 2 ? Basis::Plus : Basis::Zero);
    REQUIRE(std::abs(simulate(c, random_params(rng)).norm() - 1.0) <= 1e-10);
  }
}

SCENARIO("Resource metrics") {
  REQUIRE(metrics(Circuit(2)).depth == 0);
  REQUIRE(metrics(Circuit(2)).cnot_count == 0);
  Circuit one(2);
  one.cnot(0, 1);
  REQUIRE(metrics(one).depth == 1);
  REQUIRE(metrics(one).cnot_count == 1);
  Circuit sw(3);
  sw.swap(0, 1).h(2).post(2);
  const Metrics m = metrics(sw);
  REQUIRE(m.width == 3);
  REQUIRE(m.swap_count == 1);
  REQUIRE(m.entangling_equiv == 3);
  REQUIRE(m.cnot_equiv_depth == 3);
  REQUIRE(m.postselect_count == 1);
  Circuit layered(3);
  layered.h(0).h(1).cnot(0, 1).cnot(1, 2).crz(0, 1, Angle::literal(1.0));
  REQUIRE(metrics(layered).depth == 4);
  REQUIRE(metrics(layered).cnot_equiv_depth == 4);
}

SCENARIO("Composition and tensor product") {
  std::mt19937_64 rng(32);
  GIVEN("Two |0> states") {
    Circuit z(1);
    z.prep(0);
    REQUIRE(max_abs_diff(simulate(tensor(z, z), {}), Tensor({2, 2}, {1.0, 0.0, 0.0, 0.0})) == 0.0);
  }
  GIVEN("A circuit composed with the identity") {
    for (int trial = 0; trial < 20; ++trial) {
      const Circuit c = random_circuit(rng, 3, 8);
      const ParamStore p = random_params(rng);
      const Circuit id(c.outputs().size());
      std::map<std::size_t, std::size_t> wiring;
      for (std::size_t k = 0; k < c.outputs().size(); ++k) wiring[k] = k;
      REQUIRE(max_abs_diff(simulate(compose(c, id, wiring), p), simulate(c, p)) <= 1e-12);
    }
  }
  GIVEN("Random circuits with partial wirings") {
    for (int trial = 0; trial < 100; ++trial) {
      const Circuit a = random_circuit(rng, 1 + trial % 3, 6);
      const Circuit b = random_circuit(rng, 1 + (trial / 3) % 3, 6);
      const ParamStore p = random_params(rng);
      std::vector<std::size_t> targets(b.inputs().size());
      std::iota(targets.begin(), targets.end(), 0);
      std::shuffle(targets.begin(), targets.end(), rng);
      std::map<std::size_t, std::size_t> wiring;
      for (std::size_t k = 0; k < a.outputs().size() && k < targets.size(); ++k) {
        if (std::bernoulli_distribution(0.7)(rng)) wiring[k] = targets[k];
      }
      const Circuit c = compose(a, b, wiring);
      REQUIRE(max_abs_diff(simulate(c, p), composed_oracle(a, b, wiring, p)) <= 1e-12);
      const Circuit t = tensor(a, b);
      REQUIRE(max_abs_diff(simulate(t, p), composed_oracle(a, b, {}, p).permuted([&] {
        // tensor keeps a's axes then b's per role: outputs of a, outputs of
        // b, inputs of a, inputs of b; the oracle already uses that order.
        std::vector<std::size_t> id(t.outputs().size() + t.inputs().size());
        std::iota(id.begin(), id.end(), 0);
        return id;
      }())) <= 1e-12);
    }
  }
  GIVEN("Global scalars multiply") {
    Circuit a(1), b(1);
    a.prep(0).global_scalar = 2.0;
    b.global_scalar = {0.0, 3.0};
    REQUIRE(compose(a, b, {{0, 0}}).global_scalar == cplx(0.0, 6.0));
    REQUIRE(tensor(a, b).global_scalar == cplx(0.0, 6.0));
  }
  GIVEN("A wiring that is not injective") {
    Circuit a(2), b(2);
    REQUIRE_THROWS_AS(compose(a, b, {{0, 0}, {1, 0}}), WiringMismatch);
    REQUIRE_THROWS_AS(compose(a, b, {{0, 2}}), WiringMismatch);
  }
}

SCENARIO("Parameter derivatives match central differences") {
  std::mt19937_64 rng(33);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit c = random_circuit(rng, 1 + trial % 3, 8);
    ParamStore p = random_params(rng);
    const std::string symbol = "t" + std::to_string(trial % 4);
    const Tensor grad = simulate_derivative(c, p, symbol);
    const double theta = p.bindings[symbol];
    p.bind(symbol, theta + h);
    const Tensor plus = simulate(c, p);
    p.bind(symbol, theta - h);
    const Tensor minus = simulate(c, p);
    for (std::size_t i = 0; i < grad.size(); ++i) {
      REQUIRE(std::abs(grad[i] - (plus[i] - minus[i]) / (2 * h)) <= 1e-6);
    }
  }
}

SCENARIO("qcir text export") {
  GIVEN("An empty circuit") { REQUIRE(to_qcir(Circuit(1)) == "qubits 1\nscalar 1 0"); }
  GIVEN("prep and H") {
    Circuit c(1);
    c.prep(0).h(0);
    REQUIRE(to_qcir(c) == "qubits 1\nprep q0 0\nh q0\nscalar 1 0");
  }
  GIVEN("Random circuits") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
      Circuit c = random_circuit(rng, 1 + trial % 4, 10);
      c.global_scalar = {std::normal_distribution<double>()(rng), 0.1 * trial};
      REQUIRE(from_qcir(to_qcir(c)) == c);
    }
  }
  GIVEN("Malformed text") {
    auto line_of = [](const std::string& text) {
      try {
        from_qcir(text);
      } catch (const FormatError& e) {
        return e.where();
      }
      return std::string("no error");
    };
    REQUIRE(line_of("qubits 1\nfoo q0\n") == "line 2");
    REQUIRE(line_of("qubits 2\nh q0\ncnot q0 q0\n") == "line 3");
    REQUIRE(line_of("qubits 1\nrx q0\n") == "line 2");
    REQUIRE(line_of("qubits 1\nh q5\n") == "line 2");
    REQUIRE(line_of("h q0\n") == "line 1");
  }
}

}  // namespace test_circuit
}  // namespace qnlp
