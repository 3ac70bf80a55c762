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

#include "qnlp/errors.hpp"
#include "qnlp/snake.hpp"
#include "testutil.hpp"

namespace qnlp {
namespace test_snake {

using test::fixture_diagram;

/// Every wire runs from an output leg to an input leg or the boundary, each
/// leg is used once, and wires point forward in the process order.
void require_snake_free(const SnakeFreeDiagram& s) {
  std::set<ProcessPort> used_out, used_in;
  for (const auto& w : s.wires) {
    REQUIRE_FALSE(w.from.on_boundary());
    REQUIRE(w.from.leg < s.processes.at(w.from.process).outputs.size());
    REQUIRE(used_out.insert(w.from).second);
    REQUIRE(used_in.insert(w.to).second);
    if (w.to.on_boundary()) {
      REQUIRE(w.to.leg < s.boundary.size());
    } else {
      REQUIRE(w.to.leg < s.processes.at(w.to.process).inputs.size());
      REQUIRE(w.from.process < w.to.process);
    }
  }
  std::size_t legs = s.boundary.size();
  for (const auto& p : s.processes) legs += p.inputs.size() + p.outputs.size();
  REQUIRE(used_out.size() + used_in.size() == legs);
}

/// Directed cycle among words once winding-0 ports produce and adjoint ports
/// consume; links between two producers or two consumers add no edge.
bool has_feedback(const Diagram& d) {
  std::vector<std::vector<std::size_t>> next(d.nodes.size());
  for (const auto& l : d.links) {
    if (l.a.on_boundary() || l.b.on_boundary()) continue;
    const bool pa = d.atom_at(l.a).winding == 0, pb = d.atom_at(l.b).winding == 0;
    if (pa && !pb) next[l.a.node].push_back(l.b.node);
    if (pb && !pa) next[l.b.node].push_back(l.a.node);
  }
  std::vector<int> colour(d.nodes.size(), 0);
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    colour[v] = 1;
    for (auto w : next[v]) {
      if (colour[w] == 1 || (colour[w] == 0 && dfs(w))) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < d.nodes.size(); ++v) {
    if (colour[v] == 0 && dfs(v)) return true;
  }
  return false;
}

std::size_t process_atoms(const SnakeFreeDiagram& s) {
  std::size_t total = 0;
  for (const auto& p : s.processes) {
    if (p.word == "cup" || p.word == "cap") continue;
    total += p.inputs.size() + p.outputs.size();
  }
  return total;
}

std::size_t diagram_atoms(const Diagram& d) {
  std::size_t total = 0;
  for (const auto& n : d.nodes) total += n.ports.size();
  return total;
}

SCENARIO("Autonomisation bends adjoint ports into inputs") {
  GIVEN("A noun") {
    const ProcessNode p = autonomise({NodeKind::Word, "dogs", parse_type("n").atoms});
    REQUIRE(p.inputs.empty());
    REQUIRE(p.outputs == parse_type("n").atoms);
  }
  GIVEN("A transitive verb") {
    const ProcessNode p = autonomise({NodeKind::Word, "loves", parse_type("n.r s n.l").atoms});
    REQUIRE(p.inputs == parse_type("n n").atoms);
    REQUIRE(p.input_ports == std::vector<std::size_t>{2, 0});
    REQUIRE(p.outputs == parse_type("s").atoms);
  }
  GIVEN("An adjective") {
    const ProcessNode p = autonomise({NodeKind::Word, "big", parse_type("n n.l").atoms});
    REQUIRE(p.inputs == parse_type("n").atoms);
    REQUIRE(p.outputs == parse_type("n").atoms);
    REQUIRE(p.input_ports.size() + p.output_ports.size() == 2);
  }
}

SCENARIO("Documented snake removals") {
  GIVEN("Alice loves Bob") {
    const Diagram d = fixture_diagram("transitive");
    const SnakeFreeDiagram s = snake_removal(d);
    REQUIRE(s.processes.size() == 3);
    REQUIRE(s.processes[0].word == "Alice");
    REQUIRE(s.processes[1].word == "Bob");
    REQUIRE(s.processes[2].word == "loves");
    REQUIRE(s.boundary == std::vector<TypedAtom>{{"s", 0}});
    REQUIRE(s.wires.size() == 3);
    REQUIRE(bell_process_count(s) == 0);
    require_snake_free(s);
  }
  GIVEN("A relative clause with a spider for the pronoun") {
    const Diagram d = fixture_diagram("relative-pronoun");
    const SnakeFreeDiagram s = snake_removal(d, {"that"});
    REQUIRE(bell_process_count(s) == 0);
    require_snake_free(s);
    std::size_t spiders = 0;
    for (const auto& p : s.processes) spiders += p.word == "that";
    // One spider on the noun legs, one on the sentence leg.
    REQUIRE(spiders == 2);
    std::mt19937_64 rng(61);
    auto e = test::random_embedding(d, rng);
    const auto& ports = d.nodes[3].ports;
    std::vector<std::size_t> shape;
    for (const auto& a : ports) shape.push_back(static_cast<std::size_t>(d.dims.at(a.atom)));
    e["that"] = group_delta(shape, atom_groups(ports));
    REQUIRE(max_abs_diff(evaluate(s, e), contract(d, e)) <= 1e-12);
  }
  GIVEN("A bare cup with both ends open") {
    Diagram d;
    d.dims = {{"n", 2}};
    d.symmetric = true;
    d.boundary = {{"n", 1}, {"n", 0}};
    d.links = {{PortRef::boundary(0), PortRef::boundary(1), LinkKind::Cup}};
    REQUIRE(validate(d).empty());
    const SnakeFreeDiagram s = snake_removal(d);
    REQUIRE(s.processes.size() == 1);
    REQUIRE(s.processes[0].inputs.empty());
    REQUIRE(s.processes[0].outputs.size() == 2);
    REQUIRE(bell_process_count(s) == 1);
    require_snake_free(s);
    REQUIRE(max_abs_diff(evaluate(s, {}), Tensor::delta(2, 2)) == 0.0);
  }
  GIVEN("The cyclic parse") {
    const Diagram d = fixture_diagram("cyclic");
    const SnakeFreeDiagram s = snake_removal(d);
    require_snake_free(s);
    REQUIRE(bell_process_count(s) == 1);
    std::mt19937_64 rng(62);
    const auto e = test::random_embedding(d, rng);
    REQUIRE(max_abs_diff(evaluate(s, e), contract(d, e)) <= 1e-12);
  }
}

SCENARIO("Snake removal on random diagrams") {
  std::mt19937_64 rng(63);
  std::size_t evaluated = 0, cyclic = 0;
  for (int trial = 0; evaluated < 200; ++trial) {
    REQUIRE(trial < 2000);
    const std::size_t open = static_cast<std::size_t>(trial % 3);
    const Diagram d = test::random_diagram(rng, 5, open, 5, 3, trial % 4 != 0);
    SnakeFreeDiagram s;
    try {
      s = snake_removal(d);
    } catch (const CyclicWiring&) {
      REQUIRE(has_feedback(d));
      ++cyclic;
      continue;
    }
    REQUIRE_FALSE(has_feedback(d));
    ++evaluated;
    require_snake_free(s);
    REQUIRE(process_atoms(s) == diagram_atoms(d));
    const auto e = test::random_embedding(d, rng);
    REQUIRE(max_abs_diff(evaluate(s, e), contract(d, e)) <= 1e-12);
    // Already snake free: a second pass is structurally the identity.
    const Diagram back = to_diagram(s);
    REQUIRE(validate(back).empty());
    REQUIRE(snake_removal(back) == s);
  }
  REQUIRE(cyclic > 0);
}

SCENARIO("Fixture sentences") {
  std::mt19937_64 rng(64);
  for (const auto& f : test::sentence_fixtures()) {
    const Diagram d = fixture_diagram(f.name);
    const auto lex = test::load_lexicon(f.lexicon);
    const SnakeFreeDiagram s = snake_removal(d, lex.functional_words);
    require_snake_free(s);
    const auto e = test::random_embedding(d, lex.functional_words, rng);
    INFO(f.name);
    REQUIRE(max_abs_diff(evaluate(s, e), contract(d, e)) <= 1e-12);
  }
}

}  // namespace test_snake
}  // namespace qnlp
