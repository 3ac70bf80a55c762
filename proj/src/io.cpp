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

#include "qnlp/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qnlp/errors.hpp"

namespace qnlp {

namespace {

using json = nlohmann::ordered_json;

constexpr int kIndent = 2;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n');
    std::string what = e.what();
    const auto colon = what.find("syntax error");
    throw FormatError("line " + std::to_string(line),
                      colon == std::string::npos ? what : what.substr(colon));
  }
}

/// A JSON value plus its pointer, for schema errors that name the location.
class Cursor {
 public:
  Cursor(const json& j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {}

  const json& value() const { return j_; }
  const std::string& where() const { return ptr_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(ptr_.empty() ? "/" : ptr_, what);
  }

  Cursor operator[](const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) fail("missing key '" + key + "'");
    return {*it, ptr_ + "/" + key};
  }
  Cursor operator[](std::size_t index) const {
    if (!j_.is_array()) fail("expected an array");
    if (index >= j_.size()) fail("index out of range");
    return {j_[index], ptr_ + "/" + std::to_string(index)};
  }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }
  std::vector<std::string> keys() const {
    if (!j_.is_object()) fail("expected an object");
    std::vector<std::string> out;
    for (auto it = j_.begin(); it != j_.end(); ++it) out.push_back(it.key());
    return out;
  }
  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  std::size_t index() const {
    if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<long long>() >= 0)) {
      fail("expected a nonnegative integer");
    }
    return j_.get<std::size_t>();
  }
  int integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<int>();
  }
  double number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected a boolean");
    return j_.get<bool>();
  }
  std::vector<TypedAtom> type() const {
    try {
      return parse_type(str()).atoms;
    } catch (const FormatError& e) {
      fail(e.what());
    }
  }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].index());
    return out;
  }

 private:
  const json& j_;
  std::string ptr_;
};

/// Runs `fn`, converting library errors into FormatError at `c`.
template <typename F>
auto checked(const Cursor& c, F&& fn) {
  try {
    return fn();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    c.fail(e.what());
  }
}

std::string type_text(const std::vector<TypedAtom>& atoms) {
  return atoms.empty() ? "" : to_string(PregroupType{atoms});
}

json dims_json(const std::map<std::string, int>& dims) {
  json out = json::object();
  for (const auto& [atom, dim] : dims) out[atom] = dim;
  return out;
}

std::map<std::string, int> dims_from(const Cursor& c) {
  std::map<std::string, int> out;
  for (const auto& key : c.keys()) {
    const int dim = c[key].integer();
    if (dim <= 0) c[key].fail("dimension must be positive");
    out[key] = dim;
  }
  return out;
}

// Diagrams ----------------------------------------------------------------

const char* kind_name(NodeKind k) { return k == NodeKind::Word ? "word" : "spider"; }

const char* link_name(LinkKind k) {
  switch (k) {
    case LinkKind::Cap: return "cap";
    case LinkKind::Cup: return "cup";
    case LinkKind::Wire: return "wire";
  }
  return "wire";
}

json port_json(const PortRef& p) {
  if (p.on_boundary()) return json{{"boundary", p.slot}};
  return json{{"node", p.node}, {"slot", p.slot}};
}

PortRef port_from(const Cursor& c) {
  if (c.has("boundary")) return PortRef::boundary(c["boundary"].index());
  return {c["node"].index(), c["slot"].index()};
}

json diagram_json(const Diagram& d) {
  json nodes = json::array();
  for (const auto& n : d.nodes) {
    json node{{"kind", kind_name(n.kind)}, {"name", n.name}, {"type", type_text(n.ports)}};
    if (n.effect) node["effect"] = true;
    if (n.kind == NodeKind::Spider) node["legs_in"] = n.legs_in;
    nodes.push_back(std::move(node));
  }
  json links = json::array();
  for (const auto& l : d.links) {
    links.push_back({{"a", port_json(l.a)}, {"b", port_json(l.b)}, {"kind", link_name(l.kind)}});
  }
  return {{"dims", dims_json(d.dims)},
          {"nodes", std::move(nodes)},
          {"links", std::move(links)},
          {"boundary", type_text(d.boundary)},
          {"symmetric", d.symmetric}};
}

Diagram diagram_from(const Cursor& c) {
  Diagram d;
  d.dims = dims_from(c["dims"]);
  const Cursor nodes = c["nodes"];
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Cursor n = nodes[i];
    Node node;
    const std::string kind = n["kind"].str();
    if (kind != "word" && kind != "spider") n["kind"].fail("expected 'word' or 'spider'");
    node.kind = kind == "word" ? NodeKind::Word : NodeKind::Spider;
    node.name = n["name"].str();
    node.ports = n["type"].type();
    if (n.has("effect")) node.effect = n["effect"].boolean();
    if (n.has("legs_in")) node.legs_in = n["legs_in"].index();
    d.nodes.push_back(std::move(node));
  }
  const Cursor links = c["links"];
  for (std::size_t i = 0; i < links.size(); ++i) {
    const Cursor l = links[i];
    Link link{port_from(l["a"]), port_from(l["b"]), LinkKind::Cap};
    const std::string kind = l["kind"].str();
    if (kind == "cap") link.kind = LinkKind::Cap;
    else if (kind == "cup") link.kind = LinkKind::Cup;
    else if (kind == "wire") link.kind = LinkKind::Wire;
    else l["kind"].fail("expected 'cap', 'cup' or 'wire'");
    d.links.push_back(link);
  }
  d.boundary = c["boundary"].type();
  if (c.has("symmetric")) d.symmetric = c["symmetric"].boolean();
  const auto problems = validate(d);
  if (!problems.empty()) c.fail("invalid diagram: " + problems.front());
  return d;
}

// Layouts -----------------------------------------------------------------

const char* element_name(ElementKind k) {
  switch (k) {
    case ElementKind::Word: return "word";
    case ElementKind::BellState: return "bell_state";
    case ElementKind::BellEffect: return "bell_effect";
    case ElementKind::Stub: return "stub";
  }
  return "word";
}

json row_json(const std::vector<RowElement>& row) {
  json out = json::array();
  for (const auto& e : row) {
    json el{{"kind", element_name(e.kind)}, {"ref", e.ref}};
    if (e.flipped) el["flipped"] = true;
    out.push_back(std::move(el));
  }
  return out;
}

std::vector<RowElement> row_from(const Cursor& c) {
  std::vector<RowElement> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Cursor e = c[i];
    RowElement el;
    const std::string kind = e["kind"].str();
    if (kind == "word") el.kind = ElementKind::Word;
    else if (kind == "bell_state") el.kind = ElementKind::BellState;
    else if (kind == "bell_effect") el.kind = ElementKind::BellEffect;
    else if (kind == "stub") el.kind = ElementKind::Stub;
    else e["kind"].fail("unknown element kind '" + kind + "'");
    el.ref = e["ref"].index();
    if (e.has("flipped")) el.flipped = e["flipped"].boolean();
    out.push_back(el);
  }
  return out;
}

// Snake-free diagrams -----------------------------------------------------

json process_port_json(const ProcessPort& p) {
  if (p.on_boundary()) return json{{"boundary", p.leg}};
  return json{{"process", p.process}, {"leg", p.leg}};
}

ProcessPort process_port_from(const Cursor& c) {
  if (c.has("boundary")) return {kBoundary, c["boundary"].index()};
  return {c["process"].index(), c["leg"].index()};
}

// Circuits ----------------------------------------------------------------

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::RX: return "rx";
    case GateKind::RZ: return "rz";
    case GateKind::CNOT: return "cnot";
    case GateKind::CRZ: return "crz";
    case GateKind::SWAP: return "swap";
  }
  return "h";
}

json basis_map_json(const std::map<std::size_t, Basis>& m) {
  json out = json::array();
  for (const auto& [q, b] : m) out.push_back({{"qubit", q}, {"basis", b == Basis::Zero ? "0" : "+"}});
  return out;
}

std::map<std::size_t, Basis> basis_map_from(const Cursor& c, std::size_t n_qubits) {
  std::map<std::size_t, Basis> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t q = c[i]["qubit"].index();
    if (q >= n_qubits) c[i]["qubit"].fail("qubit out of range");
    const std::string b = c[i]["basis"].str();
    if (b != "0" && b != "+") c[i]["basis"].fail("basis must be \"0\" or \"+\"");
    out[q] = b == "0" ? Basis::Zero : Basis::Plus;
  }
  return out;
}

std::string dump(const json& j) { return j.dump(kIndent) + "\n"; }

}  // namespace

LexiconFile lexicon_from_json(std::string_view text) {
  const json j = parse_json(text);
  const Cursor c(j, "");
  auto dims = dims_from(c["atoms"]);
  const std::string sentence = c["sentence_type"].str();
  std::map<std::string, PregroupType> words;
  const Cursor w = c["words"];
  for (const auto& word : w.keys()) {
    const Cursor t = w[word];
    if (t.value().is_string()) {
      words[word] = PregroupType{t.type()};
      continue;
    }
    PregroupType type;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Cursor pair = t[i];
      if (pair.size() != 2) pair.fail("expected [atom, winding]");
      type.atoms.push_back({pair[0].str(), pair[1].integer()});
    }
    words[word] = std::move(type);
  }
  LexiconFile out{checked(c, [&] { return Lexicon(dims, sentence, words); }), {}};
  if (c.has("functional")) {
    const Cursor f = c["functional"];
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string word = f[i].str();
      if (!out.lexicon.contains(word)) f[i].fail("functional word '" + word + "' is not in the lexicon");
      out.functional_words.insert(word);
    }
  }
  return out;
}

std::string lexicon_to_json(const LexiconFile& lex) {
  json words = json::object();
  for (const auto& [word, type] : lex.lexicon.words()) {
    json pairs = json::array();
    for (const auto& a : type.atoms) pairs.push_back({a.atom, a.winding});
    words[word] = std::move(pairs);
  }
  json out{{"atoms", dims_json(lex.lexicon.atoms())},
           {"sentence_type", lex.lexicon.sentence_atom()},
           {"words", std::move(words)}};
  if (!lex.functional_words.empty()) out["functional"] = lex.functional_words;
  return dump(out);
}

std::string diagram_to_json(const Diagram& d) { return dump(diagram_json(d)); }

Diagram diagram_from_json(std::string_view text) {
  const json j = parse_json(text);
  return diagram_from(Cursor(j, ""));
}

std::string layout_to_json(const BigraphLayout& layout, const CostConfig& cfg) {
  json out{{"diagram", diagram_json(layout.diagram)},
           {"state_row", row_json(layout.state_row)},
           {"effect_row", row_json(layout.effect_row)},
           {"dragged", layout.dragged},
           {"crossings", count_crossings(layout)},
           {"width", layout_width(layout)},
           {"ideal_width", ideal_width(layout)},
           {"cost", layout_cost(layout, cfg)}};
  return dump(out);
}

BigraphLayout layout_from_json(std::string_view text) {
  const json j = parse_json(text);
  const Cursor c(j, "");
  BigraphLayout layout;
  layout.diagram = diagram_from(c["diagram"]);
  layout.state_row = row_from(c["state_row"]);
  layout.effect_row = row_from(c["effect_row"]);
  layout.dragged = c["dragged"].indices();
  checked(c, [&] { return count_crossings(layout); });
  return layout;
}

std::string snake_to_json(const SnakeFreeDiagram& s) {
  json procs = json::array();
  for (const auto& p : s.processes) {
    procs.push_back({{"kind", kind_name(p.kind)},
                     {"word", p.word},
                     {"inputs", type_text(p.inputs)},
                     {"outputs", type_text(p.outputs)},
                     {"input_ports", p.input_ports},
                     {"output_ports", p.output_ports}});
  }
  json wires = json::array();
  for (const auto& w : s.wires) {
    wires.push_back({{"from", process_port_json(w.from)}, {"to", process_port_json(w.to)}});
  }
  return dump({{"dims", dims_json(s.dims)},
               {"processes", std::move(procs)},
               {"wires", std::move(wires)},
               {"boundary", type_text(s.boundary)}});
}

SnakeFreeDiagram snake_from_json(std::string_view text) {
  const json j = parse_json(text);
  const Cursor c(j, "");
  SnakeFreeDiagram s;
  s.dims = dims_from(c["dims"]);
  const Cursor procs = c["processes"];
  for (std::size_t i = 0; i < procs.size(); ++i) {
    const Cursor p = procs[i];
    ProcessNode node;
    const std::string kind = p["kind"].str();
    if (kind != "word" && kind != "spider") p["kind"].fail("expected 'word' or 'spider'");
    node.kind = kind == "word" ? NodeKind::Word : NodeKind::Spider;
    node.word = p["word"].str();
    node.inputs = p["inputs"].type();
    node.outputs = p["outputs"].type();
    node.input_ports = p["input_ports"].indices();
    node.output_ports = p["output_ports"].indices();
    if (node.input_ports.size() != node.inputs.size() ||
        node.output_ports.size() != node.outputs.size()) {
      p.fail("port lists do not match the leg types");
    }
    s.processes.push_back(std::move(node));
  }
  const Cursor wires = c["wires"];
  for (std::size_t i = 0; i < wires.size(); ++i) {
    const SnakeWire w{process_port_from(wires[i]["from"]), process_port_from(wires[i]["to"])};
    if (w.from.on_boundary() || w.from.process >= s.processes.size() ||
        w.from.leg >= s.processes[w.from.process].outputs.size()) {
      wires[i]["from"].fail("not an output leg");
    }
    s.wires.push_back(w);
  }
  s.boundary = c["boundary"].type();
  for (std::size_t i = 0; i < s.wires.size(); ++i) {
    const auto& to = s.wires[i].to;
    const bool ok = to.on_boundary()
                        ? to.leg < s.boundary.size()
                        : to.process < s.processes.size() &&
                              to.leg < s.processes[to.process].inputs.size();
    if (!ok) wires[i]["to"].fail("not an input leg or boundary slot");
  }
  return s;
}

std::string circuit_to_json(const CompiledCircuit& cc) {
  const Circuit& c = cc.circuit;
  json gates = json::array();
  for (const auto& g : c.gates) {
    json gate{{"op", gate_name(g.kind)}};
    if (g.arity() == 1) gate["qubits"] = {g.qubits[0]};
    else gate["qubits"] = {g.qubits[0], g.qubits[1]};
    if (g.parametric()) {
      if (g.angle.symbolic()) gate["param"] = g.angle.symbol;
      else gate["angle"] = g.angle.value;
    }
    gates.push_back(std::move(gate));
  }
  const Metrics m = metrics(c);
  json out{{"qubits", c.n_qubits},
           {"preps", basis_map_json(c.preps)},
           {"gates", std::move(gates)},
           {"posts", basis_map_json(c.postselects)},
           {"scalar", {c.global_scalar.real(), c.global_scalar.imag()}},
           {"boundary_perm", cc.boundary_perm},
           {"metrics",
            {{"width", m.width},
             {"depth", m.depth},
             {"cnot_count", m.cnot_count},
             {"crz_count", m.crz_count},
             {"swap_count", m.swap_count},
             {"postselect_count", m.postselect_count},
             {"entangling_equiv", m.entangling_equiv},
             {"cnot_equiv_depth", m.cnot_equiv_depth}}}};
  return dump(out);
}

CompiledCircuit circuit_from_json(std::string_view text) {
  const json j = parse_json(text);
  const Cursor c(j, "");
  CompiledCircuit out;
  Circuit& circ = out.circuit;
  circ.n_qubits = c["qubits"].index();
  circ.preps = basis_map_from(c["preps"], circ.n_qubits);
  circ.postselects = basis_map_from(c["posts"], circ.n_qubits);
  const Cursor gates = c["gates"];
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Cursor g = gates[i];
    const std::string op = g["op"].str();
    Gate gate;
    if (op == "h") gate.kind = GateKind::H;
    else if (op == "rx") gate.kind = GateKind::RX;
    else if (op == "rz") gate.kind = GateKind::RZ;
    else if (op == "cnot") gate.kind = GateKind::CNOT;
    else if (op == "crz") gate.kind = GateKind::CRZ;
    else if (op == "swap") gate.kind = GateKind::SWAP;
    else g["op"].fail("unsupported gate '" + op + "'");
    const auto qs = g["qubits"].indices();
    if (qs.size() != gate.arity()) g["qubits"].fail("wrong number of qubits");
    for (auto q : qs) {
      if (q >= circ.n_qubits) g["qubits"].fail("qubit out of range");
    }
    if (gate.arity() == 2 && qs[0] == qs[1]) g["qubits"].fail("repeated qubit");
    gate.qubits = {qs[0], qs.back()};
    if (gate.parametric()) {
      if (g.has("param")) gate.angle = Angle::param(g["param"].str());
      else gate.angle = Angle::literal(g["angle"].number());
    }
    circ.gates.push_back(std::move(gate));
  }
  const Cursor scalar = c["scalar"];
  if (scalar.size() != 2) scalar.fail("expected [re, im]");
  circ.global_scalar = {scalar[0].number(), scalar[1].number()};
  if (c.has("boundary_perm")) {
    out.boundary_perm = c["boundary_perm"].indices();
  } else {
    out.boundary_perm.resize(circ.outputs().size());
    for (std::size_t k = 0; k < out.boundary_perm.size(); ++k) out.boundary_perm[k] = k;
  }
  if (out.boundary_perm.size() != circ.outputs().size()) {
    c["boundary_perm"].fail("length differs from the output count");
  }
  return out;
}

std::string params_to_json(const ParamStore& p) {
  json bindings = json::object();
  for (const auto& [s, v] : p.bindings) bindings[s] = v;
  json sharing = json::object();
  for (const auto& [w, t] : p.sharing) sharing[w] = t;
  return dump({{"bindings", std::move(bindings)}, {"sharing", std::move(sharing)}});
}

ParamStore params_from_json(std::string_view text) {
  const json j = parse_json(text);
  const Cursor c(j, "");
  ParamStore p;
  const Cursor b = c["bindings"];
  for (const auto& key : b.keys()) p.bindings[key] = b[key].number();
  if (c.has("sharing")) {
    const Cursor s = c["sharing"];
    for (const auto& key : s.keys()) p.sharing[key] = s[key].str();
  }
  return p;
}

Corpus corpus_from_json(std::string_view text, const Lexicon& lex) {
  const json j = parse_json(text);
  const Cursor c(j, "");
  Corpus corpus{lex, {}};
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Cursor item = c[i];
    CorpusItem it;
    const Cursor tokens = item["tokens"];
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      it.tokens.push_back(tokens[k].str());
      if (!lex.contains(it.tokens.back())) tokens[k].fail("unknown word '" + it.tokens.back() + "'");
    }
    it.label = item["label"].integer();
    if (it.label != 0 && it.label != 1) item["label"].fail("label must be 0 or 1");
    if (!is_grammatical(it.tokens, lex)) item.fail("sentence is not grammatical");
    corpus.items.push_back(std::move(it));
  }
  return corpus;
}

std::string corpus_to_json(const Corpus& corpus) {
  json out = json::array();
  for (const auto& item : corpus.items) out.push_back({{"tokens", item.tokens}, {"label", item.label}});
  return dump(out);
}

std::string tensor_to_json(const Tensor& t) {
  json data = json::array();
  for (const auto& v : t.data()) data.push_back({v.real(), v.imag()});
  return dump({{"shape", t.shape()}, {"data", std::move(data)}});
}

Tensor tensor_from_json(std::string_view text) {
  const json j = parse_json(text);
  const Cursor c(j, "");
  auto shape = c["shape"].indices();
  const Cursor data = c["data"];
  std::vector<cplx> values;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].size() != 2) data[i].fail("expected [re, im]");
    values.emplace_back(data[i][0].number(), data[i][1].number());
  }
  return checked(data, [&] { return Tensor(std::move(shape), std::move(values)); });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path, "cannot write file");
  out << contents;
  if (!out) throw FormatError(path, "write failed");
}

}  // namespace qnlp
