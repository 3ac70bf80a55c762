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

#include "qnlp/pregroup.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "qnlp/errors.hpp"

namespace qnlp {

PregroupType adjoint(const PregroupType& type, Side side) {
  const int shift = side == Side::Left ? -1 : 1;
  PregroupType out;
  out.atoms.reserve(type.atoms.size());
  for (auto it = type.atoms.rbegin(); it != type.atoms.rend(); ++it) {
    out.atoms.push_back({it->atom, it->winding + shift});
  }
  return out;
}

PregroupType operator*(const PregroupType& lhs, const PregroupType& rhs) {
  PregroupType out = lhs;
  out.atoms.insert(out.atoms.end(), rhs.atoms.begin(), rhs.atoms.end());
  return out;
}

std::string to_string(const TypedAtom& atom) {
  if (atom.winding == 0) return atom.atom;
  const char mark = atom.winding < 0 ? 'l' : 'r';
  return atom.atom + "." +
         std::string(static_cast<std::size_t>(std::abs(atom.winding)), mark);
}

std::string to_string(const PregroupType& type) {
  if (type.empty()) return "1";
  std::string out;
  for (const auto& atom : type.atoms) {
    if (!out.empty()) out += ' ';
    out += to_string(atom);
  }
  return out;
}

PregroupType parse_type(std::string_view text) {
  PregroupType out;
  std::istringstream in{std::string(text)};
  std::string token;
  std::size_t index = 0;
  while (in >> token) {
    const std::string where = "atom " + std::to_string(index++);
    if (token == "1") continue;
    const auto dot = token.find('.');
    TypedAtom atom{token.substr(0, dot), 0};
    if (atom.atom.empty()) throw FormatError(where, "empty atom name");
    if (dot != std::string::npos) {
      const std::string marks = token.substr(dot + 1);
      if (marks.empty() ||
          marks.find_first_not_of(marks[0]) != std::string::npos ||
          (marks[0] != 'l' && marks[0] != 'r')) {
        throw FormatError(where, "bad adjoint suffix in '" + token + "'");
      }
      const int count = static_cast<int>(marks.size());
      atom.winding = marks[0] == 'l' ? -count : count;
    }
    out.atoms.push_back(std::move(atom));
  }
  return out;
}

Lexicon::Lexicon(std::map<std::string, int> atom_dims,
                 std::string sentence_atom,
                 std::map<std::string, PregroupType> words)
    : atom_dims_(std::move(atom_dims)),
      sentence_atom_(std::move(sentence_atom)),
      words_(std::move(words)) {
  for (const auto& [name, dim] : atom_dims_) {
    if (name.empty()) throw FormatError("/atoms", "empty atom name");
    if (dim < 1) {
      throw FormatError("/atoms/" + name, "dimension must be positive");
    }
  }
  if (atom_dims_.count(sentence_atom_) == 0) {
    throw FormatError("/sentence_type",
                      "sentence atom '" + sentence_atom_ + "' not declared");
  }
  for (const auto& [word, type] : words_) {
    for (std::size_t i = 0; i < type.atoms.size(); ++i) {
      if (atom_dims_.count(type.atoms[i].atom) == 0) {
        throw FormatError("/words/" + word + "/" + std::to_string(i),
                          "undeclared atom '" + type.atoms[i].atom + "'");
      }
    }
  }
}

const PregroupType& Lexicon::type_of(const std::string& word) const {
  auto it = words_.find(word);
  if (it == words_.end()) throw UnknownWord(word);
  return it->second;
}

int Lexicon::dim(const std::string& atom) const {
  auto it = atom_dims_.find(atom);
  if (it == atom_dims_.end()) {
    throw FormatError("", "undeclared atom '" + atom + "'");
  }
  return it->second;
}

bool contracts(const TypedAtom& left, const TypedAtom& right) {
  return left.atom == right.atom && left.winding + 1 == right.winding;
}

std::vector<TypedAtom> sentence_atoms(std::span<const std::string> tokens,
                                      const Lexicon& lex) {
  std::vector<TypedAtom> atoms;
  for (const auto& token : tokens) {
    const auto& type = lex.type_of(token);
    atoms.insert(atoms.end(), type.atoms.begin(), type.atoms.end());
  }
  return atoms;
}

namespace {

/// Full-reducibility table over half-open intervals [i, j). partner(i, j) is
/// the smallest k such that (i, k) heads a complete noncrossing matching of
/// the interval, which yields the lexicographically smallest cap list.
class IntervalTable {
 public:
  explicit IntervalTable(std::span<const TypedAtom> atoms)
      : m_(atoms.size()), partner_((m_ + 1) * (m_ + 1), kNone) {
    for (std::size_t len = 2; len <= m_; len += 2) {
      for (std::size_t i = 0; i + len <= m_; ++i) {
        const std::size_t j = i + len;
        for (std::size_t k = i + 1; k < j; k += 2) {
          if (contracts(atoms[i], atoms[k]) && reducible(i + 1, k) &&
              reducible(k + 1, j)) {
            at(i, j) = k;
            break;
          }
        }
      }
    }
  }

  bool reducible(std::size_t i, std::size_t j) const {
    if (i >= j) return true;
    return at(i, j) != kNone;
  }

  void append_caps(std::size_t i, std::size_t j,
                   std::vector<std::pair<std::size_t, std::size_t>>& out) const {
    while (i < j) {
      const std::size_t k = at(i, j);
      out.emplace_back(i, k);
      append_caps(i + 1, k, out);
      i = k + 1;
    }
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t& at(std::size_t i, std::size_t j) {
    return partner_[i * (m_ + 1) + j];
  }
  std::size_t at(std::size_t i, std::size_t j) const {
    return partner_[i * (m_ + 1) + j];
  }

  std::size_t m_;
  std::vector<std::size_t> partner_;
};

bool is_sentence(const TypedAtom& atom, const std::string& sentence_atom) {
  return atom.winding == 0 && atom.atom == sentence_atom;
}

}  // namespace

std::optional<Reduction> reduce(std::span<const TypedAtom> atoms,
                                const std::string& sentence_atom) {
  const IntervalTable table(atoms);
  std::optional<Reduction> best;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (!is_sentence(atoms[k], sentence_atom)) continue;
    if (!table.reducible(0, k) || !table.reducible(k + 1, atoms.size())) {
      continue;
    }
    Reduction candidate;
    table.append_caps(0, k, candidate.caps);
    table.append_caps(k + 1, atoms.size(), candidate.caps);
    candidate.open = {k};
    if (!best || candidate.caps < best->caps) best = std::move(candidate);
  }
  return best;
}

int harmony_of(std::span<const TypedAtom> atoms,
               const std::string& sentence_atom) {
  const IntervalTable table(atoms);
  const std::size_t m = atoms.size();
  constexpr int kUnreachable = std::numeric_limits<int>::min() / 2;
  std::vector<int> best(m + 1, kUnreachable);
  best[0] = 0;
  for (std::size_t p = 1; p <= m; ++p) {
    const int leave_open = is_sentence(atoms[p - 1], sentence_atom) ? 0 : -1;
    best[p] = best[p - 1] + leave_open;
    for (std::size_t q = 0; q + 1 < p; ++q) {
      if ((p - q) % 2 == 0 && table.reducible(q, p)) {
        best[p] = std::max(best[p], best[q]);
      }
    }
  }
  return best[m];
}

std::vector<std::string> reduction_violations(std::span<const TypedAtom> atoms,
                                              const Reduction& reduction,
                                              const std::string& sentence_atom) {
  std::vector<std::string> out;
  const std::size_t m = atoms.size();
  std::vector<int> seen(m, 0);
  for (const auto& [i, j] : reduction.caps) {
    if (i >= m || j >= m || i >= j) {
      out.push_back("cap (" + std::to_string(i) + "," + std::to_string(j) +
                    ") out of range or unordered");
      continue;
    }
    ++seen[i];
    ++seen[j];
    if (!contracts(atoms[i], atoms[j])) {
      out.push_back("cap (" + std::to_string(i) + "," + std::to_string(j) +
                    ") does not contract " + to_string(atoms[i]) + " " +
                    to_string(atoms[j]));
    }
  }
  for (auto k : reduction.open) {
    if (k >= m) {
      out.push_back("open atom " + std::to_string(k) + " out of range");
      continue;
    }
    ++seen[k];
    for (const auto& [i, j] : reduction.caps) {
      if (i < k && k < j) {
        out.push_back("open atom " + std::to_string(k) + " enclosed by cap");
      }
    }
  }
  for (std::size_t p = 0; p < m; ++p) {
    if (seen[p] != 1) {
      out.push_back("atom " + std::to_string(p) + " covered " +
                    std::to_string(seen[p]) + " times");
    }
  }
  for (std::size_t a = 0; a < reduction.caps.size(); ++a) {
    for (std::size_t b = 0; b < reduction.caps.size(); ++b) {
      const auto [i, j] = reduction.caps[a];
      const auto [k, l] = reduction.caps[b];
      if (i < k && k < j && j < l) out.push_back("caps cross");
    }
  }
  if (reduction.open.size() != 1 ||
      (reduction.open[0] < m &&
       !is_sentence(atoms[reduction.open[0]], sentence_atom))) {
    out.push_back("reduction must leave exactly one sentence atom open");
  }
  return out;
}

std::optional<Reduction> parse(std::span<const std::string> tokens,
                               const Lexicon& lex) {
  if (tokens.empty()) return std::nullopt;
  const auto atoms = sentence_atoms(tokens, lex);
  return reduce(atoms, lex.sentence_atom());
}

int harmony(std::span<const std::string> tokens, const Lexicon& lex) {
  const auto atoms = sentence_atoms(tokens, lex);
  return harmony_of(atoms, lex.sentence_atom());
}

bool is_grammatical(std::span<const std::string> tokens, const Lexicon& lex) {
  return parse(tokens, lex).has_value();
}

}  // namespace qnlp
