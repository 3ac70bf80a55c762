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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qnlp {

/// An atomic type together with its adjoint winding: 0 is the plain type,
/// -1 the left adjoint, +1 the right adjoint, and |z| > 1 iterated adjoints.
struct TypedAtom {
  std::string atom;
  int winding = 0;

  auto operator<=>(const TypedAtom&) const = default;
};

/// Product of typed atoms. The empty product is the unit type.
struct PregroupType {
  std::vector<TypedAtom> atoms;

  std::size_t size() const { return atoms.size(); }
  bool empty() const { return atoms.empty(); }
  auto operator<=>(const PregroupType&) const = default;
};

enum class Side { Left, Right };

/// Left or right adjoint of a product: reverses the atoms and shifts every
/// winding by -1 (left) or +1 (right).
PregroupType adjoint(const PregroupType& type, Side side);

PregroupType operator*(const PregroupType& lhs, const PregroupType& rhs);

/// "n", "n.r", "n.ll", ...
std::string to_string(const TypedAtom& atom);
/// Space separated atoms; the unit type prints as "1".
std::string to_string(const PregroupType& type);
/// Inverse of to_string. Throws FormatError.
PregroupType parse_type(std::string_view text);

/// Atomic types with their dimensions, the sentence atom, and the typing map.
class Lexicon {
 public:
  Lexicon() = default;
  /// Throws FormatError when a word references an undeclared atom, the
  /// sentence atom is undeclared, or a dimension is not positive.
  Lexicon(std::map<std::string, int> atom_dims, std::string sentence_atom,
          std::map<std::string, PregroupType> words);

  const std::map<std::string, int>& atoms() const { return atom_dims_; }
  const std::string& sentence_atom() const { return sentence_atom_; }
  const std::map<std::string, PregroupType>& words() const { return words_; }

  bool contains(const std::string& word) const {
    return words_.count(word) != 0;
  }
  /// Throws UnknownWord.
  const PregroupType& type_of(const std::string& word) const;
  int dim(const std::string& atom) const;

 private:
  std::map<std::string, int> atom_dims_;
  std::string sentence_atom_;
  std::map<std::string, PregroupType> words_;
};

/// Contraction-only witness over the concatenated atom sequence of a
/// sentence. Caps are stored sorted with `first < second`.
struct Reduction {
  std::vector<std::pair<std::size_t, std::size_t>> caps;
  std::vector<std::size_t> open;

  bool operator==(const Reduction&) const = default;
};

/// True when atoms[i] atoms[j] (i < j) contract to the unit: same atom and
/// winding(j) = winding(i) + 1.
bool contracts(const TypedAtom& left, const TypedAtom& right);

/// Concatenated atom sequence of the tokens. Throws UnknownWord.
std::vector<TypedAtom> sentence_atoms(std::span<const std::string> tokens,
                                      const Lexicon& lex);

/// Lexicographically smallest noncrossing contraction-only reduction of
/// `atoms` leaving exactly one open atom, equal to `sentence_atom` with
/// winding 0. Interval DP, cubic in the atom count.
std::optional<Reduction> reduce(std::span<const TypedAtom> atoms,
                                const std::string& sentence_atom);

/// Best partial reduction score: minus the number of open atoms that are not
/// a winding-0 sentence atom. Caps never enclose an open atom.
int harmony_of(std::span<const TypedAtom> atoms,
               const std::string& sentence_atom);

/// Reduction invariants: coverage, winding compatibility, planarity, and a
/// single open winding-0 sentence atom. Empty when the reduction is valid.
std::vector<std::string> reduction_violations(std::span<const TypedAtom> atoms,
                                              const Reduction& reduction,
                                              const std::string& sentence_atom);

std::optional<Reduction> parse(std::span<const std::string> tokens,
                               const Lexicon& lex);
int harmony(std::span<const std::string> tokens, const Lexicon& lex);
bool is_grammatical(std::span<const std::string> tokens, const Lexicon& lex);

}  // namespace qnlp
