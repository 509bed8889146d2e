#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "altss/common.hpp"

namespace altss {

// Finite structure over a vocabulary of binary relations. Elements carry the
// index bijection implicitly: the i-th declared element has index i (1-based),
// and relation tuples are stored as pairs of those indices.
struct RelationalStructure {
  std::vector<std::string> elements;
  std::map<std::string, std::set<std::pair<std::size_t, std::size_t>>> relations;

  std::size_t size() const { return elements.size(); }

  // 1-based index of a declared element; 0 when unknown.
  std::size_t index_of(const std::string& name) const {
    auto it = std::find(elements.begin(), elements.end(), name);
    return it == elements.end() ? 0 : static_cast<std::size_t>(it - elements.begin()) + 1;
  }

  bool has_pair(const std::string& relation, std::size_t a, std::size_t b) const {
    auto it = relations.find(relation);
    if (it == relations.end()) throw std::invalid_argument("unknown relation '" + relation + "'");
    return it->second.count({a, b}) > 0;
  }

  bool operator==(const RelationalStructure&) const = default;
};

enum class Polarity { positive, negated };
enum class Connective { conj, disj };

struct Atom {
  std::string relation;
  std::size_t var1 = 0;  // 1-based variable indices
  std::size_t var2 = 0;
  Polarity polarity = Polarity::positive;

  auto operator<=>(const Atom&) const = default;
};

struct QuantifierBlock {
  Quantifier quantifier = Quantifier::exists;
  std::size_t size = 0;

  bool operator==(const QuantifierBlock&) const = default;
};

// Prenex formula with alternating quantifier blocks over x_1..x_q and a
// conjunctive or disjunctive matrix of binary atoms. Variables are positional
// only; there are no named binders.
struct PrefixFormula {
  std::vector<QuantifierBlock> blocks;
  Connective connective = Connective::conj;
  std::vector<Atom> atoms;

  std::size_t var_count() const {
    std::size_t q = 0;
    for (const auto& block : blocks) q += block.size;
    return q;
  }

  // 1-based block index owning variable j.
  std::size_t block_of_var(std::size_t j) const {
    std::size_t upto = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      upto += blocks[b].size;
      if (j <= upto) return b + 1;
    }
    throw std::out_of_range("variable index out of range");
  }

  Quantifier quantifier_of_var(std::size_t j) const {
    return blocks[block_of_var(j) - 1].quantifier;
  }

  bool operator==(const PrefixFormula&) const = default;
};

// Complete assignment: 1-based element index for each of x_1..x_q.
using Assignment = std::vector<std::size_t>;

// --- text format ---------------------------------------------------------
//
//   universe u v
//   relation E 2: (u,v) (v,v)
//
//   prefix exists 1 forall 1 exists 1
//   matrix and
//   atom E x1 x3
//   natom E x2 x3
//
// '#' starts a comment; the section order is fixed.

inline RelationalStructure parse_structure(const std::string& text) {
  RelationalStructure structure;
  bool saw_universe = false;
  for (const auto& [number, tokens] : detail::token_lines(text)) {
    if (tokens[0] == "universe") {
      if (saw_universe) throw parse_error(number, "duplicate universe line");
      if (tokens.size() < 2) throw parse_error(number, "empty universe");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (structure.index_of(tokens[i]) != 0)
          throw parse_error(number, "duplicate element '" + tokens[i] + "'");
        structure.elements.push_back(tokens[i]);
      }
      saw_universe = true;
    } else if (tokens[0] == "relation") {
      if (!saw_universe) throw parse_error(number, "relation before universe");
      if (tokens.size() < 3) throw parse_error(number, "malformed relation line");
      const std::string& name = tokens[1];
      if (structure.relations.count(name))
        throw parse_error(number, "duplicate relation '" + name + "'");
      if (tokens[2] != "2:") throw parse_error(number, "relation arity must be 2");
      auto& pairs = structure.relations[name];
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        auto comma = tok.find(',');
        if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')' ||
            comma == std::string::npos)
          throw parse_error(number, "malformed tuple '" + tok + "'");
        std::string left = tok.substr(1, comma - 1);
        std::string right = tok.substr(comma + 1, tok.size() - comma - 2);
        std::size_t a = structure.index_of(left);
        std::size_t b = structure.index_of(right);
        if (a == 0) throw parse_error(number, "undeclared element '" + left + "'");
        if (b == 0) throw parse_error(number, "undeclared element '" + right + "'");
        pairs.insert({a, b});
      }
    } else {
      throw parse_error(number, "unexpected directive '" + tokens[0] + "'");
    }
  }
  if (!saw_universe) throw parse_error(0, "missing universe line");
  return structure;
}

inline std::string serialize_structure(const RelationalStructure& structure) {
  std::string out = "universe";
  for (const auto& element : structure.elements) out += " " + element;
  out += "\n";
  for (const auto& [name, pairs] : structure.relations) {
    out += "relation " + name + " 2:";
    for (const auto& [a, b] : pairs)
      out += " (" + structure.elements[a - 1] + "," + structure.elements[b - 1] + ")";
    out += "\n";
  }
  return out;
}

inline std::size_t parse_var_token(const std::string& tok, std::size_t q, std::size_t number) {
  if (tok.size() < 2 || tok[0] != 'x' || !detail::is_decimal(tok.substr(1)))
    throw parse_error(number, "malformed variable '" + tok + "'");
  std::size_t j = detail::parse_size(tok.substr(1), number);
  if (j < 1 || j > q) throw parse_error(number, "undeclared variable '" + tok + "'");
  return j;
}

inline PrefixFormula parse_formula(const std::string& text) {
  PrefixFormula formula;
  enum { want_prefix, want_matrix, want_atoms } state = want_prefix;
  for (const auto& [number, tokens] : detail::token_lines(text)) {
    if (tokens[0] == "prefix") {
      if (state != want_prefix) throw parse_error(number, "duplicate prefix line");
      if (tokens.size() < 3 || tokens.size() % 2 == 0)
        throw parse_error(number, "malformed prefix line");
      for (std::size_t i = 1; i + 1 < tokens.size(); i += 2) {
        QuantifierBlock block;
        if (tokens[i] == "exists")
          block.quantifier = Quantifier::exists;
        else if (tokens[i] == "forall")
          block.quantifier = Quantifier::forall;
        else
          throw parse_error(number, "unknown quantifier '" + tokens[i] + "'");
        block.size = detail::parse_size(tokens[i + 1], number);
        if (!formula.blocks.empty() &&
            formula.blocks.back().quantifier == block.quantifier)
          throw parse_error(number, "quantifier blocks must alternate");
        formula.blocks.push_back(block);
      }
      state = want_matrix;
    } else if (tokens[0] == "matrix") {
      if (state != want_matrix)
        throw parse_error(number, state == want_prefix ? "matrix before prefix"
                                                       : "duplicate matrix line");
      if (tokens.size() != 2 || (tokens[1] != "and" && tokens[1] != "or"))
        throw parse_error(number, "matrix must be 'and' or 'or'");
      formula.connective = tokens[1] == "and" ? Connective::conj : Connective::disj;
      state = want_atoms;
    } else if (tokens[0] == "atom" || tokens[0] == "natom") {
      if (state != want_atoms) throw parse_error(number, "atom before matrix");
      if (tokens.size() != 4) throw parse_error(number, "malformed atom line");
      Atom atom;
      atom.relation = tokens[1];
      atom.var1 = parse_var_token(tokens[2], formula.var_count(), number);
      atom.var2 = parse_var_token(tokens[3], formula.var_count(), number);
      atom.polarity = tokens[0] == "atom" ? Polarity::positive : Polarity::negated;
      // exact duplicates collapse; the matrix is a set of atoms
      if (std::find(formula.atoms.begin(), formula.atoms.end(), atom) == formula.atoms.end())
        formula.atoms.push_back(atom);
    } else {
      throw parse_error(number, "unexpected directive '" + tokens[0] + "'");
    }
  }
  if (state == want_prefix) throw parse_error(0, "missing prefix line");
  if (state == want_matrix) throw parse_error(0, "missing matrix line");
  return formula;
}

inline std::string serialize_formula(const PrefixFormula& formula) {
  std::string out = "prefix";
  for (const auto& block : formula.blocks)
    out += std::string(" ") + to_string(block.quantifier) + " " + std::to_string(block.size);
  out += "\nmatrix ";
  out += formula.connective == Connective::conj ? "and" : "or";
  out += "\n";
  for (const auto& atom : formula.atoms) {
    out += atom.polarity == Polarity::positive ? "atom " : "natom ";
    out += atom.relation + " x" + std::to_string(atom.var1) + " x" + std::to_string(atom.var2);
    out += "\n";
  }
  return out;
}

// Token count of the serialised formula; the measure used for the reduction's
// parameter bound.
inline std::size_t formula_size(const PrefixFormula& formula) {
  return detail::tokenize(serialize_formula(formula)).size();
}

enum class PolarityMode { positive, negated, any };

// Checks the shape required of a "simple" level-ell formula: ell blocks
// starting existential, conjunctive matrix for odd ell and disjunctive for
// even ell, and atom polarities per `mode`. Violations are data, not errors.
inline std::vector<std::string> validate_simple(const PrefixFormula& formula,
                                                std::size_t expected_level,
                                                PolarityMode mode) {
  std::vector<std::string> violations;
  if (formula.blocks.size() != expected_level)
    violations.push_back("block count " + std::to_string(formula.blocks.size()) +
                         " differs from declared level " + std::to_string(expected_level));
  if (!formula.blocks.empty() && formula.blocks.front().quantifier != Quantifier::exists)
    violations.push_back("first quantifier block must be existential");
  const bool odd = expected_level % 2 == 1;
  if (odd && formula.connective != Connective::conj)
    violations.push_back("odd level requires a conjunctive matrix");
  if (!odd && formula.connective != Connective::disj)
    violations.push_back("even level requires a disjunctive matrix");
  for (const auto& atom : formula.atoms) {
    if (mode == PolarityMode::positive && atom.polarity != Polarity::positive)
      violations.push_back("negated atom on " + atom.relation + " not allowed");
    if (mode == PolarityMode::negated && atom.polarity != Polarity::negated)
      violations.push_back("positive atom on " + atom.relation + " not allowed");
  }
  return violations;
}

inline bool atom_holds(const RelationalStructure& structure, const Atom& atom,
                       std::size_t value1, std::size_t value2) {
  bool present = structure.has_pair(atom.relation, value1, value2);
  return atom.polarity == Polarity::positive ? present : !present;
}

// Evaluates the quantifier-free matrix under a complete assignment.
inline bool matrix_holds(const RelationalStructure& structure, const Assignment& assignment,
                         const PrefixFormula& formula) {
  if (assignment.size() < formula.var_count())
    throw std::invalid_argument("matrix_holds: assignment is not total");
  for (const auto& atom : formula.atoms) {
    bool value = atom_holds(structure, atom, assignment[atom.var1 - 1], assignment[atom.var2 - 1]);
    if (formula.connective == Connective::conj && !value) return false;
    if (formula.connective == Connective::disj && value) return true;
  }
  return formula.connective == Connective::conj;
}

struct ModelCheckResult {
  bool holds = false;
  // One assignment path realising the verdict: at every variable the mover on
  // the winning side takes the first (canonical element order) choice that
  // preserves the node value; the losing side's entry is its first choice
  // achieving the node value, i.e. the first refutation when it has one.
  Assignment variation;
};

namespace detail {

inline bool model_check_rec(const RelationalStructure& structure, const PrefixFormula& formula,
                            const std::vector<Quantifier>& quants, Assignment& assignment,
                            std::size_t var, Assignment& variation) {
  if (var == quants.size()) {
    variation.clear();
    return matrix_holds(structure, assignment, formula);
  }
  const bool existential = quants[var] == Quantifier::exists;
  bool have_first = false;
  Assignment first_tail;
  for (std::size_t element = 1; element <= structure.size(); ++element) {
    assignment[var] = element;
    Assignment tail;
    bool value = model_check_rec(structure, formula, quants, assignment, var + 1, tail);
    if (value == existential) {
      variation.assign(1, element);
      variation.insert(variation.end(), tail.begin(), tail.end());
      assignment[var] = 0;
      return existential;
    }
    if (!have_first) {
      have_first = true;
      first_tail.assign(1, element);
      first_tail.insert(first_tail.end(), tail.begin(), tail.end());
    }
  }
  assignment[var] = 0;
  variation = std::move(first_tail);
  return !existential;
}

}  // namespace detail

// Brute-force model checking of the alternating prefix over the structure's
// domain. Blocks of size zero are skipped without consuming an alternation.
inline ModelCheckResult model_check(const RelationalStructure& structure,
                                    const PrefixFormula& formula) {
  if (structure.size() == 0) throw std::invalid_argument("model_check: empty universe");
  for (const auto& atom : formula.atoms)
    if (!structure.relations.count(atom.relation))
      throw std::invalid_argument("model_check: unknown relation '" + atom.relation + "'");

  std::vector<Quantifier> quants;
  for (const auto& block : formula.blocks)
    for (std::size_t i = 0; i < block.size; ++i) quants.push_back(block.quantifier);

  Assignment assignment(quants.size(), 0);
  ModelCheckResult result;
  result.holds = detail::model_check_rec(structure, formula, quants, assignment, 0,
                                         result.variation);
  return result;
}

}  // namespace altss
