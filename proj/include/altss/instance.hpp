#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "altss/common.hpp"

namespace altss {

enum class Comparison { equal, not_equal };

inline const char* to_string(Comparison c) {
  return c == Comparison::equal ? "equal" : "notequal";
}

// Alternating subset-sum instance: per level a set of distinct naturals held
// strictly increasing, a choose size, the shared target, the quantifier of
// the first level, and the innermost sum comparison. Quantifiers alternate
// level by level.
struct AltssInstance {
  std::vector<std::vector<Nat>> sets;
  std::vector<std::size_t> choose_sizes;
  Nat target = 0;
  Quantifier first_quantifier = Quantifier::exists;
  Comparison comparison = Comparison::equal;

  std::size_t level_count() const { return sets.size(); }

  Quantifier quantifier_at(std::size_t level) const {  // 0-based
    return level % 2 == 0 ? first_quantifier : opposite(first_quantifier);
  }

  bool operator==(const AltssInstance&) const = default;
};

inline void validate_instance(const AltssInstance& instance) {
  if (instance.level_count() == 0)
    throw std::invalid_argument("instance needs at least one level");
  if (instance.sets.size() != instance.choose_sizes.size())
    throw std::invalid_argument("instance set/size count mismatch");
  for (const auto& set : instance.sets)
    for (std::size_t i = 1; i < set.size(); ++i)
      if (set[i - 1] >= set[i])
        throw std::invalid_argument("instance sets must be strictly increasing");
}

// The parameterisation: the total subset-choice budget.
inline std::size_t parameter(const AltssInstance& instance) {
  std::size_t total = 0;
  for (std::size_t k : instance.choose_sizes) total += k;
  return total;
}

// Per-level chosen subsets.
using Selection = std::vector<std::vector<Nat>>;

struct CheckResult {
  bool ok = false;
  std::string reason;

  explicit operator bool() const { return ok; }
};

// Certificate check: every chosen subset has the required size, lies inside
// its set with distinct members, and the grand total satisfies the comparison.
inline CheckResult check_selection(const AltssInstance& instance, const Selection& selection) {
  if (selection.size() != instance.level_count())
    return {false, "selection level count mismatch"};
  Nat total = 0;
  for (std::size_t level = 0; level < selection.size(); ++level) {
    const auto& chosen = selection[level];
    const auto& set = instance.sets[level];
    if (chosen.size() != instance.choose_sizes[level])
      return {false, "level " + std::to_string(level + 1) + ": wrong subset size"};
    std::vector<Nat> sorted = chosen;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i - 1] == sorted[i])
        return {false, "level " + std::to_string(level + 1) + ": repeated element"};
    for (const auto& value : sorted) {
      if (!std::binary_search(set.begin(), set.end(), value))
        return {false, "level " + std::to_string(level + 1) + ": " + value.get_str() +
                           " is not in the set"};
      total += value;
    }
  }
  bool sum_ok = instance.comparison == Comparison::equal ? total == instance.target
                                                         : total != instance.target;
  if (!sum_ok)
    return {false, "sum " + total.get_str() + (instance.comparison == Comparison::equal
                                                   ? " misses target "
                                                   : " hits excluded target ") +
                       instance.target.get_str()};
  return {true, ""};
}

// The game after the first level committed to `first_choice`: one level
// fewer, reduced target, flipped leading quantifier.
inline AltssInstance residual(const AltssInstance& instance, const std::vector<Nat>& first_choice) {
  if (instance.level_count() < 2)
    throw std::invalid_argument("residual: instance has no inner levels");
  AltssInstance rest;
  rest.sets.assign(instance.sets.begin() + 1, instance.sets.end());
  rest.choose_sizes.assign(instance.choose_sizes.begin() + 1, instance.choose_sizes.end());
  rest.target = instance.target;
  for (const auto& value : first_choice) {
    if (rest.target < value)
      throw std::invalid_argument("residual: choice exceeds the target");
    rest.target -= value;
  }
  rest.first_quantifier = opposite(instance.first_quantifier);
  rest.comparison = instance.comparison;
  return rest;
}

// --- text format ---------------------------------------------------------
//
//   altss 3
//   quantifier exists
//   compare equal
//   target 7
//   set 1 choose 1: 0 3
//   set 2 choose 1: 1 2
//   set 3 choose 1: 2 3
//
// Elements are strictly increasing decimals; '#' starts a comment.

inline AltssInstance parse_instance(const std::string& text) {
  auto lines = detail::token_lines(text);
  if (lines.size() < 4) throw parse_error(0, "truncated instance file");

  auto expect = [&](std::size_t row, const std::string& head, std::size_t arity) {
    if (row >= lines.size())
      throw parse_error(0, "missing '" + head + "' line");
    const auto& [number, tokens] = lines[row];
    if (tokens[0] != head) throw parse_error(number, "expected '" + head + "' line");
    if (tokens.size() != arity) throw parse_error(number, "malformed '" + head + "' line");
    return number;
  };

  AltssInstance instance;
  std::size_t number = expect(0, "altss", 2);
  std::size_t levels = detail::parse_size(lines[0].tokens[1], number);
  if (levels == 0) throw parse_error(number, "level count must be positive");

  number = expect(1, "quantifier", 2);
  const std::string& quant = lines[1].tokens[1];
  if (quant == "exists")
    instance.first_quantifier = Quantifier::exists;
  else if (quant == "forall")
    instance.first_quantifier = Quantifier::forall;
  else
    throw parse_error(number, "unknown quantifier '" + quant + "'");

  number = expect(2, "compare", 2);
  const std::string& cmp = lines[2].tokens[1];
  if (cmp == "equal")
    instance.comparison = Comparison::equal;
  else if (cmp == "notequal")
    instance.comparison = Comparison::not_equal;
  else
    throw parse_error(number, "unknown comparison '" + cmp + "'");

  number = expect(3, "target", 2);
  instance.target = detail::parse_nat(lines[3].tokens[1], number);

  for (std::size_t level = 1; level <= levels; ++level) {
    std::size_t row = 3 + level;
    if (row >= lines.size()) throw parse_error(0, "missing set " + std::to_string(level));
    const auto& [line_number, tokens] = lines[row];
    if (tokens.size() < 4 || tokens[0] != "set" || tokens[2] != "choose")
      throw parse_error(line_number, "malformed set line");
    if (detail::parse_size(tokens[1], line_number) != level)
      throw parse_error(line_number, "sets must appear in order; expected set " +
                                         std::to_string(level));
    const std::string& count_tok = tokens[3];
    if (count_tok.empty() || count_tok.back() != ':')
      throw parse_error(line_number, "choose count must end with ':'");
    instance.choose_sizes.push_back(
        detail::parse_size(count_tok.substr(0, count_tok.size() - 1), line_number));
    std::vector<Nat> set;
    for (std::size_t i = 4; i < tokens.size(); ++i) {
      Nat value = detail::parse_nat(tokens[i], line_number);
      if (!set.empty()) {
        if (set.back() == value) throw parse_error(line_number, "duplicate element " + tokens[i]);
        if (set.back() > value)
          throw parse_error(line_number, "elements must be strictly increasing");
      }
      set.push_back(std::move(value));
    }
    instance.sets.push_back(std::move(set));
  }
  if (lines.size() > 4 + levels)
    throw parse_error(lines[4 + levels].number, "unexpected content after the last set");
  return instance;
}

inline std::string serialize_instance(const AltssInstance& instance) {
  std::string out = "altss " + std::to_string(instance.level_count()) + "\n";
  out += std::string("quantifier ") + to_string(instance.first_quantifier) + "\n";
  out += std::string("compare ") + to_string(instance.comparison) + "\n";
  out += "target " + instance.target.get_str() + "\n";
  for (std::size_t level = 0; level < instance.level_count(); ++level) {
    out += "set " + std::to_string(level + 1) + " choose " +
           std::to_string(instance.choose_sizes[level]) + ":";
    for (const auto& value : instance.sets[level]) out += " " + value.get_str();
    out += "\n";
  }
  return out;
}

}  // namespace altss
