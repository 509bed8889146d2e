#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "altss/common.hpp"
#include "altss/instance.hpp"

namespace altss {

struct SolveResult {
  bool holds = false;
  // Canonical optimal line of play: at every level the mover takes the
  // lexicographically least subset (over the ascending set order) whose
  // residual game already has the node's value. For the winner these are
  // witnesses; for the loser the first refuting choice when one exists.
  Selection variation;
};

namespace detail {

// Exact game-tree search. Levels alternate quantifiers; a level whose choose
// size exceeds its set leaves the owning quantifier without a move and
// decides the subtree by itself.
//
// For equal-comparison instances every combination window whose achievable
// total can no longer meet the target is pruned; such subtrees are uniformly
// false, so pruning changes neither the verdict nor the canonical variation.
// Verdicts scan candidate indices largest first (the interval bounds bite
// immediately on the dominant values of reduced instances); the variation is
// then assembled lexicographically, fixing one index at a time and asking
// the verdict search whether the remaining window still achieves the node
// value. The result is identical to a sequential lexicographic search.
// Not-equal instances are searched in full.
class AltssSearch {
 public:
  explicit AltssSearch(const AltssInstance& instance) : inst_(instance) {
    const std::size_t levels = inst_.level_count();
    prefix_.resize(levels);
    legal_.resize(levels);
    for (std::size_t i = 0; i < levels; ++i) {
      const auto& set = inst_.sets[i];
      prefix_[i].assign(set.size() + 1, Nat(0));
      for (std::size_t j = 0; j < set.size(); ++j) prefix_[i][j + 1] = prefix_[i][j] + set[j];
      legal_[i] = inst_.choose_sizes[i] <= set.size();
    }
    first_illegal_from_.assign(levels + 1, levels);
    for (std::size_t i = levels; i-- > 0;)
      first_illegal_from_[i] = legal_[i] ? first_illegal_from_[i + 1] : i;
    suffix_min_.assign(levels + 1, Nat(0));
    suffix_max_.assign(levels + 1, Nat(0));
    for (std::size_t i = levels; i-- > 0;) {
      if (first_illegal_from_[i] != levels) continue;  // unused below an illegal level
      const auto& pre = prefix_[i];
      const std::size_t k = inst_.choose_sizes[i];
      suffix_min_[i] = pre[k] + suffix_min_[i + 1];
      suffix_max_[i] = (pre[pre.size() - 1] - pre[pre.size() - 1 - k]) + suffix_max_[i + 1];
    }
  }

  bool run(Selection& variation) {
    bool verdict = value(0, Nat(0));
    build_variation(0, Nat(0), verdict, variation);
    return verdict;
  }

 private:
  bool leaf(const Nat& total) const {
    return inst_.comparison == Comparison::equal ? total == inst_.target
                                                 : total != inst_.target;
  }

  // True when no completion in [completion_min, completion_max] plus the
  // deeper levels can reach the target; only meaningful for equal instances
  // with all deeper levels legal.
  bool outside_reach(std::size_t level, const Nat& partial, const Nat& completion_min,
                     const Nat& completion_max) const {
    Nat lo = partial + completion_min + suffix_min_[level + 1];
    Nat hi = partial + completion_max + suffix_max_[level + 1];
    return inst_.target < lo || inst_.target > hi;
  }

  bool value(std::size_t level, const Nat& running) {
    const std::size_t levels = inst_.level_count();
    if (level == levels) return leaf(running);
    const Quantifier quant = inst_.quantifier_at(level);
    if (!legal_[level]) return quant == Quantifier::forall;
    if (std::size_t f = first_illegal_from_[level + 1]; f < levels)
      return inst_.quantifier_at(f) == Quantifier::forall;
    const bool target = quant == Quantifier::exists;
    bool found = window_has_child(level, target, 0, inst_.sets[level].size(),
                                  inst_.choose_sizes[level], running);
    return found ? target : !target;
  }

  // Does some child picking r indices from the window [lo, bound) have value
  // `target`? Candidates are scanned largest first; r <= bound - lo holds
  // throughout.
  bool window_has_child(std::size_t level, bool target, std::size_t lo, std::size_t bound,
                        std::size_t r, const Nat& partial) {
    if (r == 0) return value(level + 1, partial) == target;
    if (inst_.comparison == Comparison::equal) {
      const auto& pre = prefix_[level];
      if (outside_reach(level, partial, pre[lo + r] - pre[lo], pre[bound] - pre[bound - r]))
        return !target;  // only false children here, and the window is nonempty
    }
    const auto& set = inst_.sets[level];
    for (std::size_t i = bound; i-- > lo + r - 1;)
      if (window_has_child(level, target, lo, i, r - 1, partial + set[i])) return true;
    return false;
  }

  // Lexicographically least subset whose residual value equals v, located by
  // fixing one index at a time and testing the remaining window.
  std::vector<Nat> pick_move(std::size_t level, bool v, Nat partial) {
    const auto& set = inst_.sets[level];
    std::vector<Nat> move;
    std::size_t pos = 0;
    std::size_t r = inst_.choose_sizes[level];
    if (r == 0) return move;
    while (r > 0) {
      bool fixed = false;
      for (std::size_t i = pos; i + r <= set.size(); ++i) {
        if (window_has_child(level, v, i + 1, set.size(), r - 1, partial + set[i])) {
          move.push_back(set[i]);
          partial += set[i];
          pos = i + 1;
          --r;
          fixed = true;
          break;
        }
      }
      if (!fixed) throw std::logic_error("variation search lost the node value");
    }
    return move;
  }

  void build_variation(std::size_t level, Nat running, bool v, Selection& out) {
    out.clear();
    const std::size_t levels = inst_.level_count();
    while (level < levels) {
      if (!legal_[level]) return;  // the stuck quantifier has no move to record
      if (std::size_t f = first_illegal_from_[level + 1]; f < levels) {
        // every play runs into the stuck level; the canonical line takes the
        // first legal subsets on the way there
        for (std::size_t l = level; l < f; ++l) {
          const auto& set = inst_.sets[l];
          out.emplace_back(set.begin(), set.begin() + inst_.choose_sizes[l]);
        }
        return;
      }
      std::vector<Nat> move = pick_move(level, v, running);
      for (const Nat& value : move) running += value;
      out.push_back(std::move(move));
      ++level;
    }
  }

  const AltssInstance& inst_;
  std::vector<std::vector<Nat>> prefix_;
  std::vector<bool> legal_;
  std::vector<std::size_t> first_illegal_from_;
  std::vector<Nat> suffix_min_;
  std::vector<Nat> suffix_max_;
};

}  // namespace detail

// Decides the alternating subset-sum game. Deterministic: the verdict and
// variation match the sequential lexicographic search regardless of the
// internal evaluation order.
inline SolveResult solve(const AltssInstance& instance) {
  validate_instance(instance);
  detail::AltssSearch search(instance);
  SolveResult result;
  result.holds = search.run(result.variation);
  return result;
}

}  // namespace altss
