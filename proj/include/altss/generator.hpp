#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "altss/common.hpp"
#include "altss/instance.hpp"
#include "altss/logic.hpp"

namespace altss {

// Deterministic generator (splitmix64) so seeded corpora are byte-identical
// across platforms and standard libraries.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  std::uint64_t in(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool coin() { return next() & 1; }
};

// One binary relation over a universe of up to max_universe elements; each
// tuple is present independently with probability one half.
inline RelationalStructure random_structure(SplitMix64& rng, std::size_t max_universe) {
  RelationalStructure structure;
  const std::size_t size = rng.in(1, max_universe);
  for (std::size_t i = 1; i <= size; ++i) structure.elements.push_back("e" + std::to_string(i));
  auto& pairs = structure.relations["E"];
  for (std::size_t a = 1; a <= size; ++a)
    for (std::size_t b = 1; b <= size; ++b)
      if (rng.coin()) pairs.insert({a, b});
  return structure;
}

struct GeneratorCaps {
  std::size_t max_universe = 2;
  std::size_t max_vars = 3;
  std::size_t max_atoms = 2;
  std::size_t levels = 3;
};

// Simple positive prefix formula: `levels` alternating blocks starting
// existential, sizes at least one summing to at most max_vars, matrix
// connective fixed by the level parity, atoms drawn uniformly over ordered
// pairs of distinct variables.
inline PrefixFormula random_simple_formula(SplitMix64& rng, const GeneratorCaps& caps) {
  if (caps.levels == 0 || caps.levels > caps.max_vars)
    throw std::invalid_argument("level count must fit within the variable cap");
  PrefixFormula formula;
  std::vector<std::size_t> sizes(caps.levels, 1);
  for (std::size_t extra = rng.below(caps.max_vars - caps.levels + 1); extra > 0; --extra)
    ++sizes[rng.below(caps.levels)];
  Quantifier quant = Quantifier::exists;
  for (std::size_t size : sizes) {
    formula.blocks.push_back({quant, size});
    quant = opposite(quant);
  }
  formula.connective = caps.levels % 2 == 1 ? Connective::conj : Connective::disj;

  const std::size_t q = formula.var_count();
  std::size_t atom_count = rng.below(caps.max_atoms + 1);
  for (std::size_t i = 0; i < atom_count && q >= 2; ++i) {
    Atom atom;
    atom.relation = "E";
    atom.var1 = rng.in(1, q);
    do {
      atom.var2 = rng.in(1, q);
    } while (atom.var2 == atom.var1);
    atom.polarity = Polarity::positive;
    if (std::find(formula.atoms.begin(), formula.atoms.end(), atom) == formula.atoms.end())
      formula.atoms.push_back(atom);
  }
  return formula;
}

struct InstanceCaps {
  std::size_t levels = 3;
  std::size_t max_set_size = 4;
  std::uint64_t max_element = 30;
  bool legal_shapes = false;             // force 1 <= k_i <= |A_i|
  std::uint64_t selection_budget = 10'000;  // keep the full selection space this small
};

namespace detail {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > cap) return cap + 1;
  }
  return result;
}

}  // namespace detail

// Random instance with a bounded selection space. Targets are biased: half
// the time the sum of a random selection (so both verdicts occur often),
// otherwise uniform below the total.
inline AltssInstance random_instance(SplitMix64& rng, const InstanceCaps& caps) {
  AltssInstance instance;
  while (true) {
    instance.sets.clear();
    instance.choose_sizes.clear();
    std::uint64_t selections = 1;
    for (std::size_t level = 0; level < caps.levels; ++level) {
      std::size_t n = rng.in(caps.legal_shapes ? 1 : 0, caps.max_set_size);
      std::set<Nat> values;
      while (values.size() < n)
        values.insert(Nat(static_cast<unsigned long>(rng.below(caps.max_element + 1))));
      std::size_t k = caps.legal_shapes ? rng.in(1, n) : rng.in(0, n + 1);
      instance.sets.emplace_back(values.begin(), values.end());
      instance.choose_sizes.push_back(k);
      std::uint64_t ways = detail::binomial_capped(n, k, caps.selection_budget);
      selections = ways == 0 ? 0 : std::min(selections * std::max<std::uint64_t>(ways, 1),
                                            caps.selection_budget + 1);
    }
    if (selections <= caps.selection_budget) break;
  }

  bool legal = true;
  for (std::size_t level = 0; level < caps.levels; ++level)
    legal = legal && instance.choose_sizes[level] <= instance.sets[level].size();
  if (legal && rng.coin()) {
    Nat sum = 0;
    for (std::size_t level = 0; level < caps.levels; ++level) {
      std::vector<std::size_t> indices(instance.sets[level].size());
      for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
      for (std::size_t i = 0; i < instance.choose_sizes[level]; ++i) {
        std::size_t pick = i + rng.below(indices.size() - i);
        std::swap(indices[i], indices[pick]);
        sum += instance.sets[level][indices[i]];
      }
    }
    instance.target = sum;
  } else {
    Nat total = 0;
    for (const auto& set : instance.sets)
      for (const Nat& value : set) total += value;
    instance.target = Nat(static_cast<unsigned long>(
        rng.below(total.fits_ulong_p() ? total.get_ui() + 1 : 1000)));
  }
  instance.first_quantifier = Quantifier::exists;
  instance.comparison = Comparison::equal;
  return instance;
}

}  // namespace altss
