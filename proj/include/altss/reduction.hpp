#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "altss/common.hpp"
#include "altss/instance.hpp"
#include "altss/logic.hpp"
#include "altss/numerals.hpp"

namespace altss {

// Shared state for gadget-number construction: the structure, the formula the
// gadgets encode (for even levels this is already the complemented rewrite),
// the digit layout, and indexes into blocks and atom pairs.
struct GadgetContext {
  RelationalStructure structure;
  PrefixFormula formula;
  DigitLayout layout;
  std::vector<std::size_t> var_block;      // 1-based variable -> 1-based block
  std::set<std::size_t> universal_blocks;  // 1-based block indices
  // canonical pair (j, j') with j < j' -> indices into formula.atoms
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> atoms_by_pair;
  std::size_t universal_var_total = 0;

  std::size_t universe_size() const { return structure.elements.size(); }

  // Largest digit shift a FIX number may repair: one unit per universal
  // variable that can pile onto a single position.
  std::size_t max_fix_shift() const { return universal_var_total * universe_size(); }

  std::size_t element_index(const std::string& name) const {
    std::size_t index = structure.index_of(name);
    if (index == 0) throw std::invalid_argument("unknown element '" + name + "'");
    return index;
  }
};

// Negation pushed through the prenex form: quantifiers flip, the connective
// flips, and every atom's polarity flips.
inline PrefixFormula complement_rewrite(const PrefixFormula& formula) {
  PrefixFormula out = formula;
  for (auto& block : out.blocks) block.quantifier = opposite(block.quantifier);
  out.connective = out.connective == Connective::conj ? Connective::disj : Connective::conj;
  for (auto& atom : out.atoms)
    atom.polarity = atom.polarity == Polarity::positive ? Polarity::negated : Polarity::positive;
  return out;
}

inline GadgetContext make_gadget_context(const RelationalStructure& structure,
                                         const PrefixFormula& formula) {
  if (structure.size() == 0) throw std::invalid_argument("gadget context: empty universe");
  if (formula.blocks.empty()) throw std::invalid_argument("gadget context: no quantifier blocks");
  for (const auto& atom : formula.atoms) {
    if (atom.var1 == atom.var2)
      throw std::invalid_argument("repeated-variable atom " + atom.relation + "(x" +
                                  std::to_string(atom.var1) + ",x" + std::to_string(atom.var2) +
                                  ") has no gadget");
    if (!structure.relations.count(atom.relation))
      throw std::invalid_argument("unknown relation '" + atom.relation + "'");
  }

  GadgetContext ctx;
  ctx.structure = structure;
  ctx.formula = formula;

  std::vector<std::size_t> sizes;
  for (const auto& block : formula.blocks) sizes.push_back(block.size);
  ctx.layout = make_layout(sizes, formula.atoms.size(), structure.size(), true,
                           formula.blocks.front().quantifier);

  ctx.var_block.assign(formula.var_count() + 1, 0);
  std::size_t var = 0;
  for (std::size_t b = 0; b < formula.blocks.size(); ++b) {
    if (formula.blocks[b].quantifier == Quantifier::forall) {
      ctx.universal_blocks.insert(b + 1);
      ctx.universal_var_total += formula.blocks[b].size;
    }
    for (std::size_t i = 0; i < formula.blocks[b].size; ++i) ctx.var_block[++var] = b + 1;
  }

  for (std::size_t i = 0; i < formula.atoms.size(); ++i) {
    const Atom& atom = formula.atoms[i];
    auto key = std::minmax(atom.var1, atom.var2);
    ctx.atoms_by_pair[{key.first, key.second}].push_back(i);
  }
  return ctx;
}

// VAR(a, x_j): block B_j carries I(a) at position j; everything else is zero.
inline BaseDNumeral var_number(const GadgetContext& ctx, const std::string& a, std::size_t j) {
  BaseDNumeral numeral = zero_numeral(ctx.layout);
  numeral.digits[ctx.layout.idx_block(j, j)] = ctx.element_index(a);
  return numeral;
}

// ATOM(a, b, x_j, x_j'): atom digit L_i is 1 for every atom on the pair
// {x_j, x_j'} that holds (under its own polarity) when x_j = a and x_j' = b;
// block B_j carries I(a) at position j', block B_j' carries I(b) at position
// j. Arguments are canonicalised to j < j' with (a, b) swapped accordingly.
inline BaseDNumeral atom_number(const GadgetContext& ctx, std::string a, std::string b,
                                std::size_t j, std::size_t jp) {
  if (j == jp) throw std::invalid_argument("atom number needs two distinct variables");
  if (j > jp) {
    std::swap(j, jp);
    std::swap(a, b);
  }
  const std::size_t ia = ctx.element_index(a);
  const std::size_t ib = ctx.element_index(b);
  BaseDNumeral numeral = zero_numeral(ctx.layout);
  numeral.digits[ctx.layout.idx_block(j, jp)] = ia;
  numeral.digits[ctx.layout.idx_block(jp, j)] = ib;
  auto it = ctx.atoms_by_pair.find({j, jp});
  if (it != ctx.atoms_by_pair.end()) {
    for (std::size_t index : it->second) {
      const Atom& atom = ctx.formula.atoms[index];
      std::size_t value1 = atom.var1 == j ? ia : ib;
      std::size_t value2 = atom.var2 == j ? ia : ib;
      if (atom_holds(ctx.structure, atom, value1, value2))
        numeral.digits[ctx.layout.idx_atom(index + 1)] = 1;
    }
  }
  return numeral;
}

// NORM(a, x_j): block B_j holds C - I(a) on the variable positions and 1 on
// the final counter position.
inline BaseDNumeral norm_number(const GadgetContext& ctx, const std::string& a, std::size_t j) {
  const std::size_t ia = ctx.element_index(a);
  BaseDNumeral numeral = zero_numeral(ctx.layout);
  for (std::size_t p = 1; p <= ctx.layout.var_count; ++p)
    numeral.digits[ctx.layout.idx_block(j, p)] = ctx.layout.unit_value - ia;
  numeral.digits[ctx.layout.idx_block(j, ctx.layout.block_width)] = 1;
  return numeral;
}

// FIX(x_j), defined for universally quantified j only: all atom digits 1,
// block B_j filled with C and a trailing 1.
inline BaseDNumeral fix_block_number(const GadgetContext& ctx, std::size_t j) {
  if (j < 1 || j > ctx.layout.var_count) throw std::out_of_range("variable index");
  if (!ctx.universal_blocks.count(ctx.var_block[j]))
    throw std::invalid_argument("FIX(x" + std::to_string(j) +
                                ") requires a universally quantified variable");
  BaseDNumeral numeral = zero_numeral(ctx.layout);
  for (std::size_t i = 1; i <= ctx.layout.atom_count; ++i) numeral.digits[ctx.layout.idx_atom(i)] = 1;
  for (std::size_t p = 1; p <= ctx.layout.var_count; ++p)
    numeral.digits[ctx.layout.idx_block(j, p)] = ctx.layout.unit_value;
  numeral.digits[ctx.layout.idx_block(j, ctx.layout.block_width)] = 1;
  return numeral;
}

// FIX(x_j, d): like FIX(x_j) but without atom digits and with C - d at
// position j, repairing a column that already received d from VAR numbers.
inline BaseDNumeral fix_digit_number(const GadgetContext& ctx, std::size_t j, std::size_t d) {
  if (j < 1 || j > ctx.layout.var_count) throw std::out_of_range("variable index");
  if (d > ctx.max_fix_shift())
    throw std::invalid_argument("FIX shift " + std::to_string(d) + " exceeds " +
                                std::to_string(ctx.max_fix_shift()));
  BaseDNumeral numeral = zero_numeral(ctx.layout);
  for (std::size_t p = 1; p <= ctx.layout.var_count; ++p)
    numeral.digits[ctx.layout.idx_block(j, p)] = ctx.layout.unit_value;
  numeral.digits[ctx.layout.idx_block(j, j)] = ctx.layout.unit_value - d;
  numeral.digits[ctx.layout.idx_block(j, ctx.layout.block_width)] = 1;
  return numeral;
}

// WAIT(0..s) followed by NOWAIT. The WAIT numbers each set one high digit;
// their sum equals NOWAIT, which sets all s+1 of them.
inline std::vector<BaseDNumeral> wait_numbers(const GadgetContext& ctx) {
  if (ctx.layout.high_width == 0)
    throw std::invalid_argument("layout has no wait extension");
  std::vector<BaseDNumeral> numbers;
  for (std::size_t h = 0; h <= ctx.layout.wait_top; ++h) {
    BaseDNumeral numeral = zero_numeral(ctx.layout);
    numeral.digits[ctx.layout.idx_high(h)] = 1;
    numbers.push_back(std::move(numeral));
  }
  BaseDNumeral nowait = zero_numeral(ctx.layout);
  for (std::size_t h = 0; h <= ctx.layout.wait_top; ++h) nowait.digits[ctx.layout.idx_high(h)] = 1;
  numbers.push_back(std::move(nowait));
  return numbers;
}

struct Targets {
  BaseDNumeral t_numeral;
  BaseDNumeral t_prime_numeral;
  Nat t;
  Nat t_prime;
};

// t: n atom ones, then every block C,...,C,1. t': the same with the s+1 high
// digits set to one.
inline Targets targets(const GadgetContext& ctx) {
  Targets out;
  out.t_numeral = zero_numeral(ctx.layout);
  for (std::size_t i = 1; i <= ctx.layout.atom_count; ++i)
    out.t_numeral.digits[ctx.layout.idx_atom(i)] = 1;
  for (std::size_t j = 1; j <= ctx.layout.var_count; ++j) {
    for (std::size_t p = 1; p <= ctx.layout.var_count; ++p)
      out.t_numeral.digits[ctx.layout.idx_block(j, p)] = ctx.layout.unit_value;
    out.t_numeral.digits[ctx.layout.idx_block(j, ctx.layout.block_width)] = 1;
  }
  out.t_prime_numeral = out.t_numeral;
  for (std::size_t h = 0; h < ctx.layout.high_width; ++h)
    out.t_prime_numeral.digits[ctx.layout.idx_high(h)] = 1;
  out.t = to_natural(out.t_numeral);
  out.t_prime = to_natural(out.t_prime_numeral);
  return out;
}

// Repair for a play whose universal choices left `missing_var` unassigned:
// FIX(missing_var) supplies the atom digits, and for every other variable a
// FIX(x_j, d) whose shift d is read off the diagonal digit the partial sum
// already accumulated at position j of block B_j.
inline std::vector<BaseDNumeral> repair_fix_numbers(const GadgetContext& ctx,
                                                    const BaseDNumeral& partial_sum,
                                                    std::size_t missing_var) {
  std::vector<BaseDNumeral> repair;
  repair.push_back(fix_block_number(ctx, missing_var));
  for (std::size_t j = 1; j <= ctx.layout.var_count; ++j) {
    if (j == missing_var) continue;
    std::uint64_t deficit = partial_sum.digits[ctx.layout.idx_block(j, j)];
    repair.push_back(fix_digit_number(ctx, j, static_cast<std::size_t>(deficit)));
  }
  return repair;
}

struct ReductionReport {
  DigitLayout layout;
  std::size_t level_count = 0;
  // Even-level route: the emitted instance is the complemented game, so a
  // consumer must negate the solver verdict to read off model-checking truth.
  bool complement = false;
  std::size_t var_numbers = 0;
  std::size_t atom_numbers = 0;
  std::size_t norm_numbers = 0;
  std::size_t fix_block_numbers = 0;
  std::size_t fix_digit_numbers = 0;
  std::size_t wait_numbers = 0;
  std::size_t merged_duplicates = 0;
  std::size_t parameter = 0;
  Nat target;
  std::map<Nat, std::string> value_names;

  std::string to_text() const {
    std::string out;
    out += "levels: " + std::to_string(level_count) + "\n";
    out += std::string("complement: ") + (complement ? "yes" : "no") + "\n";
    out += "atoms: " + std::to_string(layout.atom_count) + "\n";
    out += "variables: " + std::to_string(layout.var_count) + "\n";
    out += "base: " + std::to_string(layout.base) + "\n";
    out += "unit: " + std::to_string(layout.unit_value) + "\n";
    out += "wait-top: " + std::to_string(layout.wait_top) + "\n";
    out += "parameter: " + std::to_string(parameter) + "\n";
    out += "target: " + target.get_str() + "\n";
    out += "census: var " + std::to_string(var_numbers) + ", atom " + std::to_string(atom_numbers) +
           ", norm " + std::to_string(norm_numbers) + ", fix-block " +
           std::to_string(fix_block_numbers) + ", fix-digit " + std::to_string(fix_digit_numbers) +
           ", wait " + std::to_string(wait_numbers) + ", merged " +
           std::to_string(merged_duplicates) + "\n";
    for (const auto& [value, name] : value_names)
      out += "value " + value.get_str() + " = " + name + "\n";
    return out;
  }
};

struct Reduction {
  AltssInstance instance;
  ReductionReport report;
};

// The reduction function: compiles a simple positive prefix formula over a
// binary structure into an alternating subset-sum instance. Odd levels map
// directly; even levels compile the complemented rewrite and mark the
// instance as a complement, so membership corresponds to the negated verdict.
inline Reduction reduce(const RelationalStructure& structure, const PrefixFormula& formula) {
  const std::size_t levels = formula.blocks.size();
  auto violations = validate_simple(formula, levels, PolarityMode::positive);
  if (!violations.empty())
    throw std::invalid_argument("not a simple positive formula: " + violations.front());

  const bool odd = levels % 2 == 1;
  const PrefixFormula working = odd ? formula : complement_rewrite(formula);
  GadgetContext ctx = make_gadget_context(structure, working);

  const std::size_t q = ctx.layout.var_count;
  const std::size_t pair_count = q * (q - (q > 0 ? 1 : 0)) / 2;

  Reduction out;
  out.report.layout = ctx.layout;
  out.report.level_count = levels;
  out.report.complement = !odd;

  auto name_of = [&](const std::string& kind, const std::string& detail) {
    return kind + "(" + detail + ")";
  };
  auto record = [&](const Nat& value, const std::string& name) {
    out.report.value_names.emplace(value, name);  // first writer wins
  };

  // variable ranges per block
  std::vector<std::pair<std::size_t, std::size_t>> block_vars;  // [first, last] 1-based
  std::size_t var = 0;
  for (const auto& block : working.blocks) {
    block_vars.push_back({var + 1, var + block.size});
    var += block.size;
  }

  out.instance.first_quantifier = working.blocks.front().quantifier;
  out.instance.comparison = Comparison::equal;

  for (std::size_t b = 0; b + 1 < levels; ++b) {
    std::vector<Nat> set;
    for (std::size_t j = block_vars[b].first; j <= block_vars[b].second; ++j) {
      for (const auto& element : ctx.structure.elements) {
        Nat value = to_natural(var_number(ctx, element, j));
        record(value, name_of("VAR", element + ",x" + std::to_string(j)));
        set.push_back(std::move(value));
        ++out.report.var_numbers;
      }
    }
    std::sort(set.begin(), set.end());
    out.instance.sets.push_back(std::move(set));
    out.instance.choose_sizes.push_back(working.blocks[b].size);
  }

  std::set<Nat> last;
  std::size_t attempted = 0;
  auto add_last = [&](Nat value, const std::string& name) {
    ++attempted;
    record(value, name);
    last.insert(std::move(value));
  };

  for (std::size_t j = block_vars.back().first; j <= block_vars.back().second; ++j) {
    for (const auto& element : ctx.structure.elements) {
      add_last(to_natural(var_number(ctx, element, j)),
               name_of("VAR", element + ",x" + std::to_string(j)));
      ++out.report.var_numbers;
    }
  }
  for (std::size_t j = 1; j <= q; ++j) {
    for (std::size_t jp = j + 1; jp <= q; ++jp) {
      for (const auto& a : ctx.structure.elements) {
        for (const auto& b : ctx.structure.elements) {
          add_last(to_natural(atom_number(ctx, a, b, j, jp)),
                   name_of("ATOM", a + "," + b + ",x" + std::to_string(j) + ",x" +
                                       std::to_string(jp)));
          ++out.report.atom_numbers;
        }
      }
    }
  }
  for (std::size_t j = 1; j <= q; ++j) {
    for (const auto& a : ctx.structure.elements) {
      add_last(to_natural(norm_number(ctx, a, j)), name_of("NORM", a + ",x" + std::to_string(j)));
      ++out.report.norm_numbers;
    }
  }
  for (std::size_t block : ctx.universal_blocks) {
    for (std::size_t j = block_vars[block - 1].first; j <= block_vars[block - 1].second; ++j) {
      add_last(to_natural(fix_block_number(ctx, j)), name_of("FIX", "x" + std::to_string(j)));
      ++out.report.fix_block_numbers;
    }
  }
  for (std::size_t j = 1; j <= q; ++j) {
    for (std::size_t d = 0; d <= ctx.max_fix_shift(); ++d) {
      add_last(to_natural(fix_digit_number(ctx, j, d)),
               name_of("FIX", "x" + std::to_string(j) + "," + std::to_string(d)));
      ++out.report.fix_digit_numbers;
    }
  }
  {
    auto waits = wait_numbers(ctx);
    for (std::size_t h = 0; h + 1 < waits.size(); ++h) {
      add_last(to_natural(waits[h]), name_of("WAIT", std::to_string(h)));
      ++out.report.wait_numbers;
    }
    add_last(to_natural(waits.back()), "NOWAIT");
    ++out.report.wait_numbers;
  }
  out.report.merged_duplicates = attempted - last.size();

  out.instance.sets.emplace_back(last.begin(), last.end());
  out.instance.choose_sizes.push_back(working.blocks.back().size + pair_count + q + 1);

  out.instance.target = targets(ctx).t_prime;
  out.report.target = out.instance.target;
  out.report.parameter = parameter(out.instance);
  return out;
}

// The parameter bound g(x) = x^2 + 2x + 1 certifying the reduction stays
// parameter-bounded.
inline std::size_t parameter_bound(std::size_t p) { return p * p + 2 * p + 1; }

}  // namespace altss
