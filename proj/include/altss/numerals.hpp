#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "altss/common.hpp"

namespace altss {

// Positional digit layout for gadget numbers. A numeral consists of an
// optional high block of s+1 digits, then n atom digits L_1..L_n, then q
// variable blocks B_1..B_q of q+1 digits each. Digits are stored most
// significant first; the rightmost digit is the least significant.
struct DigitLayout {
  std::size_t atom_count = 0;   // n
  std::size_t var_count = 0;    // q
  std::size_t block_width = 1;  // q + 1
  std::size_t wait_top = 0;     // s
  std::size_t high_width = 0;   // s + 1, or 0 without the wait extension
  std::uint64_t base = 2;       // D
  std::uint64_t unit_value = 1; // C

  std::size_t total_digits() const {
    return high_width + atom_count + var_count * block_width;
  }

  // Digit vector index (0 = most significant) of atom digit L_i, i in [1, n].
  std::size_t idx_atom(std::size_t i) const {
    if (i < 1 || i > atom_count) throw std::out_of_range("atom digit index");
    return high_width + (i - 1);
  }

  // Index of position p (1 = leftmost) in block B_j.
  std::size_t idx_block(std::size_t j, std::size_t p) const {
    if (j < 1 || j > var_count) throw std::out_of_range("block index");
    if (p < 1 || p > block_width) throw std::out_of_range("block position");
    return high_width + atom_count + (j - 1) * block_width + (p - 1);
  }

  // Index of high-block digit h, counted from the least significant end of
  // the high block (h = 0 is the lowest wait digit).
  std::size_t idx_high(std::size_t h) const {
    if (high_width == 0 || h >= high_width) throw std::out_of_range("high digit index");
    return high_width - 1 - h;
  }

  bool operator==(const DigitLayout&) const = default;
};

// Builds the layout for the given quantifier block sizes. The unit value is
// C = (U + 1) * universe_size where U is the total size of the universally
// quantified blocks (blocks alternate starting from `first`), and the base is
// D = (2q + q(q-1)/2 + 1) * C + 1, large enough that no admissible selection
// of gadget numbers ever carries between digit columns.
inline DigitLayout make_layout(const std::vector<std::size_t>& block_sizes,
                               std::size_t atom_count, std::size_t universe_size,
                               bool with_wait_block,
                               Quantifier first = Quantifier::exists) {
  if (block_sizes.empty()) throw std::invalid_argument("make_layout: empty block list");
  if (universe_size == 0) throw std::invalid_argument("make_layout: empty universe");

  std::size_t q = 0;
  std::size_t universal_total = 0;
  Quantifier quant = first;
  for (std::size_t size : block_sizes) {
    q += size;
    if (quant == Quantifier::forall) universal_total += size;
    quant = opposite(quant);
  }

  const std::size_t pair_count = q * (q - (q > 0 ? 1 : 0)) / 2;

  using Wide = unsigned __int128;
  const Wide unit = Wide(universal_total + 1) * universe_size;
  const Wide base = Wide(2 * q + pair_count + 1) * unit + 1;
  if (base > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("make_layout: base exceeds the 64-bit digit range");

  DigitLayout layout;
  layout.atom_count = atom_count;
  layout.var_count = q;
  layout.block_width = q + 1;
  layout.wait_top = block_sizes.back() + pair_count;
  layout.high_width = with_wait_block ? layout.wait_top + 1 : 0;
  layout.base = static_cast<std::uint64_t>(base);
  layout.unit_value = static_cast<std::uint64_t>(unit);
  return layout;
}

struct BaseDNumeral {
  DigitLayout layout;
  std::vector<std::uint64_t> digits;  // most significant first

  bool operator==(const BaseDNumeral&) const = default;
};

inline BaseDNumeral zero_numeral(const DigitLayout& layout) {
  return {layout, std::vector<std::uint64_t>(layout.total_digits(), 0)};
}

// Assembles a numeral from its high part, atom digits and variable blocks.
// Part lengths must match the layout exactly and every digit must be < base.
inline BaseDNumeral numeral_from_parts(const DigitLayout& layout,
                                       std::span<const std::uint64_t> high_digits,
                                       std::span<const std::uint64_t> atom_digits,
                                       const std::vector<std::vector<std::uint64_t>>& blocks) {
  if (high_digits.size() != layout.high_width)
    throw std::invalid_argument("numeral_from_parts: high part length mismatch");
  if (atom_digits.size() != layout.atom_count)
    throw std::invalid_argument("numeral_from_parts: atom part length mismatch");
  if (blocks.size() != layout.var_count)
    throw std::invalid_argument("numeral_from_parts: block count mismatch");

  BaseDNumeral numeral = zero_numeral(layout);
  std::size_t at = 0;
  auto put = [&](std::uint64_t digit) {
    if (digit >= layout.base) throw std::invalid_argument("numeral_from_parts: digit >= base");
    numeral.digits[at++] = digit;
  };
  for (std::uint64_t d : high_digits) put(d);
  for (std::uint64_t d : atom_digits) put(d);
  for (const auto& block : blocks) {
    if (block.size() != layout.block_width)
      throw std::invalid_argument("numeral_from_parts: block width mismatch");
    for (std::uint64_t d : block) put(d);
  }
  return numeral;
}

struct AddResult {
  BaseDNumeral sum;
  // True iff some column's pre-carry sum (incoming carry included) reached
  // the base, i.e. a carry occurred anywhere. The reduction's correctness
  // argument relies on admissible selections never setting this.
  bool overflow = false;
};

inline AddResult add_all(const DigitLayout& layout, std::span<const BaseDNumeral> numerals) {
  for (const auto& numeral : numerals)
    if (!(numeral.layout == layout)) throw std::invalid_argument("add_all: mixed layouts");

  AddResult result{zero_numeral(layout), false};
  const std::size_t total = layout.total_digits();
  unsigned __int128 carry = 0;
  for (std::size_t pos = total; pos-- > 0;) {
    unsigned __int128 column = carry;
    for (const auto& numeral : numerals) column += numeral.digits[pos];
    if (column >= layout.base) result.overflow = true;
    result.sum.digits[pos] = static_cast<std::uint64_t>(column % layout.base);
    carry = column / layout.base;
  }
  if (carry != 0) result.overflow = true;  // carry out of the top digit is dropped
  return result;
}

inline Nat to_natural(const BaseDNumeral& numeral) {
  Nat value = 0;
  for (std::uint64_t digit : numeral.digits) {
    value *= numeral.layout.base;
    value += Nat(static_cast<unsigned long>(digit));
  }
  return value;
}

inline BaseDNumeral from_natural(const DigitLayout& layout, const Nat& value) {
  BaseDNumeral numeral = zero_numeral(layout);
  Nat rest = value;
  for (std::size_t pos = layout.total_digits(); pos-- > 0;) {
    numeral.digits[pos] = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), layout.base);
  }
  if (rest != 0) throw std::invalid_argument("from_natural: value too large for the layout");
  return numeral;
}

// Debug rendering: high ++ "||" ++ L ++ "|" ++ B_1 ++ ... Digits are joined
// directly when they all fit one character, otherwise comma-separated.
inline std::string digit_string(const BaseDNumeral& numeral) {
  const DigitLayout& layout = numeral.layout;
  bool wide = std::any_of(numeral.digits.begin(), numeral.digits.end(),
                          [](std::uint64_t d) { return d > 9; });
  std::string out;
  std::size_t at = 0;
  auto group = [&](std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      if (wide && i > 0) out += ',';
      out += std::to_string(numeral.digits[at++]);
    }
  };
  if (layout.high_width > 0) {
    group(layout.high_width);
    out += "||";
  }
  group(layout.atom_count);
  for (std::size_t j = 0; j < layout.var_count; ++j) {
    out += '|';
    group(layout.block_width);
  }
  return out;
}

}  // namespace altss
