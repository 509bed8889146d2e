#include <catch2/catch_amalgamated.hpp>

#include "altss/generator.hpp"
#include "altss/numerals.hpp"
#include "helpers.hpp"

using namespace altss;
using test_helpers::dv;

TEST_CASE("layout constants for the one-per-block shape") {
  DigitLayout layout = make_layout({1, 1, 1}, 2, 2, true);
  CHECK(layout.var_count == 3);
  CHECK(layout.block_width == 4);
  CHECK(layout.unit_value == 4);
  CHECK(layout.base == 41);
  CHECK(layout.wait_top == 4);
  CHECK(layout.high_width == 5);
  CHECK(layout.total_digits() == 19);

  DigitLayout no_wait = make_layout({1, 1, 1}, 2, 2, false);
  CHECK(no_wait.high_width == 0);
  CHECK(no_wait.total_digits() == 14);
}

TEST_CASE("layout constants for a two-block shape over three elements") {
  DigitLayout layout = make_layout({2, 1}, 1, 3, true);
  CHECK(layout.var_count == 3);
  CHECK(layout.unit_value == 6);  // one universal variable: (1+1)*3
  CHECK(layout.base == 61);
}

TEST_CASE("layout rejects degenerate arguments") {
  CHECK_THROWS_AS(make_layout({}, 1, 2, true), std::invalid_argument);
  CHECK_THROWS_AS(make_layout({1, 1}, 1, 0, true), std::invalid_argument);
}

TEST_CASE("numeral assembly from parts") {
  DigitLayout layout = make_layout({1, 1, 1}, 2, 2, false);

  std::vector<std::uint64_t> zero_l{0, 0};
  std::vector<std::vector<std::uint64_t>> zero_blocks(3, std::vector<std::uint64_t>(4, 0));
  CHECK(numeral_from_parts(layout, {}, zero_l, zero_blocks) == zero_numeral(layout));

  auto blocks = zero_blocks;
  blocks[0] = {1, 0, 0, 0};
  BaseDNumeral var = numeral_from_parts(layout, {}, zero_l, blocks);
  CHECK(var.digits == dv("00 1000 0000 0000"));

  DigitLayout wait_layout = make_layout({1, 1, 1}, 2, 2, true);
  std::vector<std::uint64_t> high{1, 1, 1, 1, 1};
  std::vector<std::uint64_t> ones_l{1, 1};
  std::vector<std::vector<std::uint64_t>> full(3, std::vector<std::uint64_t>{4, 4, 4, 1});
  BaseDNumeral t_prime = numeral_from_parts(wait_layout, high, ones_l, full);
  CHECK(t_prime.digits == dv("11111 11 4441 4441 4441"));

  SECTION("part validation") {
    std::vector<std::uint64_t> stray_high{0};
    CHECK_THROWS_AS(numeral_from_parts(layout, stray_high, zero_l, zero_blocks),
                    std::invalid_argument);
    auto bad = zero_blocks;
    bad[1] = {41, 0, 0, 0};
    CHECK_THROWS_AS(numeral_from_parts(layout, {}, zero_l, bad), std::invalid_argument);
    bad[1] = {0, 0, 0};
    CHECK_THROWS_AS(numeral_from_parts(layout, {}, zero_l, bad), std::invalid_argument);
  }
}

TEST_CASE("digit-wise addition and the carry certificate") {
  DigitLayout layout = make_layout({1, 1, 1}, 2, 2, false);

  AddResult empty = add_all(layout, {});
  CHECK(empty.sum == zero_numeral(layout));
  CHECK_FALSE(empty.overflow);

  BaseDNumeral a = zero_numeral(layout), b = zero_numeral(layout), c = zero_numeral(layout);
  a.digits[layout.idx_block(1, 1)] = 1;
  b.digits[layout.idx_block(2, 2)] = 2;
  c.digits[layout.idx_block(3, 3)] = 2;
  std::vector<BaseDNumeral> vars{a, b, c};
  AddResult var_sum = add_all(layout, vars);
  CHECK(var_sum.sum.digits == dv("00 1000 0200 0020"));
  CHECK_FALSE(var_sum.overflow);

  BaseDNumeral d = zero_numeral(layout), e = zero_numeral(layout);
  d.digits[13] = 40;
  e.digits[13] = 40;
  std::vector<BaseDNumeral> carrying{d, e};
  AddResult carry = add_all(layout, carrying);
  CHECK(carry.overflow);
  CHECK(carry.sum.digits[13] == 39);
  CHECK(carry.sum.digits[12] == 1);

  DigitLayout other = make_layout({1, 1}, 1, 2, false);
  std::vector<BaseDNumeral> mixed{a, zero_numeral(other)};
  CHECK_THROWS_AS(add_all(layout, mixed), std::invalid_argument);
}

TEST_CASE("radix conversion") {
  DigitLayout layout = make_layout({1, 1, 1}, 2, 2, false);
  CHECK(to_natural(zero_numeral(layout)) == 0);

  BaseDNumeral var = zero_numeral(layout);
  var.digits[layout.idx_block(1, 1)] = 1;  // digit 2 of 14, exponent 11
  CHECK(to_natural(var) == pow_nat(Nat(41), 11));

  CHECK_THROWS_AS(from_natural(layout, pow_nat(Nat(41), 14)), std::invalid_argument);
}

TEST_CASE("round trip and addition agree with naturals on random numerals") {
  DigitLayout layout = make_layout({2, 1, 1}, 3, 2, true);
  SplitMix64 rng(2024);
  for (int iteration = 0; iteration < 200; ++iteration) {
    BaseDNumeral x = zero_numeral(layout);
    for (auto& digit : x.digits) digit = rng.below(layout.base);
    CHECK(from_natural(layout, to_natural(x)) == x);
  }
  for (int iteration = 0; iteration < 200; ++iteration) {
    std::vector<BaseDNumeral> batch;
    Nat expected = 0;
    for (int i = 0; i < 4; ++i) {
      BaseDNumeral x = zero_numeral(layout);
      for (auto& digit : x.digits) digit = rng.below(layout.base / 4);  // no column can carry
      expected += to_natural(x);
      batch.push_back(std::move(x));
    }
    AddResult sum = add_all(layout, batch);
    CHECK_FALSE(sum.overflow);
    CHECK(to_natural(sum.sum) == expected);
  }
}
