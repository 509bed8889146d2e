#include <catch2/catch_amalgamated.hpp>

#include "altss/instance.hpp"
#include "helpers.hpp"

using namespace altss;
using test_helpers::fixture_path;
using test_helpers::slurp;

namespace {

AltssInstance example1() { return parse_instance(slurp(fixture_path("example1.altss"))); }

}  // namespace

TEST_CASE("instance parsing matches the walkthrough file") {
  AltssInstance instance = example1();
  REQUIRE(instance.level_count() == 3);
  CHECK(instance.first_quantifier == Quantifier::exists);
  CHECK(instance.comparison == Comparison::equal);
  CHECK(instance.target == 7);
  CHECK(instance.sets[0] == std::vector<Nat>{0, 3});
  CHECK(instance.sets[1] == std::vector<Nat>{1, 2});
  CHECK(instance.sets[2] == std::vector<Nat>{2, 3});
  CHECK(instance.choose_sizes == std::vector<std::size_t>{1, 1, 1});
  CHECK(instance.quantifier_at(1) == Quantifier::forall);

  CHECK(parse_instance(serialize_instance(instance)) == instance);
}

TEST_CASE("instance parse errors") {
  CHECK_THROWS_WITH(parse_instance("altss 1\nquantifier exists\ncompare equal\ntarget 0\n"
                                   "set 1 choose 1: 3 3\n"),
                    Catch::Matchers::ContainsSubstring("duplicate element"));
  CHECK_THROWS_WITH(parse_instance("altss 1\nquantifier exists\ncompare equal\ntarget 0\n"
                                   "set 1 choose 1: 3 1\n"),
                    Catch::Matchers::ContainsSubstring("strictly increasing"));
  CHECK_THROWS_WITH(parse_instance("altss 2\nquantifier exists\ncompare equal\ntarget 0\n"
                                   "set 2 choose 1: 1\nset 1 choose 1: 1\n"),
                    Catch::Matchers::ContainsSubstring("expected set 1"));
  CHECK_THROWS_WITH(parse_instance("altss x\nquantifier exists\ncompare equal\ntarget 0\n"),
                    Catch::Matchers::ContainsSubstring("decimal"));
  CHECK_THROWS_WITH(parse_instance("quantifier exists\naltss 1\ncompare equal\ntarget 0\n"),
                    Catch::Matchers::ContainsSubstring("expected 'altss'"));
}

TEST_CASE("the parameter is the total choice budget") {
  CHECK(parameter(example1()) == 3);

  AltssInstance zeros = example1();
  zeros.choose_sizes = {0, 0, 0};
  CHECK(parameter(zeros) == 0);

  AltssInstance mixed = example1();
  mixed.choose_sizes = {2, 1, 3};
  CHECK(parameter(mixed) == 6);
}

TEST_CASE("certificate checking") {
  AltssInstance instance = example1();
  CHECK(check_selection(instance, {{3}, {1}, {3}}).ok);   // 3+1+3 = 7
  CHECK(check_selection(instance, {{3}, {2}, {2}}).ok);   // 3+2+2 = 7
  CheckResult miss = check_selection(instance, {{0}, {1}, {3}});
  CHECK_FALSE(miss.ok);
  CHECK_THAT(miss.reason, Catch::Matchers::ContainsSubstring("misses target"));

  CHECK_FALSE(check_selection(instance, {{3}, {1, 2}, {3}}).ok);  // wrong size
  CHECK_FALSE(check_selection(instance, {{3}, {5}, {3}}).ok);     // not a member
  CHECK_FALSE(check_selection(instance, {{3}, {1}}).ok);          // level missing

  AltssInstance empty;
  empty.sets = {{}};
  empty.choose_sizes = {0};
  empty.target = 0;
  CHECK(check_selection(empty, {{}}).ok);  // the empty sum meets target 0

  AltssInstance avoid = example1();
  avoid.comparison = Comparison::not_equal;
  CHECK_FALSE(check_selection(avoid, {{3}, {1}, {3}}).ok);
  CHECK(check_selection(avoid, {{0}, {1}, {3}}).ok);
}

TEST_CASE("residual games") {
  AltssInstance instance = example1();
  AltssInstance rest = residual(instance, {3});
  CHECK(rest.level_count() == 2);
  CHECK(rest.target == 4);
  CHECK(rest.first_quantifier == Quantifier::forall);
  CHECK(rest.sets[0] == std::vector<Nat>{1, 2});
  CHECK_THROWS_AS(residual(rest, {100}), std::invalid_argument);
}
