#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "altss/generator.hpp"
#include "altss/logic.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace altss;

namespace {

const char* kStructureText =
    "universe u v\n"
    "relation E 2: (u,v) (v,v)\n";

const char* kFormulaText =
    "prefix exists 1 forall 1 exists 1\n"
    "matrix and\n"
    "atom E x1 x3\n"
    "atom E x2 x3\n";

RelationalStructure fixture_structure() { return parse_structure(kStructureText); }
PrefixFormula fixture_formula() { return parse_formula(kFormulaText); }

}  // namespace

TEST_CASE("structure parsing") {
  RelationalStructure structure = fixture_structure();
  REQUIRE(structure.elements == std::vector<std::string>{"u", "v"});
  REQUIRE(structure.relations.count("E") == 1);
  CHECK(structure.has_pair("E", 1, 2));
  CHECK(structure.has_pair("E", 2, 2));
  CHECK_FALSE(structure.has_pair("E", 1, 1));
  CHECK_FALSE(structure.has_pair("E", 2, 1));

  RelationalStructure empty_rel = parse_structure("universe a\nrelation R 2:\n");
  CHECK(empty_rel.relations.at("R").empty());

  CHECK(parse_structure(serialize_structure(structure)) == structure);
}

TEST_CASE("structure parse errors carry line numbers") {
  CHECK_THROWS_MATCHES(parse_structure("universe a\nrelation R 3: (a,a)\n"), parse_error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("line 2") &&
                           Catch::Matchers::ContainsSubstring("arity")));
  CHECK_THROWS_WITH(parse_structure("universe a\nrelation R 2: (a,b)\n"),
                    Catch::Matchers::ContainsSubstring("undeclared element 'b'"));
  CHECK_THROWS_WITH(parse_structure("relation R 2:\n"),
                    Catch::Matchers::ContainsSubstring("before universe"));
  CHECK_THROWS_WITH(parse_structure("universe a\nrelation R 2: a,b\n"),
                    Catch::Matchers::ContainsSubstring("malformed tuple"));
}

TEST_CASE("formula parsing") {
  PrefixFormula formula = fixture_formula();
  REQUIRE(formula.blocks.size() == 3);
  CHECK(formula.blocks[0].quantifier == Quantifier::exists);
  CHECK(formula.blocks[1].quantifier == Quantifier::forall);
  CHECK(formula.var_count() == 3);
  CHECK(formula.connective == Connective::conj);
  REQUIRE(formula.atoms.size() == 2);
  CHECK(formula.atoms[0] == Atom{"E", 1, 3, Polarity::positive});

  CHECK(parse_formula(serialize_formula(formula)) == formula);

  PrefixFormula dedup = parse_formula(
      "prefix exists 2\nmatrix and\natom E x1 x2\natom E x1 x2\nnatom E x1 x2\n");
  CHECK(dedup.atoms.size() == 2);  // exact duplicate collapses, the negated twin stays

  CHECK_THROWS_WITH(parse_formula("prefix exists 1\nmatrix and\natom E x1 x9\n"),
                    Catch::Matchers::ContainsSubstring("undeclared variable 'x9'"));
  CHECK_THROWS_WITH(parse_formula("prefix exists 1 exists 2\nmatrix and\n"),
                    Catch::Matchers::ContainsSubstring("alternate"));
  CHECK_THROWS_WITH(parse_formula("prefix exists 1\nmatrix xor\n"),
                    Catch::Matchers::ContainsSubstring("matrix"));
}

TEST_CASE("simple-shape validation") {
  PrefixFormula formula = fixture_formula();
  CHECK(validate_simple(formula, 3, PolarityMode::positive).empty());

  auto wrong_level = validate_simple(formula, 2, PolarityMode::positive);
  REQUIRE_FALSE(wrong_level.empty());  // block count and parity both fire
  CHECK_THAT(wrong_level.front(), Catch::Matchers::ContainsSubstring("block count"));

  PrefixFormula even = parse_formula("prefix exists 1 forall 1\nmatrix and\natom E x1 x2\n");
  auto parity = validate_simple(even, 2, PolarityMode::positive);
  REQUIRE(parity.size() == 1);
  CHECK_THAT(parity.front(), Catch::Matchers::ContainsSubstring("disjunctive"));

  PrefixFormula negated = parse_formula("prefix exists 2\nmatrix and\nnatom E x1 x2\n");
  CHECK_FALSE(validate_simple(negated, 1, PolarityMode::positive).empty());
  CHECK(validate_simple(negated, 1, PolarityMode::negated).empty());
  CHECK(validate_simple(negated, 1, PolarityMode::any).empty());
}

TEST_CASE("matrix evaluation") {
  RelationalStructure structure = fixture_structure();
  PrefixFormula formula = fixture_formula();
  CHECK(matrix_holds(structure, {1, 2, 2}, formula));       // (u,v) and (v,v) present
  CHECK_FALSE(matrix_holds(structure, {2, 1, 1}, formula)); // (v,u) absent

  PrefixFormula negated = parse_formula("prefix exists 2\nmatrix and\nnatom E x1 x2\n");
  CHECK(matrix_holds(structure, {1, 1}, negated));  // (u,u) absent, negation holds

  PrefixFormula empty_conj = parse_formula("prefix exists 1 forall 2\nmatrix and\n");
  CHECK(matrix_holds(structure, {1, 1, 1}, empty_conj));
  PrefixFormula empty_disj = parse_formula("prefix exists 1 forall 2\nmatrix or\n");
  CHECK_FALSE(matrix_holds(structure, {1, 1, 1}, empty_disj));
}

TEST_CASE("model checking the reference pair") {
  RelationalStructure structure = fixture_structure();
  ModelCheckResult result = model_check(structure, fixture_formula());
  CHECK(result.holds);
  REQUIRE(result.variation.size() == 3);
  CHECK(result.variation[0] == 1);  // witness x1 = u

  // swapping the first atom's arguments still leaves x1 = v a witness
  PrefixFormula swapped = parse_formula(
      "prefix exists 1 forall 1 exists 1\nmatrix and\natom E x2 x1\natom E x2 x3\n");
  CHECK(model_check(structure, swapped).holds);

  // this variant fails everywhere: E(x3,x2) cannot be met for x2 = u
  PrefixFormula failing = parse_formula(
      "prefix exists 1 forall 1 exists 1\nmatrix and\natom E x1 x3\natom E x3 x2\n");
  CHECK_FALSE(model_check(structure, failing).holds);

  PrefixFormula empty_matrix = parse_formula("prefix exists 1 forall 1\nmatrix and\n");
  CHECK(model_check(structure, empty_matrix).holds);

  PrefixFormula missing_relation = parse_formula("prefix exists 2\nmatrix and\natom F x1 x2\n");
  CHECK_THROWS_AS(model_check(structure, missing_relation), std::invalid_argument);
}

TEST_CASE("verdicts are invariant under domain permutation") {
  SplitMix64 rng(7);
  GeneratorCaps caps;
  caps.max_universe = 3;
  caps.max_vars = 3;
  caps.max_atoms = 3;
  for (std::size_t levels : {1u, 2u, 3u}) {
    caps.levels = levels;
    for (int iteration = 0; iteration < 40; ++iteration) {
      RelationalStructure structure = random_structure(rng, caps.max_universe);
      PrefixFormula formula = random_simple_formula(rng, caps);

      std::vector<std::size_t> perm(structure.size());
      std::iota(perm.begin(), perm.end(), 1);
      for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);

      RelationalStructure shuffled;
      shuffled.elements.resize(structure.size());
      for (std::size_t i = 1; i <= structure.size(); ++i)
        shuffled.elements[perm[i - 1] - 1] = structure.elements[i - 1];
      for (const auto& [name, pairs] : structure.relations) {
        auto& target = shuffled.relations[name];
        for (const auto& [a, b] : pairs) target.insert({perm[a - 1], perm[b - 1]});
      }

      CHECK(model_check(structure, formula).holds == model_check(shuffled, formula).holds);
    }
  }
}

TEST_CASE("one-block existential formulas reduce to plain satisfiability") {
  SplitMix64 rng(11);
  GeneratorCaps caps;
  caps.max_universe = 3;
  caps.max_vars = 3;
  caps.max_atoms = 3;
  caps.levels = 1;
  for (int iteration = 0; iteration < 60; ++iteration) {
    RelationalStructure structure = random_structure(rng, caps.max_universe);
    PrefixFormula formula = random_simple_formula(rng, caps);
    CHECK(model_check(structure, formula).holds ==
          oracles::some_assignment_satisfies(structure, formula));
  }
}

TEST_CASE("the principal variation replays consistently") {
  SplitMix64 rng(13);
  GeneratorCaps caps;
  caps.max_universe = 2;
  caps.max_vars = 4;
  caps.max_atoms = 3;
  for (std::size_t levels : {1u, 2u, 3u}) {
    caps.levels = levels;
    for (int iteration = 0; iteration < 40; ++iteration) {
      RelationalStructure structure = random_structure(rng, caps.max_universe);
      PrefixFormula formula = random_simple_formula(rng, caps);
      ModelCheckResult result = model_check(structure, formula);
      REQUIRE(result.variation.size() == formula.var_count());
      CHECK(matrix_holds(structure, result.variation, formula) == result.holds);
    }
  }
}
