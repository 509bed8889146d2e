#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "altss/cli.hpp"
#include "helpers.hpp"

using namespace altss;
using namespace altss::cli;
using test_helpers::fixture_path;

namespace {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("altss_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("mc command") {
  std::ostringstream out, err;
  int code = cmd_mc(fixture_path("fixture1.structure"), fixture_path("fixture1.formula"), true,
                    out, err);
  CHECK(code == kExitYes);
  CHECK_THAT(out.str(), Catch::Matchers::StartsWith("YES"));
  CHECK_THAT(out.str(), Catch::Matchers::ContainsSubstring("x1=u"));

  std::ostringstream out2, err2;
  TempDir dir;
  write_file(dir.file("bad.structure"), "universe a\nrelation R 3: (a,a)\n");
  code = cmd_mc(dir.file("bad.structure"), fixture_path("fixture1.formula"), false, out2, err2);
  CHECK(code == kExitError);
  CHECK_THAT(err2.str(), Catch::Matchers::ContainsSubstring("line 2"));

  std::ostringstream out3, err3;
  code = cmd_mc(dir.file("missing.structure"), fixture_path("fixture1.formula"), false, out3, err3);
  CHECK(code == kExitError);
}

TEST_CASE("solve command") {
  std::ostringstream out, err;
  int code = cmd_solve(fixture_path("example1.altss"), true, out, err);
  CHECK(code == kExitYes);
  CHECK_THAT(out.str(), Catch::Matchers::StartsWith("YES"));
  CHECK_THAT(out.str(), Catch::Matchers::ContainsSubstring("{3} {1} {3}"));
}

TEST_CASE("reduce command writes the instance and its report") {
  TempDir dir;
  std::ostringstream out, err;
  int code = cmd_reduce(fixture_path("fixture1.structure"), fixture_path("fixture1.formula"),
                        dir.file("out.altss"), "", out, err);
  REQUIRE(code == kExitYes);
  CHECK_THAT(out.str(), Catch::Matchers::ContainsSubstring("36(choose 8)"));
  CHECK_THAT(out.str(), Catch::Matchers::ContainsSubstring("parameter: 10"));

  AltssInstance instance = parse_instance(read_file(dir.file("out.altss")));
  CHECK(instance.sets[2].size() == 36);
  std::string report = read_file(dir.file("out.altss.report"));
  CHECK_THAT(report, Catch::Matchers::ContainsSubstring("base: 41"));

  std::ostringstream run_out, run_err;
  CHECK(cmd_solve(dir.file("out.altss"), false, run_out, run_err) == kExitYes);
}

TEST_CASE("roundtrip command") {
  RoundtripConfig config;
  config.seed = 7;
  config.count = 6;
  std::ostringstream out, err;
  int code = cmd_roundtrip(config, out, err);
  CHECK(code == kExitYes);
  CHECK_THAT(out.str(), Catch::Matchers::ContainsSubstring("6/6 pass"));

  // identical configuration, identical bytes
  std::ostringstream again, err2;
  cmd_roundtrip(config, again, err2);
  CHECK(out.str() == again.str());
}

TEST_CASE("gen command writes parseable pairs") {
  TempDir dir;
  std::ostringstream out, err;
  GeneratorCaps caps;
  int code = cmd_gen(5, 3, caps, dir.file("corpus"), out, err);
  REQUIRE(code == kExitYes);
  for (int i = 1; i <= 3; ++i) {
    std::string stem = dir.file("corpus") + "/case_00" + std::to_string(i);
    RelationalStructure structure = parse_structure(read_file(stem + ".structure"));
    PrefixFormula formula = parse_formula(read_file(stem + ".formula"));
    CHECK(formula.blocks.size() == 3);
    CHECK(structure.size() >= 1);
  }
}

TEST_CASE("aram pipeline through the command layer") {
  TempDir dir;
  std::ostringstream out, err;
  REQUIRE(cmd_aram_program(dir.file("membership.aram"), out, err) == kExitYes);
  REQUIRE(cmd_aram_encode(fixture_path("example1.altss"), dir.file("example1.image"), out, err) ==
          kExitYes);

  aram::RunBounds bounds;  // generous defaults
  std::ostringstream run_out, run_err;
  int code = cmd_aram_run(dir.file("membership.aram"), dir.file("example1.image"), bounds, false,
                          run_out, run_err);
  CHECK(code == kExitYes);
  CHECK_THAT(run_out.str(), Catch::Matchers::ContainsSubstring("verdict: YES"));
  CHECK_THAT(run_out.str(), Catch::Matchers::ContainsSubstring("alternation runs: 3"));
  CHECK_THAT(run_out.str(), Catch::Matchers::ContainsSubstring("violations: none"));

  // a zero tail window turns the same run into a bound violation
  aram::RunBounds strict = bounds;
  strict.tail_window = 0;
  std::ostringstream strict_out, strict_err;
  code = cmd_aram_run(dir.file("membership.aram"), dir.file("example1.image"), strict, false,
                      strict_out, strict_err);
  CHECK(code == kExitViolation);
}
