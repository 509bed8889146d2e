// Command-line front end: model checking, alternating subset-sum solving,
// the reduction between them, seeded round-trip verification, corpus
// generation, and ARAM simulation with resource auditing.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "altss/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"alternating subset-sum workbench"};
  app.require_subcommand(1);

  std::string structure_path, formula_path, instance_path, out_path, report_path;
  std::string program_path, image_path, out_dir;
  bool witness = false;

  auto* mc = app.add_subcommand("mc", "model-check a prefix formula over a structure");
  mc->add_option("structure", structure_path, "structure file")->required();
  mc->add_option("formula", formula_path, "formula file")->required();
  mc->add_flag("--witness", witness, "print the principal variation");

  auto* solve_cmd = app.add_subcommand("solve", "decide an alternating subset-sum instance");
  solve_cmd->add_option("instance", instance_path, "instance file")->required();
  solve_cmd->add_flag("--witness", witness, "print the principal variation");

  auto* reduce_cmd = app.add_subcommand("reduce", "compile model checking to subset sum");
  reduce_cmd->add_option("structure", structure_path, "structure file")->required();
  reduce_cmd->add_option("formula", formula_path, "formula file")->required();
  reduce_cmd->add_option("-o,--out", out_path, "instance output path")->required();
  reduce_cmd->add_option("--report", report_path, "report path (default: <out>.report)");

  altss::cli::RoundtripConfig rt;
  auto* roundtrip = app.add_subcommand("roundtrip", "verify reduce+solve against the model checker");
  roundtrip->add_option("--seed", rt.seed, "generator seed");
  roundtrip->add_option("--count", rt.count, "number of cases");
  roundtrip->add_option("--max-universe", rt.caps.max_universe, "universe size cap");
  roundtrip->add_option("--max-vars", rt.caps.max_vars, "variable count cap");
  roundtrip->add_option("--max-atoms", rt.caps.max_atoms, "atom count cap");
  roundtrip->add_option("--ell", rt.caps.levels, "quantifier block count");

  std::uint64_t gen_seed = 1;
  std::size_t gen_count = 10;
  altss::GeneratorCaps gen_caps;
  auto* gen = app.add_subcommand("gen", "write a seeded corpus of structure/formula pairs");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--count", gen_count, "number of pairs");
  gen->add_option("--max-universe", gen_caps.max_universe, "universe size cap");
  gen->add_option("--max-vars", gen_caps.max_vars, "variable count cap");
  gen->add_option("--max-atoms", gen_caps.max_atoms, "atom count cap");
  gen->add_option("--ell", gen_caps.levels, "quantifier block count");
  gen->add_option("--out-dir", out_dir, "output directory")->required();

  auto* aram_cmd = app.add_subcommand("aram", "alternating RAM tools");
  aram_cmd->require_subcommand(1);

  altss::aram::RunBounds bounds;
  std::string max_value_text;
  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--max-steps", bounds.max_steps, "step bound per path");
    cmd->add_option("--max-guesses", bounds.max_guess_steps, "guess bound per path");
    cmd->add_option("--max-register", bounds.max_register_index, "register index bound");
    cmd->add_option("--max-value", max_value_text, "value bound (decimal)");
    cmd->add_option("--tail-window", bounds.tail_window, "tail window for guesses");
    cmd->add_option("--max-alternations", bounds.max_alternations, "alternation run bound");
  };

  auto* aram_run = aram_cmd->add_subcommand("run", "run a program on a register image");
  aram_run->add_option("program", program_path, "program file")->required();
  aram_run->add_option("image", image_path, "register image file")->required();
  add_bounds(aram_run);

  auto* aram_audit = aram_cmd->add_subcommand("audit", "run and report bounds only");
  aram_audit->add_option("program", program_path, "program file")->required();
  aram_audit->add_option("image", image_path, "register image file")->required();
  add_bounds(aram_audit);

  auto* aram_encode = aram_cmd->add_subcommand("encode", "encode an instance as a register image");
  aram_encode->add_option("instance", instance_path, "instance file")->required();
  aram_encode->add_option("-o,--out", out_path, "image output path")->required();

  auto* aram_program = aram_cmd->add_subcommand("program", "print the built-in membership program");
  aram_program->add_option("-o,--out", out_path, "program output path");

  CLI11_PARSE(app, argc, argv);

  using namespace altss::cli;
  try {
    if (!max_value_text.empty()) bounds.max_value = altss::Nat(max_value_text);
  } catch (const std::exception&) {
    std::cerr << "error: --max-value must be a decimal natural\n";
    return kExitError;
  }

  if (mc->parsed()) return cmd_mc(structure_path, formula_path, witness, std::cout, std::cerr);
  if (solve_cmd->parsed()) return cmd_solve(instance_path, witness, std::cout, std::cerr);
  if (reduce_cmd->parsed())
    return cmd_reduce(structure_path, formula_path, out_path, report_path, std::cout, std::cerr);
  if (roundtrip->parsed()) return cmd_roundtrip(rt, std::cout, std::cerr);
  if (gen->parsed()) return cmd_gen(gen_seed, gen_count, gen_caps, out_dir, std::cout, std::cerr);
  if (aram_cmd->parsed()) {
    if (aram_run->parsed())
      return cmd_aram_run(program_path, image_path, bounds, false, std::cout, std::cerr);
    if (aram_audit->parsed())
      return cmd_aram_run(program_path, image_path, bounds, true, std::cout, std::cerr);
    if (aram_encode->parsed()) return cmd_aram_encode(instance_path, out_path, std::cout, std::cerr);
    if (aram_program->parsed()) return cmd_aram_program(out_path, std::cout, std::cerr);
  }
  return kExitError;
}
