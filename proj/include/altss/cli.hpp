#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "altss/aram.hpp"
#include "altss/common.hpp"
#include "altss/generator.hpp"
#include "altss/instance.hpp"
#include "altss/logic.hpp"
#include "altss/reduction.hpp"
#include "altss/solve.hpp"

namespace altss::cli {

// Exit codes: 0 yes / all pass, 1 no / mismatch, 2 input or usage error,
// 3 resource-bound violation in an ARAM run.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitViolation = 3;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

inline std::string selection_text(const Selection& selection) {
  std::string out;
  for (std::size_t level = 0; level < selection.size(); ++level) {
    if (level > 0) out += " ";
    out += "{";
    for (std::size_t i = 0; i < selection[level].size(); ++i) {
      if (i > 0) out += ",";
      out += selection[level][i].get_str();
    }
    out += "}";
  }
  return out;
}

inline int cmd_mc(const std::string& structure_path, const std::string& formula_path,
                  bool witness, std::ostream& out, std::ostream& err) {
  try {
    RelationalStructure structure = parse_structure(read_file(structure_path));
    PrefixFormula formula = parse_formula(read_file(formula_path));
    ModelCheckResult result = model_check(structure, formula);
    out << (result.holds ? "YES" : "NO") << "\n";
    if (witness) {
      out << "witness:";
      for (std::size_t v = 0; v < result.variation.size(); ++v)
        out << " x" << v + 1 << "=" << structure.elements[result.variation[v] - 1];
      out << "\n";
    }
    return result.holds ? kExitYes : kExitNo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_solve(const std::string& instance_path, bool witness, std::ostream& out,
                     std::ostream& err) {
  try {
    AltssInstance instance = parse_instance(read_file(instance_path));
    SolveResult result = solve(instance);
    out << (result.holds ? "YES" : "NO") << "\n";
    if (witness) out << "witness: " << selection_text(result.variation) << "\n";
    return result.holds ? kExitYes : kExitNo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_reduce(const std::string& structure_path, const std::string& formula_path,
                      const std::string& out_path, const std::string& report_path,
                      std::ostream& out, std::ostream& err) {
  try {
    RelationalStructure structure = parse_structure(read_file(structure_path));
    PrefixFormula formula = parse_formula(read_file(formula_path));
    Reduction reduction = reduce(structure, formula);
    write_file(out_path, serialize_instance(reduction.instance));
    write_file(report_path.empty() ? out_path + ".report" : report_path,
               reduction.report.to_text());
    out << "instance: " << out_path << "\n";
    out << "sets:";
    for (std::size_t level = 0; level < reduction.instance.level_count(); ++level)
      out << " " << reduction.instance.sets[level].size() << "(choose "
          << reduction.instance.choose_sizes[level] << ")";
    out << "\n";
    out << "parameter: " << reduction.report.parameter << "\n";
    out << "complement: " << (reduction.report.complement ? "yes" : "no") << "\n";
    return kExitYes;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

struct RoundtripConfig {
  std::uint64_t seed = 1;
  std::size_t count = 30;
  GeneratorCaps caps;
};

struct RoundtripCase {
  bool pass = false;
  bool model_holds = false;
  bool game_holds = false;  // solver verdict, complement already applied
  std::string structure_text;
  std::string formula_text;
  std::size_t parameter = 0;
  std::size_t formula_tokens = 0;
};

// Generates seeded (structure, formula) pairs and checks the reduction's
// verdict against the model checker: equality for odd levels, the complement
// for even levels.
inline std::vector<RoundtripCase> roundtrip_run(const RoundtripConfig& config) {
  std::vector<RoundtripCase> cases;
  SplitMix64 rng(config.seed);
  for (std::size_t i = 0; i < config.count; ++i) {
    RelationalStructure structure = random_structure(rng, config.caps.max_universe);
    PrefixFormula formula = random_simple_formula(rng, config.caps);
    RoundtripCase item;
    item.structure_text = serialize_structure(structure);
    item.formula_text = serialize_formula(formula);
    item.model_holds = model_check(structure, formula).holds;
    Reduction reduction = reduce(structure, formula);
    bool solved = solve(reduction.instance).holds;
    item.game_holds = reduction.report.complement ? !solved : solved;
    item.pass = item.model_holds == item.game_holds;
    item.parameter = reduction.report.parameter;
    item.formula_tokens = formula_size(formula);
    cases.push_back(std::move(item));
  }
  return cases;
}

inline int cmd_roundtrip(const RoundtripConfig& config, std::ostream& out, std::ostream& err) {
  try {
    auto cases = roundtrip_run(config);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const RoundtripCase& item = cases[i];
      out << "case " << std::setw(3) << std::setfill('0') << i + 1 << std::setfill(' ')
          << "  mc=" << (item.model_holds ? "YES" : "NO ")
          << "  reduce+solve=" << (item.game_holds ? "YES" : "NO ")
          << "  " << (item.pass ? "pass" : "MISMATCH") << "\n";
      if (!item.pass) {
        ++mismatches;
        err << "counterexample structure:\n" << item.structure_text;
        err << "counterexample formula:\n" << item.formula_text;
      }
    }
    out << cases.size() - mismatches << "/" << cases.size() << " pass\n";
    return mismatches == 0 ? kExitYes : kExitNo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_gen(std::uint64_t seed, std::size_t count, const GeneratorCaps& caps,
                   const std::string& out_dir, std::ostream& out, std::ostream& err) {
  try {
    std::filesystem::create_directories(out_dir);
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      RelationalStructure structure = random_structure(rng, caps.max_universe);
      PrefixFormula formula = random_simple_formula(rng, caps);
      std::ostringstream stem;
      stem << out_dir << "/case_" << std::setw(3) << std::setfill('0') << i + 1;
      write_file(stem.str() + ".structure", serialize_structure(structure));
      write_file(stem.str() + ".formula", serialize_formula(formula));
      out << stem.str() << ".{structure,formula}\n";
    }
    return kExitYes;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline void print_audit_table(const aram::RunReport& report, const aram::RunBounds& bounds,
                              std::ostream& out) {
  out << "paths: " << report.paths << "\n";
  out << "steps: " << report.max_path_steps << " (bound " << bounds.max_steps << ")\n";
  out << "guesses: " << report.max_path_guess_steps << " (bound " << bounds.max_guess_steps
      << ")\n";
  out << "registers: " << report.max_register_touched << " (bound "
      << bounds.max_register_index << ")\n";
  out << "max value: " << report.max_value_seen.get_str() << "\n";
  out << "tail span: " << report.max_tail_span << " (window " << bounds.tail_window << ")\n";
  out << "alternation runs: " << report.max_alternation_runs << " (bound "
      << bounds.max_alternations << ")"
      << (report.first_run_existential ? "" : ", first run universal") << "\n";
  if (report.violations.empty()) {
    out << "violations: none\n";
  } else {
    out << "violations:\n";
    for (const auto& violation : report.violations) out << "  " << violation << "\n";
  }
}

inline int cmd_aram_run(const std::string& program_path, const std::string& image_path,
                        const aram::RunBounds& bounds, bool audit_only, std::ostream& out,
                        std::ostream& err) {
  try {
    aram::AramProgram program = aram::parse_program(read_file(program_path));
    std::vector<Nat> image = aram::parse_register_image(read_file(image_path));
    aram::EvalResult result = aram::evaluate(program, image, bounds);
    out << "verdict: " << (result.verdict ? "YES" : "NO") << "\n";
    print_audit_table(result.report, bounds, out);
    if (!result.report.violations.empty()) return kExitViolation;
    if (audit_only) return kExitYes;
    return result.verdict ? kExitYes : kExitNo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_aram_encode(const std::string& instance_path, const std::string& out_path,
                           std::ostream& out, std::ostream& err) {
  try {
    AltssInstance instance = parse_instance(read_file(instance_path));
    write_file(out_path, aram::serialize_register_image(aram::encode_altss_input(instance)));
    out << "image: " << out_path << "\n";
    return kExitYes;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_aram_program(const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    std::string text = aram::serialize_program(aram::alt3_membership_program());
    if (out_path.empty()) {
      out << text;
    } else {
      write_file(out_path, text);
      out << "program: " << out_path << "\n";
    }
    return kExitYes;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace altss::cli
