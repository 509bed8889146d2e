#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "altss/common.hpp"
#include "altss/instance.hpp"

namespace altss::aram {

enum class Op {
  loadi,     // R0 := c
  load,      // R0 := R[r]
  store,     // R[r] := R0
  loadind,   // R0 := R[R[r]]
  storeind,  // R[R[r]] := R0
  add,       // R0 := R0 + R[r]
  sub,       // R0 := R0 - R[r], cut off at 0
  div2,      // R0 := floor(R0 / 2)
  jump,      // pc := i
  jzero,     // pc := i when R0 = 0
  jeq,       // pc := i when R0 = R[r]
  exists,    // guess R0 := g for some g in [0, R0]
  forall,    // guess R0 := g for every g in [0, R0]
  halt,      // stop; accept iff R0 = 1
};

struct Instruction {
  Op op = Op::halt;
  Nat value = 0;           // loadi immediate
  std::size_t reg = 0;     // register operand
  std::size_t target = 0;  // 1-based jump target

  bool operator==(const Instruction&) const = default;
};

struct AramProgram {
  std::vector<Instruction> instructions;

  bool operator==(const AramProgram&) const = default;
};

inline const std::map<std::string, Op>& mnemonic_table() {
  static const std::map<std::string, Op> table = {
      {"LOADI", Op::loadi},   {"LOAD", Op::load},       {"STORE", Op::store},
      {"LOADIND", Op::loadind}, {"STOREIND", Op::storeind}, {"ADD", Op::add},
      {"SUB", Op::sub},       {"DIV2", Op::div2},       {"JUMP", Op::jump},
      {"JZERO", Op::jzero},   {"JEQ", Op::jeq},         {"EXISTS", Op::exists},
      {"FORALL", Op::forall}, {"HALT", Op::halt},
  };
  return table;
}

inline AramProgram parse_program(const std::string& text) {
  AramProgram program;
  std::vector<std::size_t> line_of;  // for target diagnostics
  for (const auto& row : detail::token_lines(text)) {
    const std::size_t number = row.number;
    const auto& tokens = row.tokens;
    auto it = mnemonic_table().find(tokens[0]);
    if (it == mnemonic_table().end())
      throw parse_error(number, "unknown opcode '" + tokens[0] + "'");
    Instruction ins;
    ins.op = it->second;
    auto want = [&](std::size_t count) {
      if (tokens.size() != count + 1)
        throw parse_error(number, tokens[0] + " expects " + std::to_string(count) + " operand(s)");
    };
    switch (ins.op) {
      case Op::loadi:
        want(1);
        ins.value = detail::parse_nat(tokens[1], number);
        break;
      case Op::load:
      case Op::store:
      case Op::loadind:
      case Op::storeind:
      case Op::add:
      case Op::sub:
        want(1);
        ins.reg = detail::parse_size(tokens[1], number);
        break;
      case Op::jump:
      case Op::jzero:
        want(1);
        ins.target = detail::parse_size(tokens[1], number);
        break;
      case Op::jeq:
        want(2);
        ins.reg = detail::parse_size(tokens[1], number);
        ins.target = detail::parse_size(tokens[2], number);
        break;
      case Op::div2:
      case Op::exists:
      case Op::forall:
      case Op::halt:
        want(0);
        break;
    }
    program.instructions.push_back(std::move(ins));
    line_of.push_back(number);
  }
  for (std::size_t i = 0; i < program.instructions.size(); ++i) {
    const Instruction& ins = program.instructions[i];
    bool jumps = ins.op == Op::jump || ins.op == Op::jzero || ins.op == Op::jeq;
    if (jumps && (ins.target < 1 || ins.target > program.instructions.size()))
      throw parse_error(line_of[i], "jump target " + std::to_string(ins.target) +
                                        " outside [1, " +
                                        std::to_string(program.instructions.size()) + "]");
  }
  return program;
}

inline std::string serialize_program(const AramProgram& program) {
  std::string out;
  for (const Instruction& ins : program.instructions) {
    switch (ins.op) {
      case Op::loadi: out += "LOADI " + ins.value.get_str(); break;
      case Op::load: out += "LOAD " + std::to_string(ins.reg); break;
      case Op::store: out += "STORE " + std::to_string(ins.reg); break;
      case Op::loadind: out += "LOADIND " + std::to_string(ins.reg); break;
      case Op::storeind: out += "STOREIND " + std::to_string(ins.reg); break;
      case Op::add: out += "ADD " + std::to_string(ins.reg); break;
      case Op::sub: out += "SUB " + std::to_string(ins.reg); break;
      case Op::div2: out += "DIV2"; break;
      case Op::jump: out += "JUMP " + std::to_string(ins.target); break;
      case Op::jzero: out += "JZERO " + std::to_string(ins.target); break;
      case Op::jeq: out += "JEQ " + std::to_string(ins.reg) + " " + std::to_string(ins.target); break;
      case Op::exists: out += "EXISTS"; break;
      case Op::forall: out += "FORALL"; break;
      case Op::halt: out += "HALT"; break;
    }
    out += "\n";
  }
  return out;
}

// Numeric resource discipline for a run. The auditor never derives bounds
// from the input itself; callers state them explicitly.
struct RunBounds {
  std::uint64_t max_steps = 1'000'000;
  std::uint64_t max_guess_steps = 1'000'000;
  std::uint64_t max_register_index = 1'000'000;
  Nat max_value = Nat("1000000000000000000000000000000000000000");
  std::uint64_t tail_window = 1'000'000;
  std::uint64_t max_alternations = 1'000'000;
};

struct RunReport {
  bool verdict = false;
  std::uint64_t paths = 0;
  std::uint64_t max_path_steps = 0;
  std::uint64_t max_path_guess_steps = 0;
  std::uint64_t max_register_touched = 0;
  Nat max_value_seen = 0;
  // Longest distance from a path's first guess to its end, inclusive;
  // 0 when no path guesses. Tail-nondeterminism asks this to stay within
  // the tail window.
  std::uint64_t max_tail_span = 0;
  std::uint64_t max_alternation_runs = 0;
  bool first_run_existential = true;  // on every path that guesses at all
  // Events that cut a path short (step budget, register bound, guess range);
  // such paths reject.
  std::vector<std::string> truncations;
  // Full audit against the bounds the run was evaluated with.
  std::vector<std::string> violations;
};

// Declarative audit of a report against bounds; truncation events recorded
// during the run are carried over.
inline std::vector<std::string> audit(const RunReport& report, const RunBounds& bounds) {
  std::vector<std::string> out = report.truncations;
  auto flag = [&](bool bad, const std::string& message) {
    if (bad) out.push_back(message);
  };
  flag(report.max_path_steps > bounds.max_steps,
       "steps " + std::to_string(report.max_path_steps) + " exceed bound " +
           std::to_string(bounds.max_steps));
  flag(report.max_path_guess_steps > bounds.max_guess_steps,
       "guess steps " + std::to_string(report.max_path_guess_steps) + " exceed bound " +
           std::to_string(bounds.max_guess_steps));
  flag(report.max_register_touched > bounds.max_register_index,
       "register " + std::to_string(report.max_register_touched) + " exceeds bound " +
           std::to_string(bounds.max_register_index));
  flag(report.max_value_seen > bounds.max_value,
       "value " + report.max_value_seen.get_str() + " exceeds bound " +
           bounds.max_value.get_str());
  flag(report.max_tail_span > bounds.tail_window,
       "guesses span the final " + std::to_string(report.max_tail_span) +
           " steps, outside the tail window " + std::to_string(bounds.tail_window));
  flag(report.max_alternation_runs > bounds.max_alternations,
       "alternation runs " + std::to_string(report.max_alternation_runs) + " exceed bound " +
           std::to_string(bounds.max_alternations));
  flag(!report.first_run_existential, "a guessing path starts with a universal run");
  return out;
}

struct EvalResult {
  bool verdict = false;
  RunReport report;
};

namespace detail_vm {

struct PathCut {
  std::string message;
};

class Evaluator {
 public:
  Evaluator(const AramProgram& program, const RunBounds& bounds)
      : program_(program), bounds_(bounds) {}

  bool run(std::vector<Nat> registers) {
    for (const Nat& value : registers) note_value(value);
    report_.max_register_touched = registers.empty() ? 0 : registers.size() - 1;
    PathContext ctx;
    bool verdict = exec(std::move(registers), 1, ctx);
    report_.verdict = verdict;
    return verdict;
  }

  RunReport& report() { return report_; }

 private:
  struct PathContext {
    std::uint64_t steps = 0;
    std::uint64_t guesses = 0;
    std::uint64_t runs = 0;
    std::uint64_t first_guess_step = 0;
    bool first_guess_exists = true;
    Op last_guess = Op::halt;
  };

  void note_value(const Nat& value) {
    if (value > report_.max_value_seen) report_.max_value_seen = value;
  }

  void touch(std::size_t index) {
    if (index > bounds_.max_register_index)
      throw PathCut{"register " + std::to_string(index) + " beyond bound " +
                    std::to_string(bounds_.max_register_index)};
    if (index > report_.max_register_touched) report_.max_register_touched = index;
  }

  const Nat& read(std::vector<Nat>& regs, std::size_t index) {
    touch(index);
    if (index >= regs.size()) regs.resize(index + 1, Nat(0));
    return regs[index];
  }

  void write(std::vector<Nat>& regs, std::size_t index, Nat value) {
    touch(index);
    if (index >= regs.size()) regs.resize(index + 1, Nat(0));
    note_value(value);
    if (value > bounds_.max_value) soft_violation("value " + value.get_str() + " exceeds bound");
    regs[index] = std::move(value);
  }

  std::size_t indirect(std::vector<Nat>& regs, std::size_t reg) {
    const Nat& address = read(regs, reg);
    if (!address.fits_ulong_p())
      throw PathCut{"indirect address " + address.get_str() + " is unusable"};
    return static_cast<std::size_t>(address.get_ui());
  }

  void soft_violation(const std::string& message) {
    if (seen_.insert(message).second) report_.truncations.push_back(message);
  }

  void end_path(const PathContext& ctx) {
    ++report_.paths;
    report_.max_path_steps = std::max(report_.max_path_steps, ctx.steps);
    report_.max_path_guess_steps = std::max(report_.max_path_guess_steps, ctx.guesses);
    report_.max_alternation_runs = std::max(report_.max_alternation_runs, ctx.runs);
    if (ctx.guesses > 0) {
      report_.max_tail_span =
          std::max(report_.max_tail_span, ctx.steps - ctx.first_guess_step + 1);
      if (!ctx.first_guess_exists) report_.first_run_existential = false;
    }
  }

  bool exec(std::vector<Nat> regs, std::size_t pc, PathContext ctx) {
    try {
      while (true) {
        if (pc < 1 || pc > program_.instructions.size())
          throw PathCut{"program counter ran past the final instruction"};
        if (ctx.steps == bounds_.max_steps)
          throw PathCut{"step budget " + std::to_string(bounds_.max_steps) +
                        " exhausted without HALT"};
        const Instruction& ins = program_.instructions[pc - 1];
        ++ctx.steps;
        switch (ins.op) {
          case Op::loadi:
            write(regs, 0, ins.value);
            break;
          case Op::load:
            write(regs, 0, read(regs, ins.reg));
            break;
          case Op::store:
            write(regs, ins.reg, regs.empty() ? Nat(0) : regs[0]);
            break;
          case Op::loadind:
            write(regs, 0, read(regs, indirect(regs, ins.reg)));
            break;
          case Op::storeind:
            write(regs, indirect(regs, ins.reg), regs.empty() ? Nat(0) : regs[0]);
            break;
          case Op::add:
            write(regs, 0, read(regs, 0) + read(regs, ins.reg));
            break;
          case Op::sub: {
            Nat lhs = read(regs, 0);
            const Nat& rhs = read(regs, ins.reg);
            write(regs, 0, lhs > rhs ? Nat(lhs - rhs) : Nat(0));
            break;
          }
          case Op::div2: {
            Nat value = read(regs, 0);
            mpz_fdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), 1);
            write(regs, 0, std::move(value));
            break;
          }
          case Op::jump:
            pc = ins.target;
            continue;
          case Op::jzero:
            pc = read(regs, 0) == 0 ? ins.target : pc + 1;
            continue;
          case Op::jeq:
            pc = read(regs, 0) == read(regs, ins.reg) ? ins.target : pc + 1;
            continue;
          case Op::halt: {
            bool accept = read(regs, 0) == 1;
            end_path(ctx);
            return accept;
          }
          case Op::exists:
          case Op::forall: {
            if (ctx.guesses == 0) {
              ctx.runs = 1;
              ctx.first_guess_step = ctx.steps;
              ctx.first_guess_exists = ins.op == Op::exists;
            } else if (ins.op != ctx.last_guess) {
              ++ctx.runs;
            }
            ctx.last_guess = ins.op;
            ++ctx.guesses;
            const Nat& range = read(regs, 0);
            if (range > bounds_.max_value)
              throw PathCut{"guess range " + range.get_str() + " exceeds the value bound"};
            if (range > 1'000'000)
              throw std::runtime_error("guess range " + range.get_str() +
                                       " is too large to enumerate");
            const std::uint64_t top = range.get_ui();
            bool all = true;
            bool any = false;
            for (std::uint64_t g = 0; g <= top; ++g) {
              std::vector<Nat> branch = regs;
              branch[0] = Nat(static_cast<unsigned long>(g));
              bool accepted = exec(std::move(branch), pc + 1, ctx);
              all = all && accepted;
              any = any || accepted;
            }
            return ins.op == Op::exists ? any : all;
          }
        }
        ++pc;
      }
    } catch (const PathCut& cut) {
      soft_violation(cut.message);
      end_path(ctx);
      return false;
    }
  }

  const AramProgram& program_;
  const RunBounds& bounds_;
  RunReport report_;
  std::set<std::string> seen_;
};

}  // namespace detail_vm

// Runs the program on input loaded into R1.. and evaluates the guess tree in
// full (no short-circuiting: auditing needs every path). A path that runs out
// of steps, touches a register beyond the bound, or guesses over a range
// beyond the value bound rejects and records the event. Guess ranges above
// one million are refused outright: the tree cannot be enumerated.
inline EvalResult evaluate(const AramProgram& program, const std::vector<Nat>& input,
                           const RunBounds& bounds) {
  if (input.size() > bounds.max_register_index)
    throw std::invalid_argument("input does not fit below the register bound");
  std::vector<Nat> registers(input.size() + 1, Nat(0));
  for (std::size_t i = 0; i < input.size(); ++i) registers[i + 1] = input[i];
  detail_vm::Evaluator evaluator(program, bounds);
  EvalResult result;
  result.verdict = evaluator.run(std::move(registers));
  evaluator.report().violations = audit(evaluator.report(), bounds);
  result.report = std::move(evaluator.report());
  return result;
}

// --- the built-in membership program --------------------------------------
//
// Register conventions, shared with encode_altss_input:
//   R1 k   R2 l   R3 m   R4 t
//   R5..R20: zero-initialised working bank
//     R5 sum, R6 one, R7 guess, R8 next-admissible-index, R9 loop count,
//     R10 pointer, R11 |A2|, R12 |A3|, R13 base of A2, R14 base of A3
//   R21 |A1|, then A1 ascending, |A2|, A2, |A3|, A3.
//
// Subsets are guessed as strictly increasing element indices; a non-
// increasing tuple halts immediately (reject inside an existential set,
// accept inside the universal one), so guess paths correspond exactly to
// size-respecting subsets. All guesses sit in the final O(k+l+m) steps.

namespace detail_vm {

class Assembler {
 public:
  void op0(Op op) { code_.push_back({op, 0, 0, 0}); }
  void opi(Op op, Nat value) { code_.push_back({op, std::move(value), 0, 0}); }
  void opr(Op op, std::size_t reg) { code_.push_back({op, 0, reg, 0}); }
  void branch(Op op, std::size_t reg, const std::string& label) {
    fixups_.push_back({code_.size(), label});
    code_.push_back({op, 0, reg, 0});
  }
  void label(const std::string& name) { labels_[name] = code_.size() + 1; }

  AramProgram finish() {
    for (const auto& [index, label] : fixups_) code_[index].target = labels_.at(label);
    return {std::move(code_)};
  }

 private:
  std::vector<Instruction> code_;
  std::map<std::string, std::size_t> labels_;
  std::vector<std::pair<std::size_t, std::string>> fixups_;
};

}  // namespace detail_vm

inline AramProgram alt3_membership_program() {
  using detail_vm::Assembler;
  Assembler a;

  // working constants and set locations
  a.opi(Op::loadi, 1), a.opr(Op::store, 6);
  a.opi(Op::loadi, 0), a.opr(Op::store, 5);
  a.opi(Op::loadi, 22), a.opr(Op::add, 21), a.opr(Op::store, 10);  // position of |A2|
  a.opr(Op::loadind, 10), a.opr(Op::store, 11);
  a.opr(Op::load, 10), a.opr(Op::add, 6), a.opr(Op::store, 13);    // base of A2
  a.opr(Op::load, 13), a.opr(Op::add, 11), a.opr(Op::store, 10);   // position of |A3|
  a.opr(Op::loadind, 10), a.opr(Op::store, 12);
  a.opr(Op::load, 10), a.opr(Op::add, 6), a.opr(Op::store, 14);    // base of A3

  // a choose size above its set size leaves that quantifier without a move
  a.opr(Op::load, 1), a.opr(Op::sub, 21), a.branch(Op::jzero, 0, "shape1");
  a.opi(Op::loadi, 0), a.op0(Op::halt);
  a.label("shape1");
  a.opr(Op::load, 2), a.opr(Op::sub, 11), a.branch(Op::jzero, 0, "shape2");
  a.opi(Op::loadi, 1), a.op0(Op::halt);
  a.label("shape2");
  a.opr(Op::load, 3), a.opr(Op::sub, 12), a.branch(Op::jzero, 0, "shape3");
  a.opi(Op::loadi, 0), a.op0(Op::halt);
  a.label("shape3");

  struct SetPlan {
    std::size_t count_reg;
    std::size_t size_reg;
    std::size_t base_reg;  // 0: base is the constant 22
    Op guess;
    int stuck_result;  // accumulator value when the guessed tuple is invalid
    std::string tag;
  };
  const SetPlan plans[3] = {
      {1, 21, 0, Op::exists, 0, "1"},
      {2, 11, 13, Op::forall, 1, "2"},
      {3, 12, 14, Op::exists, 0, "3"},
  };
  for (const SetPlan& plan : plans) {
    a.opr(Op::load, plan.count_reg), a.opr(Op::store, 9);
    a.opi(Op::loadi, 0), a.opr(Op::store, 8);
    a.label("loop" + plan.tag);
    a.opr(Op::load, 9), a.branch(Op::jzero, 0, "done" + plan.tag);
    a.opr(Op::load, plan.size_reg), a.opr(Op::sub, 6);  // guess limit |A_i| - 1
    a.op0(plan.guess);
    a.opr(Op::store, 7);
    a.opr(Op::load, 8), a.opr(Op::sub, 7), a.branch(Op::jzero, 0, "ok" + plan.tag);
    a.opi(Op::loadi, plan.stuck_result), a.op0(Op::halt);
    a.label("ok" + plan.tag);
    a.opr(Op::load, 7), a.opr(Op::add, 6), a.opr(Op::store, 8);
    if (plan.base_reg == 0)
      a.opi(Op::loadi, 22);
    else
      a.opr(Op::load, plan.base_reg);
    a.opr(Op::add, 7), a.opr(Op::store, 10);
    a.opr(Op::loadind, 10);
    a.opr(Op::add, 5), a.opr(Op::store, 5);
    a.opr(Op::load, 9), a.opr(Op::sub, 6), a.opr(Op::store, 9);
    a.branch(Op::jump, 0, "loop" + plan.tag);
    a.label("done" + plan.tag);
  }

  a.opr(Op::load, 5), a.branch(Op::jeq, 4, "accept");
  a.opi(Op::loadi, 0), a.op0(Op::halt);
  a.label("accept");
  a.opi(Op::loadi, 1), a.op0(Op::halt);
  return a.finish();
}

// Register image for the built-in membership program. Only plain existential
// equality instances at level 3 can be encoded.
inline std::vector<Nat> encode_altss_input(const AltssInstance& instance) {
  if (instance.level_count() != 3)
    throw std::invalid_argument("encode_altss_input: needs a level-3 instance");
  if (instance.first_quantifier != Quantifier::exists ||
      instance.comparison != Comparison::equal)
    throw std::invalid_argument("encode_altss_input: needs the (exists, equal) flavour");

  std::vector<Nat> image;
  for (std::size_t k : instance.choose_sizes) image.push_back(Nat(static_cast<unsigned long>(k)));
  image.push_back(instance.target);
  for (int i = 0; i < 16; ++i) image.push_back(Nat(0));  // working bank
  for (const auto& set : instance.sets) {
    image.push_back(Nat(static_cast<unsigned long>(set.size())));
    for (const Nat& value : set) image.push_back(value);
  }
  return image;
}

// Guess-phase length per chosen element plus a constant; the documented tail
// factor for auditing the membership program.
inline constexpr std::uint64_t kMembershipTailFactor = 64;

// Bounds under which the membership program must audit clean.
inline RunBounds membership_bounds(const AltssInstance& instance) {
  const std::size_t p = parameter(instance);
  const std::vector<Nat> image = encode_altss_input(instance);
  Nat value_bound = instance.target + Nat(static_cast<unsigned long>(image.size() + 64));
  for (const auto& set : instance.sets)
    for (const Nat& value : set) value_bound += value;

  RunBounds bounds;
  bounds.max_steps = 160 + 32 * static_cast<std::uint64_t>(p);
  bounds.max_guess_steps = p;
  bounds.max_register_index = image.size();
  bounds.max_value = value_bound;
  bounds.tail_window = kMembershipTailFactor * std::max<std::uint64_t>(1, p);
  bounds.max_alternations = 3;
  return bounds;
}

inline std::vector<Nat> parse_register_image(const std::string& text) {
  std::vector<Nat> image;
  for (const auto& [number, tokens] : detail::token_lines(text))
    for (const auto& token : tokens) image.push_back(detail::parse_nat(token, number));
  return image;
}

inline std::string serialize_register_image(const std::vector<Nat>& image) {
  std::string out;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (i > 0) out += i % 16 == 0 ? "\n" : " ";
    out += image[i].get_str();
  }
  out += "\n";
  return out;
}

}  // namespace altss::aram
