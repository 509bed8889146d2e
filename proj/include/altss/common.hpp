#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace altss {

// Arbitrary-precision natural number. Everything in this library keeps
// values non-negative; subtraction is only used where the result is known
// to stay in range.
using Nat = mpz_class;

inline Nat pow_nat(const Nat& base, unsigned long exponent) {
  Nat r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

enum class Quantifier { exists, forall };

inline Quantifier opposite(Quantifier q) {
  return q == Quantifier::exists ? Quantifier::forall : Quantifier::exists;
}

inline const char* to_string(Quantifier q) {
  return q == Quantifier::exists ? "exists" : "forall";
}

/// Malformed input text. `line` is 1-based; 0 means not line-specific.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Splits text into (1-based line number, token list) rows, dropping
// comments and blank lines.
struct TokenLine {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<TokenLine> token_lines(const std::string& text) {
  std::vector<TokenLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto tokens = tokenize(strip_comment(line));
    if (!tokens.empty()) out.push_back({number, std::move(tokens)});
  }
  return out;
}

inline bool is_decimal(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline Nat parse_nat(const std::string& s, std::size_t line) {
  if (!is_decimal(s)) throw parse_error(line, "expected a decimal natural, got '" + s + "'");
  return Nat(s);
}

inline std::size_t parse_size(const std::string& s, std::size_t line) {
  if (!is_decimal(s) || s.size() > 18)
    throw parse_error(line, "expected a small decimal natural, got '" + s + "'");
  return static_cast<std::size_t>(std::stoull(s));
}

}  // namespace detail

}  // namespace altss
