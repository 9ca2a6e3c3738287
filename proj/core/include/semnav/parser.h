#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "semnav/ast.h"

namespace semnav {

/// Base class for everything parse_program can throw.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : ParseError {
  int line;
  int column;
  SyntaxError(int line, int column, const std::string& message);
};

/// Aggregate functions other than #count (e.g. #sum, #max) are out of the
/// dialect and rejected with this dedicated error.
struct UnsupportedAggregate : SyntaxError {
  std::string function;
  UnsupportedAggregate(int line, int column, std::string function);
};

struct SafetyError : ParseError {
  int rule_index;  // 0-based position of the offending rule
  std::string variable;
  SafetyError(int rule_index, std::string variable, int line);
};

struct ArityError : ParseError {
  std::string predicate;
  int expected;
  int found;
  ArityError(std::string predicate, int expected, int found, int line);
};

/// Parses DLV-dialect text into a validated Program.
///
/// maxint resolution: a "#maxint = N." directive wins, then the parameter,
/// then the largest integer literal occurring in the program (0 if none).
Program parse_program(std::string_view text, std::optional<long> maxint = {});

/// Number of lines that are non-empty after stripping whitespace and do not
/// start with the '%' comment marker.
int count_effective_lines(std::string_view text);

}  // namespace semnav
