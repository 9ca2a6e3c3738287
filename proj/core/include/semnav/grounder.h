#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "semnav/ast.h"

namespace semnav {

/// Variable-free atom: arguments are constants or integers only.
struct GroundAtom {
  std::string predicate;
  std::vector<Term> args;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
};

std::string to_string(const GroundAtom& a);

/// Textual (canonical) ordering used for universes and answer sets.
bool text_less(const GroundAtom& a, const GroundAtom& b);

/// Instantiated #count. The pattern is ground except at the positions of the
/// bound variable; the guard is always an integer after grounding.
struct GroundAggregate {
  std::string bound_var;
  Atom pattern;
  CmpOp op = CmpOp::Eq;
  long guard = 0;

  friend bool operator==(const GroundAggregate&, const GroundAggregate&) = default;
};

struct GroundRule {
  std::vector<GroundAtom> head;
  std::vector<GroundAtom> pos;
  std::vector<GroundAtom> naf;
  std::vector<GroundAggregate> aggregates;

  bool is_constraint() const { return head.empty(); }

  friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

std::string to_string(const GroundRule& r);

struct GroundProgram {
  std::vector<GroundRule> rules;        // sorted by canonical text, deduplicated
  std::vector<GroundAtom> atom_universe;  // sorted textually, deduplicated
};

/// Canonical text of a ground program, one rule per line.
std::string print_ground_program(const GroundProgram& gp);

struct GroundLimits {
  std::size_t max_rules = 1'000'000;
};

struct DomainOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instantiates all variables, producing a semantics-preserving ground
/// program. Substitutions are restricted to tuples derivable from positive
/// atoms (the positive-dependency closure), which keeps the output equal, in
/// answer sets, to naive full instantiation over constants and 0..maxint.
/// Ground comparisons are evaluated away: instances with a false comparison
/// are dropped, satisfied comparisons are removed from the body. Aggregates
/// keep their bound variable; every other variable in them is substituted.
GroundProgram ground(const Program& program, const GroundLimits& limits = {});

}  // namespace semnav
