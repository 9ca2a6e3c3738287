#pragma once

#include <compare>
#include <string>
#include <vector>

namespace semnav {

/// Kinds of terms in the DLV dialect fragment. No function symbols.
enum class TermKind { Constant, Integer, Variable };

struct Term {
  TermKind kind = TermKind::Integer;
  std::string name;  // Constant symbol or Variable name
  long value = 0;    // Integer payload

  static Term constant(std::string symbol);
  static Term integer(long v);
  static Term variable(std::string name);

  bool is_ground() const { return kind != TermKind::Variable; }

  // Structural order for containers; canonical output ordering is textual.
  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  bool is_ground() const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

enum class CmpOp { Lt, Le, Gt, Ge, Eq };

bool eval_cmp(CmpOp op, long lhs, long rhs);

/// Comparison between two terms. Operands are restricted to integers and
/// variables at parse time.
struct Comparison {
  Term lhs;
  CmpOp op = CmpOp::Eq;
  Term rhs;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// #count{V : inner} op guard. The bound variable is local to the aggregate;
/// an outer variable of the same name is shadowed.
struct AggregateAtom {
  std::string bound_var;
  Atom inner;
  CmpOp op = CmpOp::Eq;
  Term guard;

  friend bool operator==(const AggregateAtom&, const AggregateAtom&) = default;
};

enum class BodyElemKind { Positive, Naf, Comparison, Aggregate };

struct BodyElem {
  BodyElemKind kind = BodyElemKind::Positive;
  Atom atom;           // Positive | Naf
  Comparison cmp;      // Comparison
  AggregateAtom agg;   // Aggregate

  static BodyElem positive(Atom a);
  static BodyElem naf(Atom a);
  static BodyElem comparison(Comparison c);
  static BodyElem aggregate(AggregateAtom a);
};

bool operator==(const BodyElem& a, const BodyElem& b);

/// head empty = integrity constraint, one atom = normal rule, several = disjunction.
struct Rule {
  std::vector<Atom> head;
  std::vector<BodyElem> body;
  int line = 0;    // source position of the first token, 1-based
  int column = 0;

  bool is_constraint() const { return head.empty(); }
  bool is_fact() const;
};

/// Structural equality; source positions are ignored.
bool operator==(const Rule& a, const Rule& b);

struct Program {
  std::vector<Rule> rules;
  long maxint = 0;
  bool explicit_maxint = false;  // true when a #maxint directive was present
};

bool operator==(const Program& a, const Program& b);

std::string to_string(const Term& t);
std::string to_string(CmpOp op);
std::string to_string(const Atom& a);
std::string to_string(const Comparison& c);
std::string to_string(const AggregateAtom& a);
std::string to_string(const BodyElem& e);
std::string to_string(const Rule& r);

/// Canonical text form: one rule per line, single spaces after commas,
/// ":-" separator, terminating period. Re-parsing the result yields a
/// structurally equal program.
std::string print_program(const Program& p);

}  // namespace semnav
