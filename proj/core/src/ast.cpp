#include "semnav/ast.h"

#include <sstream>

namespace semnav {

Term Term::constant(std::string symbol) {
  Term t;
  t.kind = TermKind::Constant;
  t.name = std::move(symbol);
  return t;
}

Term Term::integer(long v) {
  Term t;
  t.kind = TermKind::Integer;
  t.value = v;
  return t;
}

Term Term::variable(std::string name) {
  Term t;
  t.kind = TermKind::Variable;
  t.name = std::move(name);
  return t;
}

bool Atom::is_ground() const {
  for (const auto& t : args) {
    if (!t.is_ground()) return false;
  }
  return true;
}

bool eval_cmp(CmpOp op, long lhs, long rhs) {
  switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Gt: return lhs > rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Eq: return lhs == rhs;
  }
  return false;
}

BodyElem BodyElem::positive(Atom a) {
  BodyElem e;
  e.kind = BodyElemKind::Positive;
  e.atom = std::move(a);
  return e;
}

BodyElem BodyElem::naf(Atom a) {
  BodyElem e;
  e.kind = BodyElemKind::Naf;
  e.atom = std::move(a);
  return e;
}

BodyElem BodyElem::comparison(Comparison c) {
  BodyElem e;
  e.kind = BodyElemKind::Comparison;
  e.cmp = std::move(c);
  return e;
}

BodyElem BodyElem::aggregate(AggregateAtom a) {
  BodyElem e;
  e.kind = BodyElemKind::Aggregate;
  e.agg = std::move(a);
  return e;
}

bool operator==(const BodyElem& a, const BodyElem& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case BodyElemKind::Positive:
    case BodyElemKind::Naf: return a.atom == b.atom;
    case BodyElemKind::Comparison: return a.cmp == b.cmp;
    case BodyElemKind::Aggregate: return a.agg == b.agg;
  }
  return false;
}

bool Rule::is_fact() const {
  if (head.size() != 1 || !body.empty()) return false;
  return head.front().is_ground();
}

bool operator==(const Rule& a, const Rule& b) {
  return a.head == b.head && a.body == b.body;
}

bool operator==(const Program& a, const Program& b) {
  return a.rules == b.rules && a.maxint == b.maxint;
}

std::string to_string(const Term& t) {
  switch (t.kind) {
    case TermKind::Constant:
    case TermKind::Variable: return t.name;
    case TermKind::Integer: return std::to_string(t.value);
  }
  return {};
}

std::string to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "=";
  }
  return {};
}

std::string to_string(const Atom& a) {
  if (a.args.empty()) return a.predicate;
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(a.args[i]);
  }
  out += ")";
  return out;
}

std::string to_string(const Comparison& c) {
  return to_string(c.lhs) + " " + to_string(c.op) + " " + to_string(c.rhs);
}

std::string to_string(const AggregateAtom& a) {
  return "#count{" + a.bound_var + " : " + to_string(a.inner) + "} " +
         to_string(a.op) + " " + to_string(a.guard);
}

std::string to_string(const BodyElem& e) {
  switch (e.kind) {
    case BodyElemKind::Positive: return to_string(e.atom);
    case BodyElemKind::Naf: return "not " + to_string(e.atom);
    case BodyElemKind::Comparison: return to_string(e.cmp);
    case BodyElemKind::Aggregate: return to_string(e.agg);
  }
  return {};
}

std::string to_string(const Rule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.head.size(); ++i) {
    if (i) out += " v ";
    out += to_string(r.head[i]);
  }
  if (!r.body.empty()) {
    if (!r.head.empty()) out += " ";
    out += ":- ";
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      if (i) out += ", ";
      out += to_string(r.body[i]);
    }
  }
  out += ".";
  return out;
}

std::string print_program(const Program& p) {
  std::string out;
  bool first = true;
  auto emit = [&](const std::string& line) {
    if (!first) out += "\n";
    out += line;
    first = false;
  };
  if (p.explicit_maxint) emit("#maxint = " + std::to_string(p.maxint) + ".");
  for (const auto& r : p.rules) emit(to_string(r));
  return out;
}

}  // namespace semnav
