#include "semnav/parser.h"

#include <cctype>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace semnav {

SyntaxError::SyntaxError(int line, int column, const std::string& message)
    : ParseError("syntax error at " + std::to_string(line) + ":" +
                 std::to_string(column) + ": " + message),
      line(line),
      column(column) {}

UnsupportedAggregate::UnsupportedAggregate(int line, int column, std::string fn)
    : SyntaxError(line, column, "unsupported aggregate function '" + fn +
                                    "' (only #count is available)"),
      function(std::move(fn)) {}

SafetyError::SafetyError(int rule_index, std::string variable, int line)
    : ParseError("unsafe variable '" + variable + "' in rule " +
                 std::to_string(rule_index) + " (line " + std::to_string(line) +
                 "): it does not occur in any positive body literal"),
      rule_index(rule_index),
      variable(std::move(variable)) {}

ArityError::ArityError(std::string predicate, int expected, int found, int line)
    : ParseError("predicate '" + predicate + "' used with arity " +
                 std::to_string(found) + " but first used with arity " +
                 std::to_string(expected) + " (line " + std::to_string(line) +
                 ")"),
      predicate(std::move(predicate)),
      expected(expected),
      found(found) {}

namespace {

enum class Tok {
  Ident,
  Variable,
  Integer,
  If,       // :-
  Dot,
  Comma,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Colon,
  Cmp,      // < <= > >= =
  Hash,     // #ident, payload carries the directive/aggregate name
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long value = 0;
  CmpOp cmp = CmpOp::Eq;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End) break;
    }
    return out;
  }

 private:
  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        num += text_[pos_];
        advance();
      }
      t.kind = Tok::Integer;
      t.text = num;
      t.value = std::stol(num);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        word += text_[pos_];
        advance();
      }
      t.kind = std::isupper(static_cast<unsigned char>(word[0])) ? Tok::Variable
                                                                 : Tok::Ident;
      if (word[0] == '_')
        throw SyntaxError(t.line, t.column, "identifier may not start with '_'");
      t.text = word;
      return t;
    }
    switch (c) {
      case '.': advance(); t.kind = Tok::Dot; return t;
      case ',': advance(); t.kind = Tok::Comma; return t;
      case '(': advance(); t.kind = Tok::LParen; return t;
      case ')': advance(); t.kind = Tok::RParen; return t;
      case '{': advance(); t.kind = Tok::LBrace; return t;
      case '}': advance(); t.kind = Tok::RBrace; return t;
      case ':':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '-') {
          advance();
          t.kind = Tok::If;
        } else {
          t.kind = Tok::Colon;
        }
        return t;
      case '<':
        advance();
        t.kind = Tok::Cmp;
        t.cmp = CmpOp::Lt;
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          t.cmp = CmpOp::Le;
        }
        return t;
      case '>':
        advance();
        t.kind = Tok::Cmp;
        t.cmp = CmpOp::Gt;
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          t.cmp = CmpOp::Ge;
        }
        return t;
      case '=':
        advance();
        t.kind = Tok::Cmp;
        t.cmp = CmpOp::Eq;
        return t;
      case '#': {
        advance();
        std::string word;
        while (pos_ < text_.size() &&
               std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
          word += text_[pos_];
          advance();
        }
        if (word.empty())
          throw SyntaxError(t.line, t.column, "bare '#' is not a token");
        t.kind = Tok::Hash;
        t.text = word;
        return t;
      }
      case '!':
        throw SyntaxError(line_, col_,
                          "this dialect has no '!=' operator; use the ordered "
                          "comparisons instead");
      default:
        throw SyntaxError(line_, col_, std::string("unexpected character '") +
                                           c + "'");
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::optional<long> maxint_param)
      : maxint_param_(maxint_param) {
    reject_neq(text);
    tokens_ = Lexer(text).run();
  }

  Program run() {
    Program p;
    while (!at(Tok::End)) {
      if (at(Tok::Hash)) {
        parse_directive(p);
        continue;
      }
      p.rules.push_back(parse_rule());
    }
    resolve_maxint(p);
    check_arities(p);
    check_safety(p);
    return p;
  }

 private:
  // The dialect deliberately lacks '!='; any occurrence anywhere in the
  // input, comments included, is rejected outright.
  static void reject_neq(std::string_view text) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
      if (text[i] == '!' && text[i + 1] == '=')
        throw SyntaxError(line, col,
                          "this dialect has no '!=' operator; use the ordered "
                          "comparisons instead");
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  const Token& cur() const { return tokens_[idx_]; }
  bool at(Tok k) const { return cur().kind == k; }

  Token eat(Tok k, const char* what) {
    if (!at(k))
      throw SyntaxError(cur().line, cur().column,
                        std::string("expected ") + what);
    return tokens_[idx_++];
  }

  void parse_directive(Program& p) {
    Token hash = eat(Tok::Hash, "directive");
    if (hash.text != "maxint")
      throw SyntaxError(hash.line, hash.column,
                        "unknown directive '#" + hash.text + "'");
    Token eq = eat(Tok::Cmp, "'=' after #maxint");
    if (eq.cmp != CmpOp::Eq)
      throw SyntaxError(eq.line, eq.column, "'=' after #maxint");
    Token n = eat(Tok::Integer, "integer after #maxint =");
    eat(Tok::Dot, "'.' after #maxint directive");
    p.maxint = n.value;
    p.explicit_maxint = true;
  }

  Rule parse_rule() {
    Rule r;
    r.line = cur().line;
    r.column = cur().column;
    if (at(Tok::Dot))
      throw SyntaxError(cur().line, cur().column, "empty statement");
    if (!at(Tok::If)) {
      r.head.push_back(parse_atom());
      while (at(Tok::Ident) && cur().text == "v") {
        ++idx_;  // disjunction separator
        r.head.push_back(parse_atom());
      }
    }
    if (at(Tok::If)) {
      ++idx_;
      r.body.push_back(parse_body_elem(r));
      while (at(Tok::Comma)) {
        ++idx_;
        r.body.push_back(parse_body_elem(r));
      }
    }
    eat(Tok::Dot, "'.' at end of rule");
    if (r.head.empty() && r.body.empty())
      throw SyntaxError(r.line, r.column, "empty statement");
    return r;
  }

  BodyElem parse_body_elem(const Rule& partial) {
    if (at(Tok::Ident) && cur().text == "not") {
      ++idx_;
      if (!at(Tok::Ident))
        throw SyntaxError(cur().line, cur().column,
                          "atom expected after 'not'");
      return BodyElem::naf(parse_atom());
    }
    if (at(Tok::Hash)) {
      Token hash = cur();
      AggregateAtom agg = parse_aggregate();
      if (!partial.head.empty())
        throw SyntaxError(hash.line, hash.column,
                          "aggregates may appear only in constraint bodies");
      return BodyElem::aggregate(agg);
    }
    // An identifier can open an atom or (invalidly) a comparison; a variable
    // or integer can only open a comparison.
    if (at(Tok::Ident)) {
      Token id = cur();
      if (tokens_[idx_ + 1].kind == Tok::Cmp)
        throw SyntaxError(id.line, id.column,
                          "comparison operands must be integers or variables");
      return BodyElem::positive(parse_atom());
    }
    if (at(Tok::Variable) || at(Tok::Integer)) {
      Comparison c;
      c.lhs = parse_term();
      Token op = eat(Tok::Cmp, "comparison operator");
      c.op = op.cmp;
      if (at(Tok::Ident))
        throw SyntaxError(cur().line, cur().column,
                          "comparison operands must be integers or variables");
      c.rhs = parse_term();
      return BodyElem::comparison(c);
    }
    throw SyntaxError(cur().line, cur().column, "body element expected");
  }

  AggregateAtom parse_aggregate() {
    Token hash = eat(Tok::Hash, "aggregate");
    if (hash.text != "count")
      throw UnsupportedAggregate(hash.line, hash.column, "#" + hash.text);
    AggregateAtom agg;
    eat(Tok::LBrace, "'{' after #count");
    Token v = eat(Tok::Variable, "bound variable in #count{...}");
    agg.bound_var = v.text;
    eat(Tok::Colon, "':' in #count{...}");
    agg.inner = parse_atom();
    bool found = false;
    for (const auto& t : agg.inner.args)
      if (t.kind == TermKind::Variable && t.name == agg.bound_var) found = true;
    if (!found)
      throw SyntaxError(v.line, v.column,
                        "bound variable '" + agg.bound_var +
                            "' does not occur in the aggregate atom");
    eat(Tok::RBrace, "'}' closing #count{...}");
    Token op = eat(Tok::Cmp, "comparison operator after #count{...}");
    agg.op = op.cmp;
    if (at(Tok::Ident))
      throw SyntaxError(cur().line, cur().column,
                        "aggregate guard must be an integer or a variable");
    agg.guard = parse_term();
    return agg;
  }

  Atom parse_atom() {
    Token id = eat(Tok::Ident, "atom");
    Atom a;
    a.predicate = id.text;
    if (at(Tok::LParen)) {
      ++idx_;
      a.args.push_back(parse_term());
      while (at(Tok::Comma)) {
        ++idx_;
        a.args.push_back(parse_term());
      }
      eat(Tok::RParen, "')' closing argument list");
    }
    return a;
  }

  Term parse_term() {
    if (at(Tok::Ident)) {
      Token t = tokens_[idx_++];
      return Term::constant(t.text);
    }
    if (at(Tok::Variable)) {
      Token t = tokens_[idx_++];
      return Term::variable(t.text);
    }
    if (at(Tok::Integer)) {
      Token t = tokens_[idx_++];
      return Term::integer(t.value);
    }
    throw SyntaxError(cur().line, cur().column, "term expected");
  }

  void resolve_maxint(Program& p) {
    if (p.explicit_maxint) return;
    if (maxint_param_) {
      p.maxint = *maxint_param_;
      return;
    }
    long largest = 0;
    for (const auto& r : p.rules) {
      auto scan_term = [&](const Term& t) {
        if (t.kind == TermKind::Integer && t.value > largest) largest = t.value;
      };
      for (const auto& a : r.head)
        for (const auto& t : a.args) scan_term(t);
      for (const auto& e : r.body) {
        switch (e.kind) {
          case BodyElemKind::Positive:
          case BodyElemKind::Naf:
            for (const auto& t : e.atom.args) scan_term(t);
            break;
          case BodyElemKind::Comparison:
            scan_term(e.cmp.lhs);
            scan_term(e.cmp.rhs);
            break;
          case BodyElemKind::Aggregate:
            for (const auto& t : e.agg.inner.args) scan_term(t);
            scan_term(e.agg.guard);
            break;
        }
      }
    }
    p.maxint = largest;
  }

  void check_arities(const Program& p) {
    std::map<std::string, int> arity;
    auto check = [&](const Atom& a, int line) {
      auto [it, inserted] =
          arity.emplace(a.predicate, static_cast<int>(a.args.size()));
      if (!inserted && it->second != static_cast<int>(a.args.size()))
        throw ArityError(a.predicate, it->second,
                         static_cast<int>(a.args.size()), line);
    };
    for (const auto& r : p.rules) {
      for (const auto& a : r.head) check(a, r.line);
      for (const auto& e : r.body) {
        if (e.kind == BodyElemKind::Positive || e.kind == BodyElemKind::Naf)
          check(e.atom, r.line);
        if (e.kind == BodyElemKind::Aggregate) check(e.agg.inner, r.line);
      }
    }
  }

  // Safety: every variable occurring in the head, under negation, in a
  // comparison, as an aggregate guard, or in a non-bound position of an
  // aggregate atom must occur in some positive body literal. The aggregate
  // bound variable is locally scoped and exempt.
  void check_safety(const Program& p) {
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
      const Rule& r = p.rules[i];
      std::set<std::string> bound;
      for (const auto& e : r.body) {
        if (e.kind != BodyElemKind::Positive) continue;
        for (const auto& t : e.atom.args)
          if (t.kind == TermKind::Variable) bound.insert(t.name);
      }
      auto require = [&](const Term& t) {
        if (t.kind == TermKind::Variable && !bound.count(t.name))
          throw SafetyError(static_cast<int>(i), t.name, r.line);
      };
      for (const auto& a : r.head)
        for (const auto& t : a.args) require(t);
      for (const auto& e : r.body) {
        switch (e.kind) {
          case BodyElemKind::Positive: break;
          case BodyElemKind::Naf:
            for (const auto& t : e.atom.args) require(t);
            break;
          case BodyElemKind::Comparison:
            require(e.cmp.lhs);
            require(e.cmp.rhs);
            break;
          case BodyElemKind::Aggregate:
            for (const auto& t : e.agg.inner.args) {
              if (t.kind == TermKind::Variable && t.name == e.agg.bound_var)
                continue;
              require(t);
            }
            require(e.agg.guard);
            break;
        }
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t idx_ = 0;
  std::optional<long> maxint_param_;
};

}  // namespace

Program parse_program(std::string_view text, std::optional<long> maxint) {
  return Parser(text, maxint).run();
}

int count_effective_lines(std::string_view text) {
  int count = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    std::size_t a = line.find_first_not_of(" \t\r\f\v");
    if (a != std::string_view::npos && line[a] != '%') ++count;
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return count;
}

}  // namespace semnav
