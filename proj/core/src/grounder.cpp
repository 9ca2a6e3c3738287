#include "semnav/grounder.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace semnav {

std::string to_string(const GroundAtom& a) {
  Atom tmp;
  tmp.predicate = a.predicate;
  tmp.args = a.args;
  return to_string(tmp);
}

bool text_less(const GroundAtom& a, const GroundAtom& b) {
  return to_string(a) < to_string(b);
}

std::string to_string(const GroundRule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.head.size(); ++i) {
    if (i) out += " v ";
    out += to_string(r.head[i]);
  }
  bool has_body = !r.pos.empty() || !r.naf.empty() || !r.aggregates.empty();
  if (has_body) {
    if (!r.head.empty()) out += " ";
    out += ":- ";
    bool first = true;
    auto sep = [&]() {
      if (!first) out += ", ";
      first = false;
    };
    for (const auto& a : r.pos) {
      sep();
      out += to_string(a);
    }
    for (const auto& a : r.naf) {
      sep();
      out += "not " + to_string(a);
    }
    for (const auto& g : r.aggregates) {
      sep();
      out += "#count{" + g.bound_var + " : " + to_string(g.pattern) + "} " +
             to_string(g.op) + " " + std::to_string(g.guard);
    }
  }
  out += ".";
  return out;
}

std::string print_ground_program(const GroundProgram& gp) {
  std::string out;
  for (std::size_t i = 0; i < gp.rules.size(); ++i) {
    if (i) out += "\n";
    out += to_string(gp.rules[i]);
  }
  return out;
}

namespace {

using Binding = std::map<std::string, Term>;  // variable name -> ground term

Term substitute(const Term& t, const Binding& b) {
  if (t.kind != TermKind::Variable) return t;
  auto it = b.find(t.name);
  return it == b.end() ? t : it->second;
}

GroundAtom substitute_atom(const Atom& a, const Binding& b) {
  GroundAtom out;
  out.predicate = a.predicate;
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(substitute(t, b));
  return out;
}

bool unify(const Atom& pattern, const GroundAtom& fact, Binding& b) {
  if (pattern.predicate != fact.predicate ||
      pattern.args.size() != fact.args.size())
    return false;
  std::vector<std::pair<std::string, Term>> added;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& pt = pattern.args[i];
    const Term& ft = fact.args[i];
    if (pt.kind == TermKind::Variable) {
      auto it = b.find(pt.name);
      if (it == b.end()) {
        b.emplace(pt.name, ft);
        added.emplace_back(pt.name, ft);
      } else if (!(it->second == ft)) {
        for (const auto& [k, v] : added) b.erase(k);
        return false;
      }
    } else if (!(pt == ft)) {
      for (const auto& [k, v] : added) b.erase(k);
      return false;
    }
  }
  return true;
}

struct AtomStore {
  std::set<std::vector<Term>>* bucket(const std::string& pred, bool create) {
    auto it = by_pred.find(pred);
    if (it == by_pred.end()) {
      if (!create) return nullptr;
      it = by_pred.emplace(pred, std::set<std::vector<Term>>{}).first;
    }
    return &it->second;
  }

  bool insert(const GroundAtom& a) {
    return bucket(a.predicate, true)->insert(a.args).second;
  }

  bool contains(const GroundAtom& a) {
    auto* b = bucket(a.predicate, false);
    return b && b->count(a.args);
  }

  std::map<std::string, std::set<std::vector<Term>>> by_pred;
};

// Comparisons are decidable only between integers; a binding that puts a
// constant into a comparison makes the instance false and it is dropped.
bool comparison_true(const Comparison& c, const Binding& b) {
  Term lhs = substitute(c.lhs, b);
  Term rhs = substitute(c.rhs, b);
  if (lhs.kind != TermKind::Integer || rhs.kind != TermKind::Integer)
    return false;
  return eval_cmp(c.op, lhs.value, rhs.value);
}

class Grounder {
 public:
  Grounder(const Program& p, const GroundLimits& limits)
      : program_(p), limits_(limits) {}

  GroundProgram run() {
    closure();
    GroundProgram gp;
    std::set<std::string> seen_rules;
    std::set<std::string> seen_atoms;
    auto add_atom = [&](const GroundAtom& a) {
      if (seen_atoms.insert(to_string(a)).second) gp.atom_universe.push_back(a);
    };
    for (const auto& rule : program_.rules) {
      enumerate(rule, [&](const Binding& bind) {
        std::optional<GroundRule> gr = instantiate(rule, bind);
        if (!gr) return;
        if (seen_rules.insert(to_string(*gr)).second) {
          if (gp.rules.size() >= limits_.max_rules)
            throw DomainOverflow(
                "ground rule count exceeds the configured cap of " +
                std::to_string(limits_.max_rules));
          for (const auto& a : gr->head) add_atom(a);
          for (const auto& a : gr->pos) add_atom(a);
          for (const auto& a : gr->naf) add_atom(a);
          gp.rules.push_back(std::move(*gr));
        }
      });
    }
    std::sort(gp.rules.begin(), gp.rules.end(),
              [](const GroundRule& a, const GroundRule& b) {
                return to_string(a) < to_string(b);
              });
    std::sort(gp.atom_universe.begin(), gp.atom_universe.end(), text_less);
    return gp;
  }

 private:
  // Fixpoint of head atoms derivable through positive bodies, ignoring
  // negation and aggregates. Atoms outside this closure cannot belong to any
  // answer set, so substitutions are drawn from it.
  void closure() {
    bool changed = true;
    std::size_t derived = 0;
    while (changed) {
      changed = false;
      for (const auto& rule : program_.rules) {
        if (rule.head.empty()) continue;
        enumerate(rule, [&](const Binding& bind) {
          for (const auto& h : rule.head) {
            if (store_.insert(substitute_atom(h, bind))) {
              changed = true;
              if (++derived > limits_.max_rules)
                throw DomainOverflow(
                    "derivable atom count exceeds the configured cap of " +
                    std::to_string(limits_.max_rules));
            }
          }
        });
      }
    }
  }

  // Enumerates bindings that match every positive body atom against the
  // derivable store and satisfy every comparison. Safety guarantees all
  // variables (bar aggregate-bound ones) are covered by the positive atoms.
  template <typename Fn>
  void enumerate(const Rule& rule, Fn&& fn) {
    std::vector<const Atom*> pos;
    for (const auto& e : rule.body)
      if (e.kind == BodyElemKind::Positive) pos.push_back(&e.atom);
    Binding bind;
    match(rule, pos, 0, bind, fn);
  }

  template <typename Fn>
  void match(const Rule& rule, const std::vector<const Atom*>& pos,
             std::size_t i, Binding& bind, Fn&& fn) {
    if (i == pos.size()) {
      for (const auto& e : rule.body)
        if (e.kind == BodyElemKind::Comparison &&
            !comparison_true(e.cmp, bind))
          return;
      fn(bind);
      return;
    }
    auto* bucket = store_.bucket(pos[i]->predicate, false);
    if (!bucket) return;
    for (const auto& args : *bucket) {
      GroundAtom fact{pos[i]->predicate, args};
      Binding saved = bind;
      if (unify(*pos[i], fact, bind)) {
        match(rule, pos, i + 1, bind, fn);
        bind = saved;
      }
    }
  }

  // Returns nullopt when the binding makes an aggregate guard non-integer:
  // a count can never compare true against a constant, so the instance is
  // unsatisfiable and dropped.
  std::optional<GroundRule> instantiate(const Rule& rule, const Binding& bind) {
    GroundRule gr;
    for (const auto& h : rule.head) gr.head.push_back(substitute_atom(h, bind));
    for (const auto& e : rule.body) {
      switch (e.kind) {
        case BodyElemKind::Positive:
          gr.pos.push_back(substitute_atom(e.atom, bind));
          break;
        case BodyElemKind::Naf:
          gr.naf.push_back(substitute_atom(e.atom, bind));
          break;
        case BodyElemKind::Comparison:
          break;  // evaluated by the enumerator, removed from the body
        case BodyElemKind::Aggregate: {
          GroundAggregate g;
          g.bound_var = e.agg.bound_var;
          g.op = e.agg.op;
          // The bound variable shadows any outer variable of the same name.
          Binding inner = bind;
          inner.erase(e.agg.bound_var);
          g.pattern.predicate = e.agg.inner.predicate;
          for (const auto& t : e.agg.inner.args)
            g.pattern.args.push_back(substitute(t, inner));
          Term guard = substitute(e.agg.guard, bind);
          if (guard.kind != TermKind::Integer) return std::nullopt;
          g.guard = guard.value;
          gr.aggregates.push_back(std::move(g));
          break;
        }
      }
    }
    return gr;
  }

  const Program& program_;
  GroundLimits limits_;
  AtomStore store_;
};

}  // namespace

GroundProgram ground(const Program& program, const GroundLimits& limits) {
  return Grounder(program, limits).run();
}

}  // namespace semnav
