#include "semnav/solver.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <string>

namespace semnav {

bool AnswerSet::contains(const GroundAtom& a) const {
  return std::find(atoms.begin(), atoms.end(), a) != atoms.end();
}

namespace {

constexpr std::int8_t kUnknown = -1;
constexpr std::int8_t kFalse = 0;
constexpr std::int8_t kTrue = 1;

struct CompiledAgg {
  std::vector<int> candidates;  // universe ids matching the pattern
  CmpOp op = CmpOp::Eq;
  long guard = 0;
};

struct CompiledRule {
  std::vector<int> head;
  std::vector<int> pos;
  std::vector<int> naf;
  bool is_constraint = false;
  bool has_aggs = false;
  std::vector<CompiledAgg> aggs;
};

/// Ground program with atoms interned as dense ids. The universe is sorted
/// textually, so id order coincides with the canonical atom order.
struct Compiled {
  explicit Compiled(const GroundProgram& gp) : universe(&gp.atom_universe) {
    for (std::size_t i = 0; i < gp.atom_universe.size(); ++i)
      ids.emplace(to_string(gp.atom_universe[i]), static_cast<int>(i));
    head_rules.resize(gp.atom_universe.size());
    for (const auto& r : gp.rules) {
      CompiledRule cr;
      cr.is_constraint = r.is_constraint();
      cr.has_aggs = !r.aggregates.empty();
      for (const auto& a : r.head) cr.head.push_back(require_id(a));
      for (const auto& a : r.pos) cr.pos.push_back(require_id(a));
      for (const auto& a : r.naf) cr.naf.push_back(require_id(a));
      for (const auto& g : r.aggregates) {
        CompiledAgg ca;
        ca.op = g.op;
        ca.guard = g.guard;
        for (std::size_t i = 0; i < gp.atom_universe.size(); ++i)
          if (matches(g, gp.atom_universe[i])) ca.candidates.push_back(static_cast<int>(i));
        cr.aggs.push_back(std::move(ca));
      }
      if (!cr.is_constraint) {
        int idx = static_cast<int>(rules.size());
        rules.push_back(cr);
        for (int h : rules.back().head) head_rules[h].push_back(idx);
      } else {
        constraints.push_back(std::move(cr));
      }
    }
  }

  int id_of(const GroundAtom& a) const {
    auto it = ids.find(to_string(a));
    return it == ids.end() ? -1 : it->second;
  }

  int require_id(const GroundAtom& a) const {
    int id = id_of(a);
    if (id < 0)
      throw std::logic_error("atom outside the universe: " + to_string(a));
    return id;
  }

  // A universe atom matches the pattern when fixed positions agree and all
  // bound-variable positions carry one and the same term.
  static bool matches(const GroundAggregate& g, const GroundAtom& a) {
    if (g.pattern.predicate != a.predicate ||
        g.pattern.args.size() != a.args.size())
      return false;
    const Term* bound_value = nullptr;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      const Term& pt = g.pattern.args[i];
      if (pt.kind == TermKind::Variable && pt.name == g.bound_var) {
        if (bound_value && !(*bound_value == a.args[i])) return false;
        bound_value = &a.args[i];
      } else if (!(pt == a.args[i])) {
        return false;
      }
    }
    return true;
  }

  std::size_t atom_count() const { return universe->size(); }

  const std::vector<GroundAtom>* universe;
  std::map<std::string, int> ids;
  std::vector<CompiledRule> rules;        // head rules
  std::vector<CompiledRule> constraints;  // head-less rules
  std::vector<std::vector<int>> head_rules;
};

bool agg_holds(const CompiledAgg& g, const std::vector<std::int8_t>& val) {
  long count = 0;
  for (int c : g.candidates)
    if (val[c] == kTrue) ++count;
  return eval_cmp(g.op, count, g.guard);
}

/// Full candidate test: classical satisfaction of every rule, constraint
/// filtering (aggregates included), then subset-minimality of the
/// Gelfond-Lifschitz reduct via exhaustive search for a smaller model.
class StabilityChecker {
 public:
  explicit StabilityChecker(const Compiled& c) : c_(c) {}

  bool is_stable(const std::vector<std::int8_t>& in) const {
    for (const auto& r : c_.rules) {
      if (!body_applies(r, in)) continue;
      bool head_true = false;
      for (int h : r.head)
        if (in[h] == kTrue) head_true = true;
      if (!head_true) return false;  // rule violated
    }
    for (const auto& r : c_.constraints) {
      if (!body_applies(r, in)) continue;
      bool aggs_ok = true;
      for (const auto& g : r.aggs)
        if (!agg_holds(g, in)) aggs_ok = false;
      if (aggs_ok) return false;  // constraint body satisfied
    }
    return !smaller_model_exists(in);
  }

 private:
  static bool body_applies(const CompiledRule& r,
                           const std::vector<std::int8_t>& in) {
    for (int p : r.pos)
      if (in[p] != kTrue) return false;
    for (int n : r.naf)
      if (in[n] == kTrue) return false;
    return true;
  }

  struct LocalRule {
    std::vector<int> pos;
    std::vector<int> head;
  };

  // Looks for J strictly contained in I that models the reduct. Only rules
  // surviving the reduct with pos contained in I matter: any other rule is
  // satisfied by every subset of I.
  bool smaller_model_exists(const std::vector<std::int8_t>& in) const {
    std::vector<int> local_of_global(c_.atom_count(), -1);
    std::vector<int> atoms;
    for (std::size_t i = 0; i < c_.atom_count(); ++i)
      if (in[i] == kTrue) {
        local_of_global[i] = static_cast<int>(atoms.size());
        atoms.push_back(static_cast<int>(i));
      }
    if (atoms.empty()) return false;  // nothing below the empty set

    std::vector<LocalRule> rules;
    for (const auto& r : c_.rules) {
      bool deleted = false;
      for (int n : r.naf)
        if (in[n] == kTrue) deleted = true;  // removed by the reduct
      if (deleted) continue;
      bool pos_in = true;
      for (int p : r.pos)
        if (in[p] != kTrue) pos_in = false;
      if (!pos_in) continue;
      LocalRule lr;
      for (int p : r.pos) lr.pos.push_back(local_of_global[p]);
      for (int h : r.head)
        if (in[h] == kTrue) lr.head.push_back(local_of_global[h]);
      rules.push_back(std::move(lr));
    }

    std::vector<std::int8_t> jval(atoms.size(), kUnknown);
    return search(rules, jval);
  }

  bool search(const std::vector<LocalRule>& rules,
              std::vector<std::int8_t>& jval) const {
    if (!propagate(rules, jval)) return false;
    int pick = -1;
    for (std::size_t i = 0; i < jval.size(); ++i)
      if (jval[i] == kUnknown) {
        pick = static_cast<int>(i);
        break;
      }
    if (pick < 0) {
      bool proper = false;
      for (auto v : jval)
        if (v == kFalse) proper = true;
      return proper;  // propagation keeps jval a model
    }
    for (std::int8_t v : {kFalse, kTrue}) {
      std::vector<std::int8_t> saved = jval;
      jval[pick] = v;
      if (search(rules, jval)) return true;
      jval = saved;
    }
    return false;
  }

  // Unit propagation over the positive reduct: a rule with its body inside J
  // and all but one head atom false forces the remaining one; all heads
  // false is a conflict.
  bool propagate(const std::vector<LocalRule>& rules,
                 std::vector<std::int8_t>& jval) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : rules) {
        bool body_true = true;
        for (int p : r.pos)
          if (jval[p] != kTrue) {
            body_true = false;
            break;
          }
        if (!body_true) continue;
        int unassigned = -1;
        int open = 0;
        bool sat = false;
        for (int h : r.head) {
          if (jval[h] == kTrue) {
            sat = true;
            break;
          }
          if (jval[h] == kUnknown) {
            ++open;
            unassigned = h;
          }
        }
        if (sat) continue;
        if (open == 0) return false;
        if (open == 1) {
          jval[unassigned] = kTrue;
          changed = true;
        }
      }
    }
    return true;
  }

  const Compiled& c_;
};

/// Chronological backtracking over atom truth values with propagation on the
/// rules (unit consequences), atom support (Clark-completion style), and
/// aggregate-free constraints. Every total assignment that survives is handed
/// to the stability checker.
class Search {
 public:
  Search(const Compiled& c, const SolveOptions& opts)
      : c_(c), checker_(c), opts_(opts) {}

  std::vector<std::vector<int>> run() {
    std::vector<std::int8_t> val(c_.atom_count(), kUnknown);
    dfs(val);
    return std::move(models_);
  }

 private:
  void dfs(std::vector<std::int8_t>& val) {
    if (!propagate(val)) return;
    int pick = -1;
    for (std::size_t i = 0; i < val.size(); ++i)
      if (val[i] == kUnknown) {
        pick = static_cast<int>(i);
        break;
      }
    if (pick < 0) {
      if (checker_.is_stable(val)) {
        std::vector<int> model;
        for (std::size_t i = 0; i < val.size(); ++i)
          if (val[i] == kTrue) model.push_back(static_cast<int>(i));
        models_.push_back(std::move(model));
      }
      return;
    }
    for (std::int8_t v : {kFalse, kTrue}) {
      if (++decisions_ > opts_.node_budget)
        throw ResourceExceeded("solver exceeded the node budget of " +
                               std::to_string(opts_.node_budget) +
                               " decisions");
      std::vector<std::int8_t> saved = val;
      val[pick] = v;
      dfs(val);
      val = saved;
    }
  }

  enum class BodyState { Dead, Sat, Open };

  static BodyState body_state(const CompiledRule& r,
                              const std::vector<std::int8_t>& val) {
    bool open = false;
    for (int p : r.pos) {
      if (val[p] == kFalse) return BodyState::Dead;
      if (val[p] == kUnknown) open = true;
    }
    for (int n : r.naf) {
      if (val[n] == kTrue) return BodyState::Dead;
      if (val[n] == kUnknown) open = true;
    }
    return open ? BodyState::Open : BodyState::Sat;
  }

  bool propagate(std::vector<std::int8_t>& val) {
    bool changed = true;
    while (changed) {
      changed = false;
      // Unit consequences: a satisfied body needs a true head atom.
      for (const auto& r : c_.rules) {
        if (body_state(r, val) != BodyState::Sat) continue;
        int open = 0, unassigned = -1;
        bool sat = false;
        for (int h : r.head) {
          if (val[h] == kTrue) {
            sat = true;
            break;
          }
          if (val[h] == kUnknown) {
            ++open;
            unassigned = h;
          }
        }
        if (sat) continue;
        if (open == 0) return false;
        if (open == 1) {
          val[unassigned] = kTrue;
          changed = true;
        }
      }
      // Support: an atom whose candidate rules are all dead cannot be true
      // in any stable extension of this assignment.
      for (std::size_t a = 0; a < val.size(); ++a) {
        if (val[a] == kFalse) continue;
        bool alive = false;
        for (int ri : c_.head_rules[a])
          if (body_state(c_.rules[ri], val) != BodyState::Dead) {
            alive = true;
            break;
          }
        if (!alive) {
          if (val[a] == kTrue) return false;
          val[a] = kFalse;
          changed = true;
        }
      }
      // Aggregate-free constraints: the body must not become fully satisfied.
      for (const auto& r : c_.constraints) {
        if (r.has_aggs) continue;  // evaluated on total assignments only
        bool dead = false;
        int open = 0;
        int open_pos = -1, open_naf = -1;
        for (int p : r.pos) {
          if (val[p] == kFalse) dead = true;
          if (val[p] == kUnknown) {
            ++open;
            open_pos = p;
          }
        }
        for (int n : r.naf) {
          if (val[n] == kTrue) dead = true;
          if (val[n] == kUnknown) {
            ++open;
            open_naf = n;
          }
        }
        if (dead) continue;
        if (open == 0) return false;  // constraint fires
        if (open == 1) {
          if (open_pos >= 0)
            val[open_pos] = kFalse;
          else
            val[open_naf] = kTrue;
          changed = true;
        }
      }
    }
    return true;
  }

  const Compiled& c_;
  StabilityChecker checker_;
  SolveOptions opts_;
  std::uint64_t decisions_ = 0;
  std::vector<std::vector<int>> models_;
};

}  // namespace

SolveReport solve(const GroundProgram& gp, const SolveOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  Compiled compiled(gp);
  Search search(compiled, options);
  std::vector<std::vector<int>> models = search.run();
  // Universe ids are in textual order, so sorting id vectors
  // lexicographically yields the canonical answer-set order.
  std::sort(models.begin(), models.end());
  if (options.limit && models.size() > *options.limit)
    models.resize(*options.limit);
  SolveReport report;
  for (const auto& m : models) {
    AnswerSet s;
    for (int id : m) s.atoms.push_back(gp.atom_universe[id]);
    report.answer_sets.push_back(std::move(s));
  }
  report.count = report.answer_sets.size();
  report.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

bool check_stability(const GroundProgram& gp,
                     const std::vector<GroundAtom>& candidate) {
  Compiled compiled(gp);
  std::vector<std::int8_t> in(compiled.atom_count(), kFalse);
  for (const auto& a : candidate) {
    int id = compiled.id_of(a);
    if (id < 0) return false;  // outside the universe, never stable
    in[id] = kTrue;
  }
  return StabilityChecker(compiled).is_stable(in);
}

}  // namespace semnav
