#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "semnav/grounder.h"

namespace semnav {

/// A stable model: minimal model of the Gelfond-Lifschitz reduct of the
/// non-constraint rules that also satisfies every integrity constraint.
struct AnswerSet {
  std::vector<GroundAtom> atoms;  // sorted textually

  bool contains(const GroundAtom& a) const;

  friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

struct SolveReport {
  std::vector<AnswerSet> answer_sets;  // canonical order: lexicographic on
                                       // the sorted atom-text lists
  std::size_t count = 0;
  double elapsed_s = 0.0;
};

struct SolveOptions {
  std::optional<std::size_t> limit;  // keep only the first N canonical sets
  std::uint64_t node_budget = 10'000'000;
};

struct ResourceExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumerates all answer sets of a ground program.
SolveReport solve(const GroundProgram& gp, const SolveOptions& options = {});

/// Reference test for a single candidate, implemented independently of the
/// search in solve(): builds the reduct and looks for a strictly smaller
/// model by exhaustive subset search. Atoms outside the program's universe
/// can never be stable, so such candidates yield false.
bool check_stability(const GroundProgram& gp,
                     const std::vector<GroundAtom>& candidate);

}  // namespace semnav
