#pragma once

#include <stdexcept>
#include <vector>

#include "semnav/road_world.h"

namespace semnav {

/// Maneuver sequence intended by the experiment author, one directive per
/// junction. This is authored, never derived from natural language here.
struct StructuredInstruction {
  std::vector<Maneuver> directives;
};

struct SemanticVerdict {
  bool ok = false;
  std::vector<ManeuverPlan> missing;   // oracle plans absent from the report
  std::vector<ManeuverPlan> spurious;  // report plans absent from the oracle
};

struct LengthMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Brute force over every kind assignment: a slot contributes its known kind
/// or both kinds when unknown; the maneuver at slot i is directives[i].
/// Deliberately independent of the parse/ground/solve machinery.
std::vector<ManeuverPlan> enumerate_valid_plans(
    const StructuredInstruction& instruction, const RoadWorld& world);

/// Set comparison between the plans extracted from a solve report and the
/// oracle plans. ok requires equality and at least one plan.
SemanticVerdict compare(const SolveReport& report,
                        const std::vector<ManeuverPlan>& oracle_plans);

}  // namespace semnav
