#include "semnav/plan_oracle.h"

#include <algorithm>
#include <set>

namespace semnav {

std::vector<ManeuverPlan> enumerate_valid_plans(
    const StructuredInstruction& instruction, const RoadWorld& world) {
  if (static_cast<int>(instruction.directives.size()) != world.size())
    throw LengthMismatch(
        "instruction has " + std::to_string(instruction.directives.size()) +
        " directives but the world has " + std::to_string(world.size()) +
        " junctions");
  std::vector<ManeuverPlan> plans;
  ManeuverPlan partial;
  auto expand = [&](auto&& self, int i) -> void {
    if (i == world.size()) {
      plans.push_back(partial);
      return;
    }
    const JunctionSlot& slot = world.slots()[i];
    std::vector<JunctionKind> kinds;
    if (slot.known())
      kinds = {*slot.kind};
    else
      kinds = {JunctionKind::Intersection, JunctionKind::Roundabout};
    for (JunctionKind k : kinds) {
      partial.steps.push_back(
          PlanStep{i + 1, k, instruction.directives[static_cast<std::size_t>(i)]});
      self(self, i + 1);
      partial.steps.pop_back();
    }
  };
  expand(expand, 0);
  std::sort(plans.begin(), plans.end(), plan_less);
  return plans;
}

SemanticVerdict compare(const SolveReport& report,
                        const std::vector<ManeuverPlan>& oracle_plans) {
  auto key = [](const ManeuverPlan& p) { return to_string(p); };
  std::set<std::string> actual_keys;
  std::vector<ManeuverPlan> actual;
  for (const auto& s : report.answer_sets) {
    ManeuverPlan p = extract_plan(s);  // may raise MalformedModel
    if (actual_keys.insert(key(p)).second) actual.push_back(p);
  }
  std::set<std::string> oracle_keys;
  for (const auto& p : oracle_plans) oracle_keys.insert(key(p));

  SemanticVerdict verdict;
  for (const auto& p : oracle_plans)
    if (!actual_keys.count(key(p))) verdict.missing.push_back(p);
  for (const auto& p : actual)
    if (!oracle_keys.count(key(p))) verdict.spurious.push_back(p);
  std::sort(verdict.missing.begin(), verdict.missing.end(), plan_less);
  std::sort(verdict.spurious.begin(), verdict.spurious.end(), plan_less);
  verdict.ok = verdict.missing.empty() && verdict.spurious.empty() &&
               !oracle_plans.empty() && !actual.empty();
  return verdict;
}

}  // namespace semnav
