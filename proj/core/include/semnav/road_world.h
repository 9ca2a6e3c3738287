#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semnav/ast.h"
#include "semnav/solver.h"

namespace semnav {

enum class JunctionKind { Intersection, Roundabout };

/// Roundabouts in this world always have four exits (right-hand traffic).
inline constexpr int kRoundaboutExits = 4;

enum class Maneuver { Left, Straight, Right };

std::string to_string(JunctionKind k);  // "inter" | "round"
std::string to_string(Maneuver m);      // "left" | "straight" | "right"

/// One junction along the route; nullopt kind = not yet detected.
struct JunctionSlot {
  std::optional<JunctionKind> kind;

  bool known() const { return kind.has_value(); }

  friend bool operator==(const JunctionSlot&, const JunctionSlot&) = default;
};

/// Ordered junction sequence, indexed 1..size().
class RoadWorld {
 public:
  explicit RoadWorld(std::vector<JunctionSlot> slots);

  static RoadWorld all_unknown(int n);

  const std::vector<JunctionSlot>& slots() const { return slots_; }
  int size() const { return static_cast<int>(slots_.size()); }

  friend bool operator==(const RoadWorld&, const RoadWorld&) = default;

 private:
  std::vector<JunctionSlot> slots_;
};

struct PlanStep {
  int index = 0;  // 1-based junction ordinal
  JunctionKind kind = JunctionKind::Intersection;
  Maneuver maneuver = Maneuver::Straight;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

/// Per-junction (kind, maneuver) assignment, indices ascending.
struct ManeuverPlan {
  std::vector<PlanStep> steps;

  friend bool operator==(const ManeuverPlan&, const ManeuverPlan&) = default;
};

std::string to_string(const ManeuverPlan& p);
bool plan_less(const ManeuverPlan& a, const ManeuverPlan& b);

/// Raised by extract_plan when an answer set lacks the exactly-one maneuver
/// or exactly-one kind property for some junction; this signals a handbook
/// or constraint bug rather than a bad model.
struct MalformedModel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sensor facts for a world: junction(i) per slot, then known_inter(i) /
/// known_round(i) / unknown_kind(i) per slot.
Program emit_extrinsic_facts(const RoadWorld& world);
std::string extrinsic_facts_text(const RoadWorld& world);

/// The fixed, instruction-independent handbook of driving rules, embedded as
/// a versioned resource.
const std::string& intrinsic_handbook_text();
Program intrinsic_handbook();

/// Reads the (kind, maneuver) assignment of every junction(i) atom in the
/// answer set.
ManeuverPlan extract_plan(const AnswerSet& answer_set);

}  // namespace semnav
