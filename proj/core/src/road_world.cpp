#include "semnav/road_world.h"

#include <algorithm>
#include <map>

#include "semnav/parser.h"

namespace semnav::detail {
extern const char* const kHandbookText;
}

namespace semnav {

std::string to_string(JunctionKind k) {
  return k == JunctionKind::Intersection ? "inter" : "round";
}

std::string to_string(Maneuver m) {
  switch (m) {
    case Maneuver::Left: return "left";
    case Maneuver::Straight: return "straight";
    case Maneuver::Right: return "right";
  }
  return {};
}

RoadWorld::RoadWorld(std::vector<JunctionSlot> slots)
    : slots_(std::move(slots)) {
  if (slots_.empty())
    throw std::invalid_argument("a road world needs at least one junction");
}

RoadWorld RoadWorld::all_unknown(int n) {
  return RoadWorld(std::vector<JunctionSlot>(static_cast<std::size_t>(n)));
}

std::string to_string(const ManeuverPlan& p) {
  std::string out;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    if (i) out += " ";
    const PlanStep& s = p.steps[i];
    out += std::to_string(s.index) + ":" + to_string(s.kind) + ":" +
           to_string(s.maneuver);
  }
  return out;
}

bool plan_less(const ManeuverPlan& a, const ManeuverPlan& b) {
  return to_string(a) < to_string(b);
}

std::string extrinsic_facts_text(const RoadWorld& world) {
  std::string out;
  for (int i = 1; i <= world.size(); ++i)
    out += "junction(" + std::to_string(i) + ").\n";
  for (int i = 1; i <= world.size(); ++i) {
    const JunctionSlot& slot = world.slots()[i - 1];
    if (!slot.known())
      out += "unknown_kind(" + std::to_string(i) + ").\n";
    else if (*slot.kind == JunctionKind::Intersection)
      out += "known_inter(" + std::to_string(i) + ").\n";
    else
      out += "known_round(" + std::to_string(i) + ").\n";
  }
  return out;
}

Program emit_extrinsic_facts(const RoadWorld& world) {
  return parse_program(extrinsic_facts_text(world));
}

const std::string& intrinsic_handbook_text() {
  static const std::string text = detail::kHandbookText;
  return text;
}

Program intrinsic_handbook() { return parse_program(intrinsic_handbook_text()); }

namespace {

std::optional<long> single_index_arg(const GroundAtom& a) {
  if (a.args.size() != 1 || a.args[0].kind != TermKind::Integer)
    return std::nullopt;
  return a.args[0].value;
}

}  // namespace

ManeuverPlan extract_plan(const AnswerSet& answer_set) {
  std::map<long, PlanStep> steps;
  std::map<long, int> maneuvers_seen;
  std::map<long, int> kinds_seen;
  for (const auto& atom : answer_set.atoms) {
    if (atom.predicate == "junction") {
      if (auto i = single_index_arg(atom))
        steps.emplace(*i, PlanStep{static_cast<int>(*i), {}, {}});
    }
  }
  if (steps.empty())
    throw MalformedModel("answer set contains no junction atoms");
  for (const auto& atom : answer_set.atoms) {
    auto i = single_index_arg(atom);
    if (!i) continue;
    auto it = steps.find(*i);
    if (it == steps.end()) continue;
    if (atom.predicate == "cross_left" || atom.predicate == "cross_straight" ||
        atom.predicate == "cross_right") {
      ++maneuvers_seen[*i];
      it->second.maneuver = atom.predicate == "cross_left" ? Maneuver::Left
                            : atom.predicate == "cross_straight"
                                ? Maneuver::Straight
                                : Maneuver::Right;
    } else if (atom.predicate == "inter" || atom.predicate == "round") {
      ++kinds_seen[*i];
      it->second.kind = atom.predicate == "inter" ? JunctionKind::Intersection
                                                  : JunctionKind::Roundabout;
    }
  }
  ManeuverPlan plan;
  for (auto& [index, step] : steps) {
    if (maneuvers_seen[index] != 1)
      throw MalformedModel("junction " + std::to_string(index) + " has " +
                           std::to_string(maneuvers_seen[index]) +
                           " maneuver atoms, expected exactly one");
    if (kinds_seen[index] != 1)
      throw MalformedModel("junction " + std::to_string(index) + " has " +
                           std::to_string(kinds_seen[index]) +
                           " kind atoms, expected exactly one");
    plan.steps.push_back(step);
  }
  return plan;
}

}  // namespace semnav
