#include "semnav/harness.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "semnav/grounder.h"
#include "semnav/parser.h"
#include "semnav/solver.h"

namespace semnav {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

Maneuver parse_maneuver(const std::string& tok, const std::string& context) {
  if (tok == "left") return Maneuver::Left;
  if (tok == "straight") return Maneuver::Straight;
  if (tok == "right") return Maneuver::Right;
  throw ConfigError("bad maneuver '" + tok + "' in " + context);
}

JunctionKind parse_kind(const std::string& tok, const std::string& context) {
  if (tok == "inter") return JunctionKind::Intersection;
  if (tok == "round") return JunctionKind::Roundabout;
  throw ConfigError("bad junction kind '" + tok + "' in " + context);
}

ManeuverPlan parse_oracle_plan(const std::string& value) {
  // space-separated steps, each "index:kind:maneuver"
  ManeuverPlan plan;
  std::istringstream in(value);
  std::string step;
  while (in >> step) {
    auto parts = split(step, ':');
    if (parts.size() != 3)
      throw ConfigError("bad oracle_plan step '" + step +
                        "', expected index:kind:maneuver");
    PlanStep ps;
    ps.index = std::stoi(parts[0]);
    ps.kind = parse_kind(parts[1], "oracle_plan");
    ps.maneuver = parse_maneuver(parts[2], "oracle_plan");
    plan.steps.push_back(ps);
  }
  if (plan.steps.empty()) throw ConfigError("empty oracle_plan");
  return plan;
}

}  // namespace

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file " + path.string());

  ExperimentSpec spec;
  std::optional<std::vector<JunctionSlot>> world_slots;
  std::string default_credential_env = kDefaultCredentialEnv;
  double default_timeout = 30.0;
  double default_temperature = 0.0;
  std::vector<std::pair<std::string, ProviderConfig>> providers;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 'key: value'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == "id") {
      spec.id = value;
    } else if (key == "task") {
      if (value == "constraints")
        spec.task_kind = TaskKind::ConstraintsOnly;
      else if (value == "rules-and-constraints")
        spec.task_kind = TaskKind::RulesAndConstraints;
      else
        throw ConfigError("unknown task '" + value + "' in " + path.string());
    } else if (key == "instruction") {
      spec.instruction_text = value;
    } else if (key == "plan") {
      spec.instruction.directives.clear();
      for (const auto& tok : split(value, ','))
        spec.instruction.directives.push_back(
            parse_maneuver(tok, path.string()));
    } else if (key == "world") {
      std::vector<JunctionSlot> slots;
      for (const auto& tok : split(value, ',')) {
        if (tok == "u")
          slots.push_back({std::nullopt});
        else if (tok == "i")
          slots.push_back({JunctionKind::Intersection});
        else if (tok == "r")
          slots.push_back({JunctionKind::Roundabout});
        else
          throw ConfigError("bad world slot '" + tok + "' in " +
                            path.string() + " (use u, i or r)");
      }
      world_slots = std::move(slots);
    } else if (key == "models") {
      spec.models = split(value, ',');
    } else if (key == "oracle_plan") {
      spec.oracle_plans.push_back(parse_oracle_plan(value));
    } else if (key == "credential_env") {
      default_credential_env = value;
    } else if (key == "timeout_s") {
      default_timeout = std::stod(value);
    } else if (key == "temperature") {
      default_temperature = std::stod(value);
    } else if (key == "provider") {
      std::istringstream fields(value);
      std::string model, endpoint, remote;
      if (!(fields >> model >> endpoint >> remote))
        throw ConfigError("provider needs '<model> <endpoint> <remote-id>' in " +
                          path.string());
      ProviderConfig pc;
      pc.endpoint = endpoint;
      pc.model = remote;
      providers.emplace_back(model, pc);
    } else {
      throw ConfigError("unknown key '" + key + "' in " + path.string() + ":" +
                        std::to_string(lineno));
    }
  }

  if (spec.id.empty()) throw ConfigError("spec is missing 'id'");
  if (spec.instruction_text.empty())
    throw ConfigError("spec is missing 'instruction'");
  if (!world_slots) throw ConfigError("spec is missing 'world'");
  spec.world = RoadWorld(std::move(*world_slots));
  if (spec.models.empty()) throw ConfigError("spec is missing 'models'");
  if (spec.task_kind == TaskKind::ConstraintsOnly) {
    if (spec.instruction.directives.empty())
      throw ConfigError("constraints task needs a 'plan'");
    if (static_cast<int>(spec.instruction.directives.size()) !=
        spec.world.size())
      throw ConfigError("plan length and world size differ in " +
                        path.string());
  } else if (spec.oracle_plans.empty()) {
    throw ConfigError("rules-and-constraints task needs explicit oracle_plan "
                      "lines");
  }
  for (auto& [model, pc] : providers) {
    pc.credential_env = default_credential_env;
    pc.timeout_s = default_timeout;
    pc.temperature = default_temperature;
    spec.providers[model] = pc;
  }
  std::sort(spec.oracle_plans.begin(), spec.oracle_plans.end(), plan_less);
  return spec;
}

std::string prompt_for_spec(const ExperimentSpec& spec) {
  PromptBundle bundle;
  bundle.handbook_text = intrinsic_handbook_text();
  bundle.instruction_text = spec.instruction_text;
  bundle.syntax_guidelines = default_syntax_guidelines();
  bundle.task_kind = spec.task_kind;
  return build_prompt(bundle);
}

namespace {

LlmResponse obtain_response(const ExperimentSpec& spec, const RunSource& source,
                            const std::string& model) {
  if (source.mode == RunSource::Mode::Fixtures)
    return fixture_complete(spec.id, model, source.fixtures_dir);
  auto it = spec.providers.find(model);
  if (it == spec.providers.end())
    throw ConfigError("no provider configured for model '" + model + "'");
  return complete(prompt_for_spec(spec), it->second);
}

/// Assembled program: handbook + sensor facts + generated code, with maxint
/// pinned to the junction count.
Program assemble(const ExperimentSpec& spec, const std::string& code) {
  std::string text = intrinsic_handbook_text() + "\n" +
                     extrinsic_facts_text(spec.world) + "\n" + code;
  return parse_program(text, spec.world.size());
}

ExperimentResult run_one(const ExperimentSpec& spec, const RunSource& source,
                         const std::string& model) {
  ExperimentResult row;
  row.id = spec.id;
  row.model = model;

  std::string code;
  try {
    LlmResponse response = obtain_response(spec, source, model);
    code = extract_code(response);
    Program generated = parse_program(code, spec.world.size());
    if (spec.task_kind == TaskKind::ConstraintsOnly) {
      if (generated.explicit_maxint)
        throw ParseError("the task allows constraints only, got a directive");
      for (const auto& r : generated.rules)
        if (!r.is_constraint())
          throw ParseError(
              "the task allows constraints only, got a rule with a head");
    }
    row.syntax_ok = true;
    row.lines = count_effective_lines(code);
  } catch (const std::exception& e) {
    row.note = e.what();
    return row;  // syntax failure or unavailable response; row stays x/x
  }

  try {
    Program assembled = assemble(spec, code);
    SolveReport report = solve(ground(assembled));
    row.answer_set_count = report.count;
    row.elapsed_s = report.elapsed_s;
    std::vector<ManeuverPlan> oracle =
        spec.task_kind == TaskKind::ConstraintsOnly
            ? enumerate_valid_plans(spec.instruction, spec.world)
            : spec.oracle_plans;
    row.verdict_detail = compare(report, oracle);
    row.semantic_ok = row.verdict_detail.ok;
  } catch (const std::exception& e) {
    row.semantic_ok = false;
    row.note = e.what();
  }
  return row;
}

}  // namespace

ExperimentResult run_id3(const ExperimentSpec& spec, const RunSource& source,
                         const std::string& model) {
  if (spec.task_kind != TaskKind::RulesAndConstraints)
    throw ConfigError("run_id3 needs a rules-and-constraints spec");
  return run_one(spec, source, model);
}

std::vector<ExperimentResult> run_experiment(const ExperimentSpec& spec,
                                             const RunSource& source) {
  if (source.mode == RunSource::Mode::Fixtures &&
      !std::filesystem::is_directory(source.fixtures_dir / spec.id))
    throw ConfigError("fixtures directory " +
                      (source.fixtures_dir / spec.id).string() +
                      " does not exist");
  std::vector<ExperimentResult> results;
  for (const auto& model : spec.models) results.push_back(run_one(spec, source, model));
  return results;
}

namespace {

std::string pad(const std::string& s, std::size_t width,
                std::size_t display_width) {
  std::string out = s;
  for (std::size_t i = display_width; i < width; ++i) out += ' ';
  return out;
}

// The check/cross marks are multi-byte but single-column.
std::size_t display_width(const std::string& s) {
  if (s == "✓" || s == "✗") return 1;
  return s.size();
}

}  // namespace

std::string render_report(const std::vector<ExperimentResult>& results,
                          ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      nlohmann::ordered_json row;
      row["id"] = r.id;
      row["model"] = r.model;
      row["syntax_ok"] = r.syntax_ok;
      row["semantic_ok"] = r.semantic_ok;
      row["lines"] = r.lines ? nlohmann::ordered_json(*r.lines)
                             : nlohmann::ordered_json(nullptr);
      row["answer_set_count"] = r.answer_set_count
                                    ? nlohmann::ordered_json(*r.answer_set_count)
                                    : nlohmann::ordered_json(nullptr);
      row["elapsed_s"] = r.elapsed_s ? nlohmann::ordered_json(*r.elapsed_s)
                                     : nlohmann::ordered_json(nullptr);
      arr.push_back(std::move(row));
    }
    return arr.dump(2);
  }

  std::vector<std::array<std::string, 5>> cells;
  cells.push_back({"ID", "LLM Model", "Syntax", "Semantic", "Lines"});
  for (const auto& r : results) {
    auto mark = [](bool ok) { return ok ? "✓" : "✗"; };
    cells.push_back({r.id, r.model, mark(r.syntax_ok), mark(r.semantic_ok),
                     r.lines ? std::to_string(*r.lines) : "-"});
  }
  std::array<std::size_t, 5> widths{};
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], display_width(row[c]));
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += pad(row[c], widths[c], display_width(row[c]));
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += "\n";
  }
  return out;
}

}  // namespace semnav
