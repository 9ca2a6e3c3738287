#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semnav/llm_bridge.h"
#include "semnav/plan_oracle.h"
#include "semnav/road_world.h"

namespace semnav {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One experiment row of the validation campaign, loaded from a .spec file.
struct ExperimentSpec {
  std::string id;
  std::string instruction_text;
  StructuredInstruction instruction;  // empty for rules-and-constraints tasks
  RoadWorld world = RoadWorld::all_unknown(1);
  TaskKind task_kind = TaskKind::ConstraintsOnly;
  std::vector<std::string> models;
  std::map<std::string, ProviderConfig> providers;  // live mode only
  std::vector<ManeuverPlan> oracle_plans;  // explicit oracle, detour tasks
};

/// How responses are obtained: replayed from fixtures or requested live.
struct RunSource {
  enum class Mode { Fixtures, Live } mode = Mode::Fixtures;
  std::filesystem::path fixtures_dir = "fixtures";
};

struct ExperimentResult {
  std::string id;
  std::string model;
  bool syntax_ok = false;
  bool semantic_ok = false;
  std::optional<int> lines;  // present iff syntax_ok
  std::optional<std::size_t> answer_set_count;
  std::optional<double> elapsed_s;
  SemanticVerdict verdict_detail;
  std::string note;  // captured failure description, empty when clean
};

/// Line-oriented "key: value" format; '#' starts a comment. Keys: id, task,
/// instruction, plan, world, models, oracle_plan (repeatable), provider
/// (repeatable), credential_env, timeout_s, temperature.
ExperimentSpec load_spec(const std::filesystem::path& path);

/// Full pipeline for every model in the spec: prompt, completion, code
/// extraction, syntax gate, assembly with the handbook and sensor facts,
/// solving, and the oracle comparison. Per-model failures land in the result
/// row; only spec-level problems throw.
std::vector<ExperimentResult> run_experiment(const ExperimentSpec& spec,
                                             const RunSource& source);

/// Single-model pipeline for detour tasks: generated rules may have heads and
/// the verdict is judged against the spec's explicit oracle plans.
ExperimentResult run_id3(const ExperimentSpec& spec, const RunSource& source,
                         const std::string& model);

/// The exact prompt a model would receive for this spec.
std::string prompt_for_spec(const ExperimentSpec& spec);

enum class ReportFormat { Text, Json };

/// Text: aligned table mirroring the validation tables. Json: array of
/// objects with the stable keys id, model, syntax_ok, semantic_ok, lines,
/// answer_set_count, elapsed_s.
std::string render_report(const std::vector<ExperimentResult>& results,
                          ReportFormat format);

}  // namespace semnav
