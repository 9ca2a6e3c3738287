#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "semnav/grounder.h"
#include "semnav/harness.h"
#include "semnav/parser.h"
#include "semnav/plan_oracle.h"
#include "semnav/road_world.h"
#include "semnav/solver.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSyntax = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string read_files(const std::vector<std::string>& paths) {
  std::string out;
  for (const auto& p : paths) {
    out += read_file(p);
    if (!out.empty() && out.back() != '\n') out += "\n";
  }
  return out;
}

std::optional<long> opt_maxint(long value, bool set) {
  if (!set) return std::nullopt;
  return value;
}

int cmd_parse(const std::string& path) {
  std::string text = read_file(path);
  semnav::Program p;
  try {
    p = semnav::parse_program(text);
  } catch (const semnav::ParseError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kExitSyntax;
  }
  std::size_t facts = 0, constraints = 0, disjunctive = 0;
  for (const auto& r : p.rules) {
    if (r.is_fact()) ++facts;
    if (r.is_constraint()) ++constraints;
    if (r.head.size() > 1) ++disjunctive;
  }
  std::cout << path << ": " << p.rules.size() << " rule(s) (" << facts
            << " fact(s), " << constraints << " constraint(s), " << disjunctive
            << " disjunctive), maxint=" << p.maxint << "\n";
  for (std::size_t i = 0; i < p.rules.size(); ++i)
    std::cout << "  [" << i << "] line " << p.rules[i].line << ": "
              << semnav::to_string(p.rules[i]) << "\n";
  return kExitOk;
}

int cmd_ground(const std::vector<std::string>& paths, long maxint,
               bool maxint_set) {
  std::string text = read_files(paths);
  try {
    semnav::Program p =
        semnav::parse_program(text, opt_maxint(maxint, maxint_set));
    semnav::GroundProgram gp = semnav::ground(p);
    std::cout << semnav::print_ground_program(gp) << "\n";
  } catch (const semnav::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitSyntax;
  } catch (const semnav::DomainOverflow& e) {
    std::cerr << e.what() << "\n";
    return kExitResource;
  }
  return kExitOk;
}

int cmd_solve(const std::vector<std::string>& paths, long maxint,
              bool maxint_set, long limit, bool limit_set, bool json) {
  std::string text = read_files(paths);
  try {
    semnav::Program p =
        semnav::parse_program(text, opt_maxint(maxint, maxint_set));
    semnav::SolveOptions opts;
    if (limit_set) opts.limit = static_cast<std::size_t>(limit);
    semnav::SolveReport report = semnav::solve(semnav::ground(p), opts);
    if (json) {
      nlohmann::ordered_json j;
      j["count"] = report.count;
      auto sets = nlohmann::ordered_json::array();
      for (const auto& s : report.answer_sets) {
        auto atoms = nlohmann::ordered_json::array();
        for (const auto& a : s.atoms) atoms.push_back(semnav::to_string(a));
        sets.push_back(std::move(atoms));
      }
      j["answer_sets"] = std::move(sets);
      j["elapsed_s"] = report.elapsed_s;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "count: " << report.count << "\n";
      for (const auto& s : report.answer_sets) {
        std::cout << "{";
        for (std::size_t i = 0; i < s.atoms.size(); ++i) {
          if (i) std::cout << ", ";
          std::cout << semnav::to_string(s.atoms[i]);
        }
        std::cout << "}\n";
      }
      std::cout << "elapsed_s: " << report.elapsed_s << "\n";
    }
  } catch (const semnav::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitSyntax;
  } catch (const semnav::DomainOverflow& e) {
    std::cerr << e.what() << "\n";
    return kExitResource;
  } catch (const semnav::ResourceExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitResource;
  }
  return kExitOk;
}

int cmd_gen_facts(int junctions, const std::string& kinds) {
  std::vector<semnav::JunctionSlot> slots;
  if (!kinds.empty()) {
    std::istringstream in(kinds);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok == "u")
        slots.push_back({std::nullopt});
      else if (tok == "i")
        slots.push_back({semnav::JunctionKind::Intersection});
      else if (tok == "r")
        slots.push_back({semnav::JunctionKind::Roundabout});
      else {
        std::cerr << "bad kind '" << tok << "', use u, i or r\n";
        return kExitUsage;
      }
    }
    if (junctions != 0 && junctions != static_cast<int>(slots.size())) {
      std::cerr << "--junctions disagrees with the number of --kinds entries\n";
      return kExitUsage;
    }
  } else {
    if (junctions <= 0) {
      std::cerr << "--junctions must be positive\n";
      return kExitUsage;
    }
    slots.assign(static_cast<std::size_t>(junctions), {std::nullopt});
  }
  try {
    semnav::RoadWorld world(std::move(slots));
    std::cout << semnav::extrinsic_facts_text(world);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_run(const std::string& spec_path, const std::string& fixtures,
            bool live, bool json) {
  try {
    semnav::ExperimentSpec spec = semnav::load_spec(spec_path);
    semnav::RunSource source;
    if (live) {
      source.mode = semnav::RunSource::Mode::Live;
    } else {
      source.mode = semnav::RunSource::Mode::Fixtures;
      source.fixtures_dir = fixtures;
    }
    auto results = semnav::run_experiment(spec, source);
    std::cout << semnav::render_report(
        results, json ? semnav::ReportFormat::Json : semnav::ReportFormat::Text);
    if (json) std::cout << "\n";
  } catch (const semnav::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_gen_prompt(const std::string& spec_path, const std::string& model) {
  try {
    semnav::ExperimentSpec spec = semnav::load_spec(spec_path);
    if (std::find(spec.models.begin(), spec.models.end(), model) ==
        spec.models.end()) {
      std::cerr << "model '" << model << "' is not listed in " << spec_path
                << "\n";
      return kExitUsage;
    }
    std::cout << semnav::prompt_for_spec(spec);
  } catch (const semnav::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Answer-set navigation engine and experiment harness"};
  app.require_subcommand(1);

  std::string parse_file;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a program and summarize its AST");
  parse_cmd->add_option("file", parse_file, "program file")->required();

  std::vector<std::string> ground_files;
  long ground_maxint = 0;
  auto* ground_cmd = app.add_subcommand("ground", "Print the canonical ground program");
  ground_cmd->add_option("files", ground_files, "program files")->required();
  auto* ground_maxint_opt = ground_cmd->add_option("--maxint", ground_maxint, "integer domain bound");

  std::vector<std::string> solve_files;
  long solve_maxint = 0;
  long solve_limit = 0;
  bool solve_json = false;
  auto* solve_cmd = app.add_subcommand("solve", "Enumerate answer sets");
  solve_cmd->add_option("files", solve_files, "program files")->required();
  auto* solve_maxint_opt = solve_cmd->add_option("--maxint", solve_maxint, "integer domain bound");
  auto* solve_limit_opt = solve_cmd->add_option("--limit", solve_limit, "keep only the first N canonical sets")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--json", solve_json, "emit the report as JSON");

  int gen_junctions = 0;
  std::string gen_kinds;
  auto* gen_cmd = app.add_subcommand("gen-facts", "Print sensor facts for a junction sequence");
  gen_cmd->add_option("--junctions", gen_junctions, "number of junctions");
  gen_cmd->add_option("--kinds", gen_kinds, "comma list of u|i|r per junction");

  std::string run_spec;
  std::string run_fixtures = "fixtures";
  bool run_live = false;
  bool run_json = false;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment end to end");
  run_cmd->add_option("spec", run_spec, "experiment spec file")->required();
  run_cmd->add_option("--fixtures", run_fixtures, "fixtures directory (default: fixtures)");
  run_cmd->add_flag("--live", run_live, "query the configured providers instead of fixtures");
  run_cmd->add_flag("--json", run_json, "emit the report as JSON");

  std::string prompt_spec;
  std::string prompt_model;
  auto* prompt_cmd = app.add_subcommand("gen-prompt", "Print the exact prompt for a spec");
  prompt_cmd->add_option("spec", prompt_spec, "experiment spec file")->required();
  prompt_cmd->add_option("--model", prompt_model, "model name listed in the spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);       // prints help or the usage message
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*parse_cmd) return cmd_parse(parse_file);
    if (*ground_cmd)
      return cmd_ground(ground_files, ground_maxint, ground_maxint_opt->count() > 0);
    if (*solve_cmd)
      return cmd_solve(solve_files, solve_maxint, solve_maxint_opt->count() > 0,
                       solve_limit, solve_limit_opt->count() > 0, solve_json);
    if (*gen_cmd) return cmd_gen_facts(gen_junctions, gen_kinds);
    if (*run_cmd) return cmd_run(run_spec, run_fixtures, run_live, run_json);
    if (*prompt_cmd) return cmd_gen_prompt(prompt_spec, prompt_model);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
