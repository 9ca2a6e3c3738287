#include "semnav/llm_bridge.h"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace semnav::detail {
extern const char* const kPromptTemplateText;
}

namespace semnav {

namespace {

constexpr const char* kSystemMessage =
    "You are a careful knowledge engineer for autonomous-vehicle navigation.";

constexpr int kMaxRetries = 2;

const char* task_clause(TaskKind kind) {
  switch (kind) {
    case TaskKind::ConstraintsOnly:
      return "Translate the navigation instruction into DLV integrity "
             "constraints that, added to the handbook, keep exactly the "
             "answer sets matching the intended maneuver sequence. Emit "
             "constraints only: every statement must be head-less.";
    case TaskKind::RulesAndConstraints:
      return "Translate the navigation instruction into DLV code. The road "
             "may have changed since the instruction was given, so prepare a "
             "new program including new rules to handle the detour, together "
             "with the constraints enforcing the instruction.";
  }
  return "";
}

std::string replace_all(std::string text, const std::string& from,
                        const std::string& to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

bool looks_like_code(const std::string& trimmed) {
  if (trimmed.empty() || trimmed.back() != '.') return false;
  char c = trimmed.front();
  return (c >= 'a' && c <= 'z') || c == ':' || c == '#';
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\f\v");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\f\v");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

const std::string& default_syntax_guidelines() {
  static const std::string text =
      "Mind the handling of time variables: junctions are visited at integer "
      "time steps 1..N and every maneuver atom carries its time step, so "
      "ordering is expressed by comparing those steps.\n"
      "Mind the absence of a direct != operator in this dialect: rewrite "
      "inequalities with the ordered comparisons <, <=, > and >=.\n"
      "Rely on the use of aggregate constraints for counting events, e.g. "
      "\":- #count{T : cross_left(T)} = 0.\" rejects every model without a "
      "left turn.";
  return text;
}

std::string build_prompt(const PromptBundle& bundle) {
  std::string out = detail::kPromptTemplateText;
  out = replace_all(out, "{{HANDBOOK}}", bundle.handbook_text);
  out = replace_all(out, "{{TASK}}", task_clause(bundle.task_kind));
  out = replace_all(out, "{{INSTRUCTION}}", bundle.instruction_text);
  out = replace_all(out, "{{GUIDELINES}}", bundle.syntax_guidelines);
  return out;
}

LlmResponse complete(const std::string& prompt, const ProviderConfig& config) {
  const char* key = std::getenv(config.credential_env.c_str());
  if (!key || !*key)
    throw AuthError("credential environment variable '" +
                    config.credential_env + "' is not set");

  auto scheme_end = config.endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw std::invalid_argument("endpoint URL must include a scheme: " +
                                config.endpoint);
  auto path_start = config.endpoint.find('/', scheme_end + 3);
  std::string base = path_start == std::string::npos
                         ? config.endpoint
                         : config.endpoint.substr(0, path_start);
  std::string path =
      path_start == std::string::npos ? "/" : config.endpoint.substr(path_start);

  nlohmann::json body = {
      {"model", config.model},
      {"messages",
       {{{"role", "system"}, {"content", kSystemMessage}},
        {{"role", "user"}, {"content", prompt}}}},
      {"temperature", config.temperature},
  };
  httplib::Headers headers = {
      {"Authorization", std::string("Bearer ") + key}};

  std::string last_error;
  bool timed_out = false;
  int last_status = 0;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(200 << attempt));
    httplib::Client cli(base);
    auto secs = static_cast<time_t>(config.timeout_s);
    auto usecs = static_cast<time_t>((config.timeout_s - double(secs)) * 1e6);
    cli.set_connection_timeout(secs, usecs);
    cli.set_read_timeout(secs, usecs);
    cli.set_write_timeout(secs, usecs);
    auto res = cli.Post(path, headers, body.dump(), "application/json");
    if (!res) {
      timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                  res.error() == httplib::Error::Read;
      last_error = httplib::to_string(res.error());
      last_status = 0;
      continue;
    }
    if (res->status >= 200 && res->status < 300) {
      try {
        auto j = nlohmann::json::parse(res->body);
        LlmResponse out;
        out.raw_text = j.at("choices").at(0).at("message").at("content");
        out.model_name = config.model;
        out.source = ResponseSource::Live;
        return out;
      } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("malformed completion response: ") +
                            e.what());
      }
    }
    if (res->status >= 400 && res->status < 500)
      throw AuthError("provider rejected the request with HTTP " +
                      std::to_string(res->status));
    last_status = res->status;
    last_error = "HTTP " + std::to_string(res->status);
  }
  if (last_status >= 500)
    throw ProviderError("provider kept failing after " +
                        std::to_string(kMaxRetries + 1) + " attempts: " +
                        last_error);
  if (timed_out)
    throw TimeoutError("request to " + base + " timed out: " + last_error);
  throw TransportError("could not reach " + base + ": " + last_error);
}

LlmResponse fixture_complete(const std::string& experiment_id,
                             const std::string& model_name,
                             const std::filesystem::path& fixtures_dir) {
  std::filesystem::path path =
      fixtures_dir / experiment_id / (model_name + ".txt");
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FixtureNotFound("no fixture at " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  LlmResponse out;
  out.raw_text = buffer.str();
  out.model_name = model_name;
  out.source = ResponseSource::Fixture;
  out.fixture_path = path.string();
  return out;
}

std::string extract_code(const LlmResponse& response) {
  std::vector<std::string> lines = split_lines(response.raw_text);
  std::vector<std::string> region;
  bool in_fence = false;
  bool saw_fence = false;
  for (const auto& raw : lines) {
    std::string t = trim(raw);
    if (t.rfind("```", 0) == 0) {
      in_fence = !in_fence;
      saw_fence = true;
      continue;
    }
    if (in_fence) region.push_back(raw);
  }
  if (!saw_fence) region = lines;

  std::string out;
  for (const auto& raw : region) {
    std::string t = trim(raw);
    if (!looks_like_code(t)) continue;
    if (!out.empty()) out += "\n";
    out += t;
  }
  if (out.empty())
    throw EmptyExtraction("no DLV code found in the response of " +
                          response.model_name);
  return out;
}

}  // namespace semnav
