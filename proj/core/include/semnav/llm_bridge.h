#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

namespace semnav {

enum class TaskKind { ConstraintsOnly, RulesAndConstraints };

inline constexpr int kPromptTemplateVersion = 1;
inline constexpr const char* kDefaultCredentialEnv = "SEMNAV_LLM_API_KEY";

struct PromptBundle {
  std::string handbook_text;
  std::string instruction_text;
  std::string syntax_guidelines;
  TaskKind task_kind = TaskKind::ConstraintsOnly;
};

enum class ResponseSource { Live, Fixture };

struct LlmResponse {
  std::string raw_text;  // byte-exact as received or read
  std::string model_name;
  ResponseSource source = ResponseSource::Fixture;
  std::string fixture_path;  // set for fixture responses
};

/// Where and how to reach a chat-completion endpoint. credential_env names
/// the environment variable holding the key; the value itself is never
/// stored or logged.
struct ProviderConfig {
  std::string endpoint;  // e.g. https://api.openai.com/v1/chat/completions
  std::string model;
  std::string credential_env = kDefaultCredentialEnv;
  double timeout_s = 30.0;
  double temperature = 0.0;
};

struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AuthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ProviderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TimeoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FixtureNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyExtraction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Guideline text handed to every model; covers the handling of time
/// variables, the missing '!=' operator and counting via aggregates.
const std::string& default_syntax_guidelines();

/// Renders the versioned prompt template for a bundle. Pure: the same bundle
/// always yields byte-identical text.
std::string build_prompt(const PromptBundle& bundle);

/// One chat-completion round trip. Retries transport-level failures and 5xx
/// up to twice with exponential backoff; 4xx is never retried.
LlmResponse complete(const std::string& prompt, const ProviderConfig& config);

/// Replays a recorded response from <fixtures_dir>/<experiment_id>/<model_name>.txt.
LlmResponse fixture_complete(const std::string& experiment_id,
                             const std::string& model_name,
                             const std::filesystem::path& fixtures_dir);

/// Pulls candidate DLV code out of a response: the contents of all fenced
/// blocks in order when fences are present, otherwise the code-looking lines
/// of the whole text. Either way only lines that end with '.' survive, which
/// keeps the extraction a fixed point of itself.
std::string extract_code(const LlmResponse& response);

}  // namespace semnav
