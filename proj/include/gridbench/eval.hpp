#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gridbench/scoring.hpp"
#include "gridbench/task.hpp"

namespace gridbench {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RequestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RequestTemplate { OpenAIChat, Completion };

std::string_view to_string(RequestTemplate t);
std::optional<RequestTemplate> parse_request_template(std::string_view s);

// The credential itself is never stored here, only the name of the
// environment variable that holds it.
struct ModelClientConfig {
  std::string endpoint;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model;
  std::optional<std::string> api_key_env;
  RequestTemplate request_template = RequestTemplate::OpenAIChat;
  double temperature = 0.0;
  int max_tokens = 1024;
  int max_concurrency = 4;
  double timeout_seconds = 60.0;

  // Throws ConfigError on missing or out-of-range fields.
  static ModelClientConfig from_json(const nlohmann::json& j);
  static ModelClientConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

nlohmann::json request_body(const ModelClientConfig& config, const std::string& prompt);
// Throws RequestError when the response has no completion text.
std::string completion_text(const ModelClientConfig& config, const nlohmann::json& response);

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  // Must be safe to call from several threads. Throws on failure.
  virtual std::string complete(const std::string& prompt) = 0;
};

class HttpBackend : public CompletionBackend {
 public:
  // Reads the credential from the configured environment variable; throws
  // ConfigError when it is named but unset.
  explicit HttpBackend(ModelClientConfig config);
  std::string complete(const std::string& prompt) override;

 private:
  ModelClientConfig config_;
  std::string api_key_;
};

// One generation per record, in dataset order, with at most
// `max_concurrency` requests in flight. Failed requests become error
// markers.
std::vector<Generation> run_eval(std::span<const TaskRecord> records, CompletionBackend& backend,
                                 int max_concurrency);
std::vector<Generation> run_eval(std::span<const TaskRecord> records, const ModelClientConfig& config);

}  // namespace gridbench
