#include "gridbench/eval.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <thread>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#error "build with CPPHTTPLIB_OPENSSL_SUPPORT so https endpoints work"
#endif
#include "httplib.h"

namespace gridbench {

using nlohmann::json;

std::string_view to_string(RequestTemplate t) {
  return t == RequestTemplate::OpenAIChat ? "openai-chat" : "completion";
}

std::optional<RequestTemplate> parse_request_template(std::string_view s) {
  if (s == "openai-chat") return RequestTemplate::OpenAIChat;
  if (s == "completion") return RequestTemplate::Completion;
  return std::nullopt;
}

ModelClientConfig ModelClientConfig::from_json(const json& j) {
  ModelClientConfig c;
  try {
    if (!j.is_object()) throw ConfigError("client config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      static const std::set<std::string> known{"endpoint",        "path",       "model",
                                               "api_key_env",     "template",   "temperature",
                                               "max_tokens",      "max_concurrency", "timeout_seconds"};
      if (!known.contains(key)) throw ConfigError("unknown client config field '" + key + "'");
    }
    c.endpoint = j.at("endpoint").get<std::string>();
    c.model = j.at("model").get<std::string>();
    c.path = j.value("path", c.path);
    if (j.contains("api_key_env") && !j.at("api_key_env").is_null()) {
      c.api_key_env = j.at("api_key_env").get<std::string>();
    }
    if (j.contains("template")) {
      const auto t = parse_request_template(j.at("template").get<std::string>());
      if (!t) throw ConfigError("unknown request template " + j.at("template").dump());
      c.request_template = *t;
    }
    c.temperature = j.value("temperature", c.temperature);
    c.max_tokens = j.value("max_tokens", c.max_tokens);
    c.max_concurrency = j.value("max_concurrency", c.max_concurrency);
    c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad client config: ") + e.what());
  }
  static const std::regex endpoint_re(R"(^https?://[^/\s:]+(:\d+)?$)");
  if (!std::regex_match(c.endpoint, endpoint_re)) {
    throw ConfigError("endpoint must look like http(s)://host[:port], got '" + c.endpoint + "'");
  }
  if (c.path.empty() || c.path.front() != '/') throw ConfigError("path must start with '/'");
  if (c.max_concurrency < 1) throw ConfigError("max_concurrency must be at least 1");
  if (c.max_tokens < 1) throw ConfigError("max_tokens must be at least 1");
  if (!(c.timeout_seconds > 0)) throw ConfigError("timeout_seconds must be positive");
  if (c.api_key_env && c.api_key_env->empty()) throw ConfigError("api_key_env is empty");
  return c;
}

ModelClientConfig ModelClientConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open client config " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json ModelClientConfig::to_json() const {
  return {{"endpoint", endpoint},
          {"path", path},
          {"model", model},
          {"api_key_env", api_key_env ? json(*api_key_env) : json(nullptr)},
          {"template", gridbench::to_string(request_template)},
          {"temperature", temperature},
          {"max_tokens", max_tokens},
          {"max_concurrency", max_concurrency},
          {"timeout_seconds", timeout_seconds}};
}

json request_body(const ModelClientConfig& c, const std::string& prompt) {
  json body{{"model", c.model}, {"temperature", c.temperature}, {"max_tokens", c.max_tokens}};
  if (c.request_template == RequestTemplate::OpenAIChat) {
    body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
  } else {
    body["prompt"] = prompt;
  }
  return body;
}

std::string completion_text(const ModelClientConfig& c, const json& response) {
  try {
    const json& choice = response.at("choices").at(0);
    if (c.request_template == RequestTemplate::OpenAIChat) return choice.at("message").at("content").get<std::string>();
    return choice.at("text").get<std::string>();
  } catch (const json::exception& e) {
    throw RequestError(std::string("unexpected response shape: ") + e.what());
  }
}

HttpBackend::HttpBackend(ModelClientConfig config) : config_(std::move(config)) {
  if (config_.api_key_env) {
    const char* value = std::getenv(config_.api_key_env->c_str());
    if (value == nullptr || *value == '\0') {
      throw ConfigError("environment variable " + *config_.api_key_env + " is not set");
    }
    api_key_ = value;
  }
}

std::string HttpBackend::complete(const std::string& prompt) {
  // httplib clients are not shared across threads; one per request keeps
  // workers independent.
  httplib::Client client(config_.endpoint);
  const double whole = std::floor(config_.timeout_seconds);
  const auto sec = static_cast<time_t>(whole);
  const auto usec = static_cast<time_t>((config_.timeout_seconds - whole) * 1e6);
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  const auto res = client.Post(config_.path, headers, request_body(config_, prompt).dump(), "application/json");
  if (!res) throw RequestError("request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw RequestError("HTTP status " + std::to_string(res->status));
  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw RequestError(std::string("response is not JSON: ") + e.what());
  }
  return completion_text(config_, body);
}

std::vector<Generation> run_eval(std::span<const TaskRecord> records, CompletionBackend& backend,
                                 int max_concurrency) {
  if (max_concurrency < 1) throw ConfigError("max_concurrency must be at least 1");
  std::vector<Generation> out(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      Generation& g = out[i];
      g.id = records[i].id;
      try {
        g.text = backend.complete(records[i].prompt);
      } catch (const std::exception& e) {
        g.error = e.what();
      }
    }
  };
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(max_concurrency), records.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  return out;
}

std::vector<Generation> run_eval(std::span<const TaskRecord> records, const ModelClientConfig& config) {
  HttpBackend backend(config);
  return run_eval(records, backend, config.max_concurrency);
}

}  // namespace gridbench
