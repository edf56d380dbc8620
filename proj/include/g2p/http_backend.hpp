// Copyright (c) 2026 The g2pkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef G2P_HTTP_BACKEND_HPP_
#define G2P_HTTP_BACKEND_HPP_

#include <cstdlib>
#include <semaphore>
#include <string>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "g2p/errors.hpp"
#include "g2p/llm.hpp"

namespace g2p {

struct HttpBackendOptions {
  // Scheme + host (+ port), e.g. "https://api.openai.com" or
  // "http://127.0.0.1:8089".
  std::string base_url;
  std::string request_path = "/v1/chat/completions";
  // Name of the environment variable holding the bearer token. The token
  // itself never appears in config files.
  std::string api_key_env = "G2P_API_KEY";
  int timeout_sec = 60;
  int concurrency_cap = 4;
};

// Chat-completions client. Sends {model, messages, temperature, max_tokens}
// and returns choices[0].message.content. In-flight requests are capped by
// a semaphore so the backend can be shared across threads.
class HttpBackend final : public LlmBackend {
 public:
  explicit HttpBackend(HttpBackendOptions options)
      : options_(std::move(options)),
        semaphore_(std::max(1, options_.concurrency_cap)) {
    if (options_.base_url.empty()) {
      throw ConfigError("http backend requires a base_url");
    }
    if (const char* key = std::getenv(options_.api_key_env.c_str())) {
      api_key_ = key;
    }
  }

  std::string complete(const LlmRequest& request) override {
    semaphore_.acquire();
    struct Release {
      std::counting_semaphore<>& s;
      ~Release() { s.release(); }
    } release{semaphore_};

    nlohmann::json body;
    body["model"] = request.model_id;
    body["messages"] = nlohmann::json::array();
    for (const auto& m : request.messages) {
      body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    }
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_output_tokens;

    httplib::Client client(options_.base_url);
    client.set_connection_timeout(options_.timeout_sec);
    client.set_read_timeout(options_.timeout_sec);
    client.set_write_timeout(options_.timeout_sec);

    httplib::Headers headers;
    if (!api_key_.empty()) {
      headers.emplace("Authorization", "Bearer " + api_key_);
    }

    auto result = client.Post(options_.request_path, headers, body.dump(),
                              "application/json");
    if (!result) {
      throw TransportError("http backend: " + httplib::to_string(result.error()));
    }
    if (result->status < 200 || result->status >= 300) {
      std::string snippet = result->body.substr(0, 200);
      throw TransportError("http backend: status " +
                           std::to_string(result->status) + ": " + snippet);
    }

    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::exception& e) {
      throw BadResponse(std::string("http backend: body is not JSON: ") +
                        e.what());
    }
    if (!doc.contains("choices") || !doc["choices"].is_array() ||
        doc["choices"].empty()) {
      throw BadResponse("http backend: response has no choices");
    }
    const auto& first = doc["choices"][0];
    if (!first.contains("message") || !first["message"].contains("content") ||
        !first["message"]["content"].is_string()) {
      throw BadResponse("http backend: choice has no message content");
    }
    return first["message"]["content"].get<std::string>();
  }

  std::string name() const override { return "http"; }

 private:
  HttpBackendOptions options_;
  std::string api_key_;
  std::counting_semaphore<> semaphore_;
};

}  // namespace g2p

#endif  // G2P_HTTP_BACKEND_HPP_
