// Copyright 2026 The gridloc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fmt/format.h>

#include <chrono>
#include <cstdlib>

#include "gridloc/digest.h"
#include "gridloc/image_io.h"
#include "gridloc/model_client.h"
#include "httplib.h"
#include "json.hpp"

namespace gridloc {
namespace {

using json = nlohmann::json;

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // base path without trailing slash
};

SplitUrl SplitEndpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kConfig, "endpoint must be an absolute http(s) URL: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.origin = url.substr(0, path_start);
  out.path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

}  // namespace

LiveBackend::LiveBackend(LiveOptions options) : options_(std::move(options)) {
  SplitEndpoint(options_.endpoint);
  if (options_.model.empty()) throw Error(ErrorCode::kConfig, "live backend needs a model name");
}

std::string LiveBackend::identity() const {
  return fmt::format("live({};{};{};temperature={};max_tokens={})",
                     ProviderName(options_.provider), options_.endpoint, options_.model,
                     options_.temperature, options_.max_tokens);
}

std::string LiveBackend::RequestBody(const ImageBuffer& image, const std::string& prompt) const {
  const std::string b64 = Base64Encode(EncodePng(image));
  json body;
  body["model"] = options_.model;
  body["max_tokens"] = options_.max_tokens;
  body["temperature"] = options_.temperature;
  if (options_.provider == Provider::kAnthropic) {
    body["messages"] = json::array(
        {{{"role", "user"},
          {"content",
           json::array({{{"type", "image"},
                         {"source",
                          {{"type", "base64"}, {"media_type", "image/png"}, {"data", b64}}}},
                        {{"type", "text"}, {"text", prompt}}})}}});
  } else {
    body["messages"] = json::array(
        {{{"role", "user"},
          {"content", json::array({{{"type", "text"}, {"text", prompt}},
                                   {{"type", "image_url"},
                                    {"image_url", {{"url", "data:image/png;base64," + b64}}}}})}}});
  }
  return body.dump();
}

std::string LiveBackend::ExtractText(const std::string& response_body) const {
  try {
    const json j = json::parse(response_body);
    if (options_.provider == Provider::kAnthropic) {
      std::string text;
      for (const auto& part : j.at("content")) {
        if (part.value("type", "") == "text") text += part.at("text").get<std::string>();
      }
      return text;
    }
    const json& content = j.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
    std::string text;
    for (const auto& part : content) {
      if (part.value("type", "") == "text") text += part.at("text").get<std::string>();
    }
    return text;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kPermanent, std::string("unreadable model response: ") + e.what());
  }
}

QueryRecord LiveBackend::Query(const QueryRequest& request) {
  const char* key = std::getenv(options_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorCode::kAuth,
                "environment variable " + options_.api_key_env + " holds no API key");
  }
  const SplitUrl url = SplitEndpoint(options_.endpoint);
  httplib::Client client(url.origin);
  const auto timeout = options_.timeout.count();
  client.set_connection_timeout(timeout, 0);
  client.set_read_timeout(timeout, 0);
  client.set_write_timeout(timeout, 0);

  httplib::Headers headers;
  std::string route;
  if (options_.provider == Provider::kAnthropic) {
    headers.emplace("x-api-key", key);
    headers.emplace("anthropic-version", "2023-06-01");
    route = url.path + "/messages";
  } else {
    headers.emplace("Authorization", std::string("Bearer ") + key);
    route = url.path + "/chat/completions";
  }

  const std::string body = RequestBody(*request.image, request.prompt);
  const auto started = std::chrono::steady_clock::now();
  const auto result = client.Post(route, headers, body, "application/json");
  const auto elapsed = std::chrono::steady_clock::now() - started;

  if (!result) {
    throw Error(ErrorCode::kTransient,
                fmt::format("{} request failed: {}", options_.endpoint,
                            httplib::to_string(result.error())));
  }
  const int status = result->status;
  if (status == 401 || status == 403) {
    throw Error(ErrorCode::kAuth, fmt::format("HTTP {} from {}", status, options_.endpoint));
  }
  if (status == 408 || status == 429 || status >= 500) {
    throw Error(ErrorCode::kTransient, fmt::format("HTTP {} from {}", status, options_.endpoint));
  }
  if (status < 200 || status >= 300) {
    throw Error(ErrorCode::kPermanent,
                fmt::format("HTTP {} from {}: {}", status, options_.endpoint,
                            result->body.substr(0, 200)));
  }

  QueryRecord record;
  record.digest = RequestDigest(*request.image, request.prompt, identity());
  record.response = ExtractText(result->body);
  record.latency_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  record.timestamp = UtcTimestamp();
  record.backend_kind = kind();
  return record;
}

}  // namespace gridloc
