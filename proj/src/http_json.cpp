// Copyright 2026 The GTR Authors.
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

#include "http_json.hpp"

#include <thread>

#include <httplib.h>

#include "gtr/error.hpp"

namespace gtr::detail {
namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(Errc::kInvalidConfig, "endpoint '" + url + "' has no scheme");
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(Errc::kInvalidConfig, "unsupported scheme in endpoint '" + url + "'");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") {
    throw Error(Errc::kBackendUnavailable, "https endpoints need a TLS-enabled build");
  }
#endif
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

nlohmann::json post_json(const std::string& url, const nlohmann::json& body,
                         const HttpPolicy& policy) {
  const ParsedUrl target = split_url(url);
  const std::string payload = body.dump();
  const int attempts = std::max(1, policy.max_attempts);
  auto backoff = policy.initial_backoff;
  std::string last_error;

  for (int attempt = 1; attempt <= attempts; ++attempt) {
    httplib::Client client(target.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(policy.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(policy.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    auto res = client.Post(target.path, payload, "application/json");
    if (!res) {
      last_error = "request to " + url + " failed: " + httplib::to_string(res.error());
    } else if (res->status == 200) {
      try {
        return nlohmann::json::parse(res->body);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::kBackendUnavailable, "invalid JSON from " + url + ": " + e.what());
      }
    } else {
      last_error = url + " replied with HTTP " + std::to_string(res->status);
      if (!retryable(res->status)) break;
    }
    if (attempt < attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw Error(Errc::kBackendUnavailable, last_error);
}

}  // namespace gtr::detail
