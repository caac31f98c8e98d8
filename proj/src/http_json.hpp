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

#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

namespace gtr::detail {

struct HttpPolicy {
  std::chrono::milliseconds timeout{30000};
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
};

// POSTs body as JSON and parses the JSON reply. Connection failures and
// 5xx/429 replies are retried with exponential backoff; any other non-200
// status, or exhausting the attempts, raises Errc::kBackendUnavailable.
nlohmann::json post_json(const std::string& url, const nlohmann::json& body,
                         const HttpPolicy& policy);

}  // namespace gtr::detail
