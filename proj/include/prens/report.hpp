// Copyright 2026 The prens Authors
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

#ifndef PRENS_REPORT_HPP
#define PRENS_REPORT_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

namespace prens {

/// Machine-readable run record: command, payload, tool version, a content
/// hash of the input, and wall-clock duration. Serialization round-trips
/// losslessly.
struct Report {
    std::string command;
    std::string tool;
    std::string version;
    std::string input_digest;
    double duration_seconds = 0.0;
    int exit_code = 0;
    nlohmann::json payload;

    bool operator==(const Report& other) const = default;

    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& j);

    std::string to_text() const;
};

/// FNV-1a 64-bit content hash, rendered as "fnv1a:<hex>".
std::string content_digest(const std::string& bytes);

} // namespace prens

#endif // PRENS_REPORT_HPP
