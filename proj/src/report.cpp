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

#include "prens/report.hpp"

#include <iomanip>
#include <sstream>

namespace prens {

nlohmann::json Report::to_json() const {
    return nlohmann::json{{"command", command},
                          {"tool", tool},
                          {"version", version},
                          {"input_digest", input_digest},
                          {"duration_seconds", duration_seconds},
                          {"exit_code", exit_code},
                          {"payload", payload}};
}

Report Report::from_json(const nlohmann::json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.tool = j.at("tool").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.duration_seconds = j.at("duration_seconds").get<double>();
    r.exit_code = j.at("exit_code").get<int>();
    r.payload = j.at("payload");
    return r;
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << tool << " " << version << " — " << command << "\n";
    out << "input:    " << input_digest << "\n";
    out << "duration: " << duration_seconds << " s\n";
    out << "exit:     " << exit_code << "\n";
    out << payload.dump(2) << "\n";
    return out.str();
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

} // namespace prens
