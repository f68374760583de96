// Copyright 2026 The qrdet Authors
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

// Serialization of check reports and conjecture records (JSON, CSV, text)
// and the append-only JSON Lines cache used for resumable runs.

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qrdet/conjectures.hpp"
#include "qrdet/verify.hpp"

namespace qrdet::report {

/// Library version; part of every cache key.
std::string version();

/// One-line JSON object. lhs/rhs are decimal strings for exact values and
/// {"value": ..., "err": ...} objects for numeric ones.
std::string to_json(const verify::CheckReport& r);
/// Inverse of to_json. Throws InvalidArgument on malformed input.
verify::CheckReport parse_json(const std::string& line);

std::string csv_header();
std::string to_csv(const verify::CheckReport& r);

std::string to_text(const verify::CheckReport& r);

std::string to_json(const conjectures::TpRecord& r);
/// Includes the previously reported members and whether they agree, when on record.
std::string to_json(const conjectures::EmScan& s);

/// JSON Lines file keyed by (check_id, p, canonical params, version).
/// Lines written by other versions and unparsable lines are ignored.
class Cache {
public:
    explicit Cache(std::filesystem::path path);

    std::optional<verify::CheckReport> find(const verify::Task& t) const;
    /// Appends one line and flushes; safe to call from several threads.
    void append(const verify::CheckReport& r);
    std::size_t size() const { return entries_.size(); }

private:
    static std::string key(const std::string& id, std::uint64_t p, const verify::Params& params);

    std::filesystem::path path_;
    std::map<std::string, verify::CheckReport> entries_;
    mutable std::mutex mu_;
};

}  // namespace qrdet::report
