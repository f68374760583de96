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

// Registry of statement checks and the parallel suite runner.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <mpfr.h>

namespace qrdet::verify {

enum class Status { PASS, FAIL, SKIPPED, ERROR };

std::string to_string(Status s);
Status parse_status(const std::string& s);

using Params = std::map<std::string, std::int64_t>;

/// "a=1,b=3"; keys sorted.
std::string canonical_params(const Params& params);

/// An exact decimal (no err) or a decimal with an absolute error bound.
struct Quantity {
    std::string value;
    std::optional<std::string> err;

    friend bool operator==(const Quantity&, const Quantity&) = default;
};

struct CheckReport {
    std::string check_id;
    std::uint64_t p = 0;
    Params params;
    Status status = Status::ERROR;
    /// Violated hypothesis for SKIPPED, failure detail for FAIL/ERROR.
    std::string reason;
    Quantity lhs;
    Quantity rhs;
    std::int64_t elapsed_ms = 0;

    friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

/// Reason prefix of SKIPPED reports produced by hypothesis gating.
inline constexpr const char* kHypothesisPrefix = "hypothesis: ";
/// Reason prefix of ERROR reports caused by engine size limits.
inline constexpr const char* kLimitPrefix = "limit: ";

struct RunOptions {
    /// Working precision in bits; 0 selects max(256, 12 p).
    mpfr_prec_t precision = 0;
};

struct CheckDef {
    std::string id;
    std::string description;
    /// Parameter sets the suite runs for p; empty when the check does not
    /// apply to p.
    std::function<std::vector<Params>(std::uint64_t p)> sweep;
    std::function<CheckReport(std::uint64_t p, const Params& params, const RunOptions& opts)> run;
};

const std::vector<CheckDef>& registry();
std::vector<std::string> check_ids();
/// Resolves aliases; nullopt for unknown ids.
std::optional<std::string> canonical_id(const std::string& id);

/// Runs one check. Unknown ids throw InvalidArgument; hypothesis violations
/// give SKIPPED, engine failures give ERROR.
CheckReport run_check(const std::string& id, std::uint64_t p, const Params& params, const RunOptions& opts = {});

struct Task {
    std::string check_id;
    std::uint64_t p = 0;
    Params params;
};

/// Every (check, p, params) for primes pmin <= p <= pmax; ids empty = all.
std::vector<Task> plan_suite(std::uint64_t pmin, std::uint64_t pmax, const std::vector<std::string>& ids);

struct SuiteHooks {
    /// Previously computed report for a task, if any.
    std::function<std::optional<CheckReport>(const Task&)> lookup;
    /// Called once per freshly computed report, serialized.
    std::function<void(const CheckReport&)> on_fresh;
    std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Runs tasks on `jobs` worker threads. Reports are sorted by (p, check_id,
/// params); hypothesis skips are dropped.
std::vector<CheckReport> run_tasks(const std::vector<Task>& tasks, unsigned jobs, const RunOptions& opts = {},
                                   const SuiteHooks& hooks = {});

std::vector<CheckReport> run_suite(std::uint64_t pmin, std::uint64_t pmax, const std::vector<std::string>& ids,
                                   unsigned jobs, const RunOptions& opts = {}, const SuiteHooks& hooks = {});

}  // namespace qrdet::verify
