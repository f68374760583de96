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

// Shared plumbing for the check implementations.

#include <string>
#include <vector>

#include "qrdet/ntheory.hpp"
#include "qrdet/realhp.hpp"
#include "qrdet/verify.hpp"

namespace qrdet::verify::detail {

std::vector<CheckDef> exact_checks();
std::vector<CheckDef> numeric_checks();
std::vector<CheckDef> conjecture_checks();

CheckReport make_report(const std::string& id, std::uint64_t p, const Params& params);

/// PASS iff the strings are identical.
void set_exact(CheckReport& r, std::string lhs, std::string rhs);

/// PASS on numeric agreement, FAIL on disagreement, ERROR when inconclusive.
void set_numeric(CheckReport& r, const realhp::HPReal& lhs, const realhp::HPReal& rhs, mpfr_prec_t prec);

/// Joins per-item results "[x,y,...]".
std::string join(const std::vector<std::string>& items);

std::int64_t param(const Params& params, const char* key);

void require(bool ok, const char* hypothesis);

/// d = 1..p-1.
std::vector<Params> sweep_d(std::uint64_t p);
/// d in 1..p-1 with (-d/p) = -1.
std::vector<Params> sweep_d_neg_nonresidue(std::uint64_t p);
/// a in {1, q}, b in {1, q, 4a mod p}, q the least nonresidue; duplicates removed.
std::vector<Params> sweep_ab(std::uint64_t p);

std::string to_str(std::int64_t v);
/// Symbol of a residue: 0, 1 or -1 as a string.
std::string symbol_str(int s);

}  // namespace qrdet::verify::detail
