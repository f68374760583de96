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

// Builders for the matrix families over the index ranges 0..n, 1..n, 2..n
// with n = (p-1)/2. Matrix position (r, c) holds the entry for the indices
// (j, k) = (start + r, start + c).

#include <cstdint>
#include <string>

#include "qrdet/exactlin.hpp"

namespace qrdet::qmatrix {

enum class Family {
    LEGENDRE,    // ((j^2 + d k^2)/p)
    POWER,       // (j^2 + d k^2)^e
    CHAR_POWER,  // (j^2 + d k^2)^e ((j^2 + d k^2)/p)
    RECIP,       // 1/(j^2 + d k^2)
    RECIP_SQ,    // 1/(j^2 + d k^2)^2
    SKEW_D,      // (j^2 - k^2)^e ((j^2 - k^2)/p), p any odd integer, range 1..n
    TRIG_TAN,    // x + tan(pi (a j^2 + b k^2)/p)
    TRIG_COT,    // x + cot(pi (a j^2 + b k^2)/p)
};

enum class Range { FULL, POS, TAIL };

struct MatrixSpec {
    Family family = Family::LEGENDRE;
    std::uint64_t p = 0;
    std::int64_t d = 1;
    std::int64_t a = 1;
    std::int64_t b = 1;
    unsigned exponent = 1;
    Range range = Range::POS;
    /// Replace the row with the smallest index by ones.
    bool bar = false;
};

std::string to_string(Family f);
std::string to_string(Range r);

std::size_t range_start(Range r);
std::size_t dimension(const MatrixSpec& spec);

/// Throws InvalidArgument when the spec is malformed (non-prime p for the
/// prime families, RECIP families with (-d/p) != -1, SKEW_D off range POS).
void validate(const MatrixSpec& spec);

/// Integer families: LEGENDRE, POWER, CHAR_POWER, SKEW_D.
exactlin::IntMatrix build_int(const MatrixSpec& spec);

/// Entries reduced mod `modulus`. RECIP families use modular inverses and
/// throw InvalidArgument when a denominator vanishes mod `modulus`.
exactlin::ModMatrix build_mod(const MatrixSpec& spec, std::uint64_t modulus);
inline exactlin::ModMatrix build_mod(const MatrixSpec& spec) { return build_mod(spec, spec.p); }

/// Exact rationals for every non-trigonometric family.
exactlin::RatMatrix build_rat(const MatrixSpec& spec);

struct CosetReport {
    std::uint64_t lhs = 0;  // product of sorted coset differences mod p
    std::uint64_t rhs = 0;  // closed form mod p
    bool pass = false;
};

/// Product over the m cosets of the m-th power residues of all differences
/// a_t - a_s (s < t, coset sorted ascending), mod p, with the closed form.
/// Requires m | p-1 and p == 1 or 1+m (mod 2m); other classes throw
/// OutOfScope.
CosetReport coset_difference_product(std::uint64_t p, std::uint64_t m);

}  // namespace qrdet::qmatrix
