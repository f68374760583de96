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

// Units and class numbers of the quadratic fields Q(sqrt(p)) and Q(sqrt(-p))
// for odd primes p.

#include <cstdint>
#include <gmpxx.h>
#include <optional>

#include "qrdet/bigfloat.hpp"

namespace qrdet::quadfield {

/// The quadratic integer (u + v*sqrt(p))/2.
struct QuadUnit {
    mpz_class u;
    mpz_class v;
    std::uint64_t p = 0;

    /// (u^2 - p v^2)/4; a unit has norm +1 or -1.
    mpz_class norm() const;
    /// u == v (mod 2), norm is +-1 and the value exceeds 1.
    bool is_valid_unit() const;

    QuadUnit conjugate() const { return {u, -v, p}; }
    /// Multiplicative inverse of a unit (norm * conjugate).
    QuadUnit inverse() const;
    /// k-th power, k may be negative.
    QuadUnit pow(long k) const;

    BigFloat value(mpfr_prec_t prec) const;

    friend QuadUnit operator*(const QuadUnit& a, const QuadUnit& b);
    friend bool operator==(const QuadUnit& a, const QuadUnit& b) {
        return a.p == b.p && a.u == b.u && a.v == b.v;
    }
};

/// Fundamental unit of Q(sqrt(p)), p == 1 (mod 4): the least (u+v sqrt p)/2 > 1
/// with u^2 - p v^2 = +-4. Continued fraction of sqrt(p) followed by a cube
/// root test in the maximal order.
QuadUnit fundamental_unit(std::uint64_t p);

/// Same unit by scanning v = 1..max_v with exact square tests of p v^2 -+ 4.
/// Returns nullopt when the unit needs v > max_v.
std::optional<QuadUnit> fundamental_unit_by_scan(std::uint64_t p, std::uint64_t max_v);

/// Number of reduced forms ax^2+bxy+cy^2 of discriminant -p.
std::uint64_t count_reduced_forms(std::uint64_t p);
/// h(-p) from the character sum (sum_{k<p/2} (k/p)) / (2 - (2/p)).
std::uint64_t class_number_imag_dirichlet(std::uint64_t p);
/// h(-p) for p == 3 (mod 4), p > 3; both routes above must agree.
std::uint64_t class_number_imag(std::uint64_t p);

/// Default working precision max(256, 12 p) bits.
mpfr_prec_t default_precision(std::uint64_t p);

/// eps_p^h(p) recovered from prod_{k<p/2} (1 - e^{2 pi i k^2/p}) = sqrt(p) eps^{-h}.
/// precision_bits = 0 selects the default; the computation doubles the
/// precision up to three times before giving up with PrecisionFailure.
QuadUnit eps_h_power(std::uint64_t p, mpfr_prec_t precision_bits = 0);

/// h(p) = log(eps^h)/log(eps), verified by exact exponentiation.
std::uint64_t class_number_real(std::uint64_t p);

struct ClassData {
    std::uint64_t p = 0;
    std::uint64_t h_imag = 0;  // p == 3 (mod 4), p > 3
    std::uint64_t h_real = 0;  // p == 1 (mod 4)
    std::optional<QuadUnit> eps;
    std::optional<QuadUnit> eps_h;
};

/// Memoized invariants for p; safe to call concurrently.
const ClassData& class_data(std::uint64_t p);

}  // namespace qrdet::quadfield
