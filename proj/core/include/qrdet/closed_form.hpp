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

// Right-hand sides of the determinant and product evaluations, kept as exact
// monomials sign * 2^a * sqrt(p)^b * (eps_p^h(p))^c * (i or 1) so that the
// same value can be evaluated numerically or embedded in Q(zeta_p).

#include <cstdint>
#include <string>
#include <vector>

#include "qrdet/qmatrix.hpp"

namespace qrdet::closed {

struct Monomial {
    int sign = 0;  // 0 encodes the value 0
    long pow2 = 0;
    long half_p = 0;    // exponent of sqrt(p)
    long eps_mult = 0;  // exponent of eps_p^h(p)
    bool times_i = false;

    static Monomial zero() { return {}; }
    static Monomial one() { return {1, 0, 0, 0, false}; }

    bool is_zero() const noexcept { return sign == 0; }

    friend Monomial operator*(const Monomial& x, const Monomial& y);
    friend bool operator==(const Monomial&, const Monomial&) = default;

    /// e.g. "-2^3*7^(3/2)*eps^(-2h)".
    std::string to_string(std::uint64_t p) const;
};

/// c + d x
struct AffineForm {
    Monomial c;
    Monomial d;
};

/// The trigonometric determinants. T0/T1: x + tan over 0..n / 1..n; TBAR:
/// T0 with its first row replaced by ones; C1/CBAR: the cotangent analogues.
enum class Object { T0, T1, TBAR, C1, CBAR };

std::string to_string(Object o);
/// Parses "T0", "T1", "TBAR", "C1", "CBAR" (case-insensitive).
Object parse_object(const std::string& name);

qmatrix::MatrixSpec object_spec(Object o, std::uint64_t p, std::int64_t a, std::int64_t b);

struct ObjectForm {
    Object object;
    AffineForm form;
};

/// Ids accepted by trig_forms.
const std::vector<std::string>& trig_statement_ids();

/// Closed forms asserted by a trigonometric statement for (p, a, b). Throws
/// HypothesisViolation outside the statement's hypotheses and
/// InvalidArgument for an unknown id.
std::vector<ObjectForm> trig_forms(const std::string& statement_id, std::uint64_t p, std::int64_t a,
                                   std::int64_t b);

// Product evaluations, zeta = e^{2 pi i/p}.

/// prod_{k=1}^{n} (1 - zeta^{a k^2}).
Monomial one_minus_product(std::uint64_t p, std::int64_t a);
/// prod_{1<=j<k<=n} (zeta^{a j^2} - zeta^{a k^2}), p == 3 (mod 4).
Monomial pair_diff_product(std::uint64_t p, std::int64_t a);
/// prod_{1<=j<k<=n} (zeta^{a j^2} + zeta^{a k^2}), p == 3 (mod 4).
Monomial pair_sum_product(std::uint64_t p, std::int64_t a);
/// Pair difference products for a and b multiplied, p == 1 (mod 4), (ab/p) = -1.
Monomial pair_diff_product_ab(std::uint64_t p, std::int64_t a, std::int64_t b);
/// prod_{j,k=1}^{n} (1 - zeta^{a j^2 + b k^2}), p == 3 (mod 4), (ab/p) = 1.
Monomial grid_product(std::uint64_t p, std::int64_t a, std::int64_t b);
/// prod_{j<k} (cot pi aj^2/p - cot pi ak^2/p)(cot pi bj^2/p - cot pi bk^2/p),
/// p == 1 (mod 4), (ab/p) = -1.
Monomial cot_pair_product_ab(std::uint64_t p, std::int64_t a, std::int64_t b);

/// Some c with a c^2 == b (mod p); requires (ab/p) = 1.
std::int64_t square_ratio_root(std::uint64_t p, std::int64_t a, std::int64_t b);

}  // namespace qrdet::closed
