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

// Arbitrary-precision evaluation of the trigonometric determinants and of
// closed-form right-hand sides, with error bounds.

#include <cstdint>
#include <functional>
#include <string>

#include "qrdet/bigfloat.hpp"
#include "qrdet/closed_form.hpp"
#include "qrdet/qmatrix.hpp"

namespace qrdet::realhp {

struct HPReal {
    BigFloat value;
    BigFloat err;  // absolute error bound
    bool unreliable = false;

    HPReal() = default;
    HPReal(BigFloat v, BigFloat e) : value(std::move(v)), err(std::move(e)) {}

    mpfr_prec_t prec() const { return value.prec(); }
    std::string value_string(int digits = 40) const { return value.to_string(digits); }
    std::string err_string() const { return err.to_string(6); }
};

/// x -> c + d x
struct AffineReal {
    HPReal c;
    HPReal d;
};

enum class TrigKind { TAN, COT };

/// tan(pi r/p) or cot(pi r/p) with relative error at most 2^(4-prec).
/// Throws InvalidArgument for cot with p | r.
HPReal trig_pi_frac(std::int64_t r, std::uint64_t p, TrigKind kind, mpfr_prec_t prec);

using EntryFn = std::function<BigFloat(std::size_t row, std::size_t col, mpfr_prec_t prec)>;

/// Gaussian elimination with partial pivoting at prec and at 2 prec. The
/// error bound is the discrepancy plus a propagated rounding bound; the
/// result is flagged unreliable when |value| < 8 err.
HPReal det_hp(std::size_t n, const EntryFn& entry, mpfr_prec_t prec);

/// Determinant of a TRIG_TAN / TRIG_COT spec at the rational point x.
HPReal trig_det(const qmatrix::MatrixSpec& spec, const mpq_class& x, mpfr_prec_t prec);

/// c = f(0), d = f(1) - c, certified by f(-1) = c - d within the combined
/// error bounds; a failed certificate throws InternalError.
AffineReal affine_extract(const std::function<HPReal(long)>& eval, mpfr_prec_t prec);

AffineReal trig_affine(const qmatrix::MatrixSpec& spec, mpfr_prec_t prec);

/// Numeric value of a real monomial (times_i must be false).
HPReal evaluate(const closed::Monomial& m, std::uint64_t p, mpfr_prec_t prec);

/// Closed forms of a trigonometric statement evaluated numerically.
AffineReal closed_form_eval(const closed::AffineForm& form, std::uint64_t p, mpfr_prec_t prec);

enum class Agreement { EQUAL, DIFFERENT, INCONCLUSIVE };

/// Compares with tolerance max(2^(-prec/2) s, 64 (err_l + err_r)), s =
/// max(|rhs|, 1). The tolerance itself must not exceed 2^-64 s, otherwise
/// the comparison is INCONCLUSIVE.
Agreement compare(const HPReal& lhs, const HPReal& rhs, mpfr_prec_t prec);

/// `requested` when positive, else max(256, 12 p).
mpfr_prec_t working_precision(std::uint64_t p, mpfr_prec_t requested = 0);

}  // namespace qrdet::realhp
