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

// Exact arithmetic in Q(zeta_p), zeta = e^{2 pi i/p}, and exact evaluation
// of the tangent/cotangent determinants at x = +-i.

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

#include "qrdet/bigfloat.hpp"
#include "qrdet/closed_form.hpp"
#include "qrdet/qmatrix.hpp"

namespace qrdet::cyclo {

/// Largest p accepted by the exact determinant routines.
inline constexpr std::uint64_t kMaxExactPrime = 31;

/// sum_{t=0}^{p-2} c_t zeta^t, the unique representative modulo
/// Phi_p = 1 + X + ... + X^{p-1}.
class CycloElt {
public:
    CycloElt() = default;
    /// Zero of Q(zeta_p).
    explicit CycloElt(std::uint64_t p);
    CycloElt(std::uint64_t p, const mpq_class& rational);

    static CycloElt zeta_pow(std::uint64_t p, std::int64_t r);

    std::uint64_t p() const noexcept { return p_; }
    const std::vector<mpq_class>& coeffs() const noexcept { return c_; }

    bool is_zero() const;
    bool is_rational() const;

    CycloElt& operator+=(const CycloElt& o);
    CycloElt& operator-=(const CycloElt& o);
    CycloElt& operator*=(const CycloElt& o);
    CycloElt& operator*=(const mpq_class& q);
    CycloElt& operator/=(const CycloElt& o);
    CycloElt operator-() const;

    friend CycloElt operator+(CycloElt a, const CycloElt& b) { return a += b; }
    friend CycloElt operator-(CycloElt a, const CycloElt& b) { return a -= b; }
    friend CycloElt operator*(CycloElt a, const CycloElt& b) { return a *= b; }
    friend CycloElt operator*(CycloElt a, const mpq_class& q) { return a *= q; }
    friend CycloElt operator/(CycloElt a, const CycloElt& b) { return a /= b; }
    friend bool operator==(const CycloElt& a, const CycloElt& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    /// zeta -> zeta^s, p does not divide s.
    CycloElt galois(std::int64_t s) const;
    /// zeta -> zeta^{-1} (complex conjugation).
    CycloElt conjugate() const { return galois(-1); }
    /// Product of all Galois conjugates, a rational number.
    mpq_class norm() const;
    /// Throws InvalidArgument for zero.
    CycloElt inverse() const;

    BigComplex to_complex(mpfr_prec_t prec) const;
    std::string to_string() const;

private:
    void check_same(const CycloElt& o) const;

    std::uint64_t p_ = 0;
    std::vector<mpq_class> c_;
};

/// sum_{t=1}^{p-1} (t/p) zeta^t; its square is (-1)^{(p-1)/2} p.
CycloElt gauss_sum(std::uint64_t p);

/// i^{times_i} * base. Since i is not in Q(zeta_p) for odd p, the split is
/// unique and equality is componentwise.
struct CycloValue {
    CycloElt base;
    bool times_i = false;

    bool is_zero() const { return base.is_zero(); }
    /// Fixed by complex conjugation.
    bool is_real() const;
    friend CycloValue operator*(const CycloValue& x, const CycloValue& y);
    friend bool operator==(const CycloValue& x, const CycloValue& y);
    BigComplex to_complex(mpfr_prec_t prec) const;
    std::string to_string() const;
};

/// Exact image of a closed-form monomial: sqrt(p) and i sqrt(p) come from
/// the Gauss sum, eps_p^h(p) = (u + v sqrt p)/2.
CycloValue embed(const closed::Monomial& m, std::uint64_t p);

/// prod_{k=1}^{n} (1 - zeta^{a k^2}).
CycloElt product_one_minus(std::uint64_t p, std::int64_t a);

enum class PairKind { DIFF, SUM };
/// prod_{1<=j<k<=n} (zeta^{a j^2} -+ zeta^{a k^2}).
CycloElt pair_products(std::uint64_t p, std::int64_t a, PairKind kind);

/// prod_{j,k=1}^{n} (1 - zeta^{a j^2 + b k^2}) for p == 3 (mod 4) and (ab/p) = 1;
/// other inputs throw HypothesisViolation.
CycloElt grid_product(std::uint64_t p, std::int64_t a, std::int64_t b);

/// Determinant by Gaussian elimination over Q(zeta_p).
CycloElt det(std::vector<CycloElt> m, std::size_t n);

/// c + d x for a trigonometric spec (TRIG_TAN or TRIG_COT, any range, bar
/// allowed). Both components are certified real; throws InternalError
/// otherwise and ResourceLimit for p > kMaxExactPrime.
struct ExactAffine {
    CycloValue c;
    CycloValue d;
};
ExactAffine tan_det_exact(const qmatrix::MatrixSpec& spec);

}  // namespace qrdet::cyclo
