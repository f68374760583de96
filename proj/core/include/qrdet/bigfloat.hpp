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

// Thin value-semantic wrapper over mpfr_t. Precision is fixed at construction
// and carried by every value; there is no ambient default precision.

#include <mpfr.h>

#include <cstdint>
#include <gmpxx.h>
#include <string>

namespace qrdet {

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128);
    BigFloat(long v, mpfr_prec_t prec);
    BigFloat(const mpz_class& v, mpfr_prec_t prec);
    BigFloat(const mpq_class& v, mpfr_prec_t prec);
    BigFloat(const BigFloat& other);
    BigFloat(const BigFloat& other, mpfr_prec_t prec);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    static BigFloat pi(mpfr_prec_t prec);
    /// 2^e exactly.
    static BigFloat pow2(long e, mpfr_prec_t prec);

    mpfr_prec_t prec() const noexcept { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_ptr get() noexcept { return v_; }

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    BigFloat operator-() const;

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

    bool is_zero() const noexcept { return mpfr_zero_p(v_); }
    int sign() const noexcept { return mpfr_sgn(v_); }
    /// Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
    long exponent() const noexcept;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Nearest integer.
    mpz_class round() const;
    /// Scientific decimal with `digits` significant digits.
    std::string to_string(int digits = 40) const;

private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat tan(const BigFloat& x);
BigFloat max(const BigFloat& a, const BigFloat& b);

struct BigComplex {
    BigFloat re;
    BigFloat im;

    explicit BigComplex(mpfr_prec_t prec) : re(0L, prec), im(0L, prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    BigComplex& operator*=(const BigComplex& o);
    BigComplex& operator+=(const BigComplex& o);
    friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    BigFloat abs() const;
};

/// e^(2 pi i r / p)
BigComplex root_of_unity(std::int64_t r, std::uint64_t p, mpfr_prec_t prec);

}  // namespace qrdet
