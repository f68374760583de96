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

#include "qrdet/bigfloat.hpp"

#include <cstdlib>
#include <memory>

namespace qrdet {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, other.prec());
    mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.prec());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
    BigFloat r(1L, prec);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
}

// Binary operations round to the larger of the two operand precisions.
#define QRDET_BIGFLOAT_OP(op, fn)                                 \
    BigFloat& BigFloat::operator op(const BigFloat& o) {         \
        if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN); \
        fn(v_, v_, o.v_, MPFR_RNDN);                              \
        return *this;                                             \
    }
QRDET_BIGFLOAT_OP(+=, mpfr_add)
QRDET_BIGFLOAT_OP(-=, mpfr_sub)
QRDET_BIGFLOAT_OP(*=, mpfr_mul)
QRDET_BIGFLOAT_OP(/=, mpfr_div)
#undef QRDET_BIGFLOAT_OP

BigFloat BigFloat::operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

long BigFloat::exponent() const noexcept {
    if (mpfr_zero_p(v_)) return -(1L << 40);
    return mpfr_get_exp(v_);
}

mpz_class BigFloat::round() const {
    mpz_class z;
    BigFloat t(*this);
    mpfr_round(t.v_, t.v_);
    mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDN);
    return z;
}

std::string BigFloat::to_string(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::unique_ptr<char, decltype(&mpfr_free_str)> guard(buf, &mpfr_free_str);
    return std::string(buf);
}

namespace {

template <int (*Fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
BigFloat apply(const BigFloat& x) {
    BigFloat r(x.prec());
    Fn(r.get(), x.get(), MPFR_RNDN);
    return r;
}

}  // namespace

BigFloat abs(const BigFloat& x) { return apply<mpfr_abs>(x); }
BigFloat sqrt(const BigFloat& x) { return apply<mpfr_sqrt>(x); }
BigFloat log(const BigFloat& x) { return apply<mpfr_log>(x); }
BigFloat exp(const BigFloat& x) { return apply<mpfr_exp>(x); }
BigFloat sin(const BigFloat& x) { return apply<mpfr_sin>(x); }
BigFloat cos(const BigFloat& x) { return apply<mpfr_cos>(x); }
BigFloat tan(const BigFloat& x) { return apply<mpfr_tan>(x); }
BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigComplex& BigComplex::operator*=(const BigComplex& o) {
    BigFloat r = re * o.re - im * o.im;
    BigFloat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

BigFloat BigComplex::abs() const { return qrdet::sqrt(re * re + im * im); }

BigComplex root_of_unity(std::int64_t r, std::uint64_t p, mpfr_prec_t prec) {
    // Reduce the exponent exactly before forming the angle.
    std::int64_t rr = r % static_cast<std::int64_t>(p);
    if (rr < 0) rr += static_cast<std::int64_t>(p);
    const mpfr_prec_t work = prec + 32;
    BigFloat angle = BigFloat::pi(work) * BigFloat(2 * rr, work) / BigFloat(static_cast<long>(p), work);
    BigComplex z(BigFloat(cos(angle), prec), BigFloat(sin(angle), prec));
    return z;
}

}  // namespace qrdet
