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

#include "qrdet/quadfield.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "qrdet/errors.hpp"
#include "qrdet/ntheory.hpp"

namespace qrdet::quadfield {

namespace {

void require_p_mod4(std::uint64_t p, unsigned residue, const char* what) {
    if (!ntheory::is_prime(p) || p % 4 != residue || (residue == 3 && p == 3))
        throw InvalidArgument(std::string(what) + ": unsupported prime " + std::to_string(p));
}

}  // namespace

mpz_class QuadUnit::norm() const {
    mpz_class n = u * u - mpz_class(static_cast<unsigned long>(p)) * v * v;
    return n / 4;
}

bool QuadUnit::is_valid_unit() const {
    mpz_class diff = u - v;
    if (mpz_even_p(diff.get_mpz_t()) == 0) return false;
    mpz_class n4 = u * u - mpz_class(static_cast<unsigned long>(p)) * v * v;
    if (n4 != 4 && n4 != -4) return false;
    // Of the four units +-e, +-e^-1 only e has u > 0 and v > 0.
    return u > 0 && v > 0;
}

QuadUnit QuadUnit::inverse() const {
    mpz_class n = norm();
    return {u * n, -v * n, p};
}

QuadUnit operator*(const QuadUnit& a, const QuadUnit& b) {
    const mpz_class pz(static_cast<unsigned long>(a.p));
    QuadUnit r;
    r.p = a.p;
    r.u = (a.u * b.u + pz * a.v * b.v) / 2;
    r.v = (a.u * b.v + a.v * b.u) / 2;
    return r;
}

QuadUnit QuadUnit::pow(long k) const {
    QuadUnit base = k < 0 ? inverse() : *this;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    QuadUnit result{2, 0, p};
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

BigFloat QuadUnit::value(mpfr_prec_t prec) const {
    BigFloat s = sqrt(BigFloat(static_cast<long>(p), prec));
    return (BigFloat(u, prec) + BigFloat(v, prec) * s) / BigFloat(2L, prec);
}

QuadUnit fundamental_unit(std::uint64_t p) {
    require_p_mod4(p, 1, "fundamental_unit");
    const mpz_class D(static_cast<unsigned long>(p));
    mpz_class a0;
    mpz_sqrt(a0.get_mpz_t(), D.get_mpz_t());

    // Convergents h/k of sqrt(D) until h^2 - D k^2 = +-1.
    mpz_class m = 0, d = 1, a = a0;
    mpz_class h_prev = 1, h = a0, k_prev = 0, k = 1;
    for (;;) {
        mpz_class n = h * h - D * k * k;
        if (n == 1 || n == -1) break;
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        mpz_class h_next = a * h + h_prev;
        mpz_class k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    QuadUnit eta{2 * h, 2 * k, p};

    // The maximal order's unit group contains Z[sqrt D]'s with index 1 or 3.
    const int nrm = eta.norm() == 1 ? 1 : -1;
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(2 * mpz_sizeinbase(h.get_mpz_t(), 2) + 128);
    BigFloat e = eta.value(prec);
    BigFloat root(prec);
    mpfr_cbrt(root.get(), e.get(), MPFR_RNDN);
    BigFloat conj = BigFloat(static_cast<long>(nrm), prec) / root;
    BigFloat sqrt_d = sqrt(BigFloat(static_cast<long>(p), prec));
    QuadUnit cand{(root + conj).round(), ((root - conj) / sqrt_d).round(), p};
    if (cand.is_valid_unit() && cand.pow(3) == eta) return cand;
    return eta;
}

std::optional<QuadUnit> fundamental_unit_by_scan(std::uint64_t p, std::uint64_t max_v) {
    require_p_mod4(p, 1, "fundamental_unit_by_scan");
    const mpz_class D(static_cast<unsigned long>(p));
    for (std::uint64_t v = 1; v <= max_v; ++v) {
        const mpz_class vz(static_cast<unsigned long>(v));
        // Norm -1 candidate first: for equal v it has the smaller u.
        for (int s : {-4, 4}) {
            mpz_class t = D * vz * vz + s;
            if (t > 0 && mpz_perfect_square_p(t.get_mpz_t())) {
                mpz_class u;
                mpz_sqrt(u.get_mpz_t(), t.get_mpz_t());
                return QuadUnit{u, vz, p};
            }
        }
    }
    return std::nullopt;
}

std::uint64_t count_reduced_forms(std::uint64_t p) {
    std::uint64_t count = 0;
    for (std::int64_t a = 1; static_cast<std::uint64_t>(3 * a * a) <= p; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            std::int64_t num = b * b + static_cast<std::int64_t>(p);
            if (num % (4 * a) != 0) continue;
            std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            ++count;
        }
    }
    return count;
}

std::uint64_t class_number_imag_dirichlet(std::uint64_t p) {
    ntheory::PrimeCtx ctx(p);
    std::int64_t sum = 0;
    for (std::uint64_t k = 1; k <= ctx.n(); ++k) sum += ctx.chi_residue(k);
    const std::int64_t denom = 2 - ctx.chi(2);
    if (sum <= 0 || sum % denom != 0)
        throw InternalError("class_number_imag_dirichlet: non-integral value for p = " + std::to_string(p));
    return static_cast<std::uint64_t>(sum / denom);
}

std::uint64_t class_number_imag(std::uint64_t p) {
    require_p_mod4(p, 3, "class_number_imag");
    const std::uint64_t forms = count_reduced_forms(p);
    const std::uint64_t dirichlet = class_number_imag_dirichlet(p);
    if (forms != dirichlet)
        throw InternalError("h(-" + std::to_string(p) + "): form count " + std::to_string(forms) +
                            " != Dirichlet sum " + std::to_string(dirichlet));
    return forms;
}

mpfr_prec_t default_precision(std::uint64_t p) {
    return static_cast<mpfr_prec_t>(std::max<std::uint64_t>(256, 12 * p));
}

namespace {

std::optional<QuadUnit> eps_h_power_at(std::uint64_t p, mpfr_prec_t prec) {
    const mpfr_prec_t work = prec + 64;
    BigComplex prod(BigFloat(1L, work), BigFloat(0L, work));
    const std::uint64_t n = (p - 1) / 2;
    for (std::uint64_t k = 1; k <= n; ++k) {
        BigComplex z = root_of_unity(static_cast<std::int64_t>(ntheory::mul_mod(k, k, p)), p, work);
        BigComplex term(BigFloat(1L, work) - z.re, -z.im);
        prod *= term;
    }
    const BigFloat tol = BigFloat::pow2(-static_cast<long>(prec / 4), work);
    if (!(abs(prod.im) <= tol * max(abs(prod.re), BigFloat(1L, work)))) return std::nullopt;
    if (prod.re.sign() <= 0) return std::nullopt;

    const BigFloat sqrt_p = sqrt(BigFloat(static_cast<long>(p), work));
    const BigFloat x = sqrt_p / prod.re;  // eps^h
    // N(eps^h) = (-1)^h is unknown up front; accept whichever sign yields
    // integral coordinates.
    for (long nrm : {-1L, 1L}) {
        BigFloat conj = BigFloat(nrm, work) / x;
        BigFloat u = x + conj;
        BigFloat v = (x - conj) / sqrt_p;
        mpz_class ur = u.round(), vr = v.round();
        if (!(abs(u - BigFloat(ur, work)) <= tol) || !(abs(v - BigFloat(vr, work)) <= tol)) continue;
        QuadUnit q{ur, vr, p};
        if (q.is_valid_unit() && q.norm() == nrm) return q;
    }
    return std::nullopt;
}

}  // namespace

QuadUnit eps_h_power(std::uint64_t p, mpfr_prec_t precision_bits) {
    require_p_mod4(p, 1, "eps_h_power");
    mpfr_prec_t prec = precision_bits ? precision_bits : default_precision(p);
    for (int attempt = 0; attempt <= 3; ++attempt, prec *= 2) {
        if (auto q = eps_h_power_at(p, prec)) return *q;
    }
    throw PrecisionFailure("eps_h_power: could not recover eps^h for p = " + std::to_string(p));
}

std::uint64_t class_number_real(std::uint64_t p) {
    const QuadUnit eps = fundamental_unit(p);
    const QuadUnit eh = eps_h_power(p);
    const mpfr_prec_t prec = 128;
    BigFloat ratio = log(eh.value(prec)) / log(eps.value(prec));
    const mpz_class h = ratio.round();
    if (h < 1 || !h.fits_slong_p() || eps.pow(h.get_si()) != eh)
        throw InternalError("class_number_real: eps^h verification failed for p = " + std::to_string(p));
    return h.get_ui();
}

const ClassData& class_data(std::uint64_t p) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<ClassData>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(p);
        if (it != cache.end()) return *it->second;
    }
    auto data = std::make_unique<ClassData>();
    data->p = p;
    if (p % 4 == 3 && p > 3) {
        data->h_imag = class_number_imag(p);
    } else if (p % 4 == 1) {
        data->eps = fundamental_unit(p);
        data->eps_h = eps_h_power(p);
        data->h_real = class_number_real(p);
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(p, std::move(data));
    return *it->second;
}

}  // namespace qrdet::quadfield
