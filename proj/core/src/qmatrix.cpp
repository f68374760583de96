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

#include "qrdet/qmatrix.hpp"

#include <algorithm>
#include <vector>

#include "qrdet/errors.hpp"
#include "qrdet/ntheory.hpp"

namespace qrdet::qmatrix {

using exactlin::IntMatrix;
using exactlin::ModMatrix;
using exactlin::RatMatrix;
using ntheory::least_residue;
using ntheory::pow_mod;

namespace {

// Jacobi symbol (a/n) for odd n > 0; only SKEW_D needs composite moduli.
int jacobi_symbol(std::int64_t a, std::uint64_t n) {
    std::uint64_t x = least_residue(a, n);
    std::uint64_t m = n;
    int s = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            if (m % 8 == 3 || m % 8 == 5) s = -s;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3) s = -s;
        x %= m;
    }
    return m == 1 ? s : 0;
}

bool is_integer_family(Family f) {
    return f == Family::LEGENDRE || f == Family::POWER || f == Family::CHAR_POWER || f == Family::SKEW_D;
}

// j^2 + d k^2 (or j^2 - k^2 for SKEW_D) as an exact integer.
std::int64_t base_value(const MatrixSpec& s, std::int64_t j, std::int64_t k) {
    if (s.family == Family::SKEW_D) return j * j - k * k;
    return j * j + s.d * k * k;
}

// Symbol of every residue mod p: Legendre for the prime families, Jacobi for SKEW_D.
std::vector<signed char> symbol_table(const MatrixSpec& s) {
    if (s.family != Family::SKEW_D) return ntheory::PrimeCtx(s.p).legendre_table();
    std::vector<signed char> t(s.p);
    for (std::uint64_t r = 0; r < s.p; ++r) t[r] = static_cast<signed char>(jacobi_symbol(static_cast<std::int64_t>(r), s.p));
    return t;
}

template <typename Matrix, typename Fn>
Matrix fill(const MatrixSpec& spec, Matrix m, Fn&& entry) {
    const auto start = static_cast<std::int64_t>(range_start(spec.range));
    const std::size_t n = m.size();
    // A barred first row is overwritten afterwards and may contain poles.
    for (std::size_t r = spec.bar ? 1 : 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            entry(m, r, c, start + static_cast<std::int64_t>(r), start + static_cast<std::int64_t>(c));
        }
    }
    return m;
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::LEGENDRE: return "LEGENDRE";
        case Family::POWER: return "POWER";
        case Family::CHAR_POWER: return "CHAR_POWER";
        case Family::RECIP: return "RECIP";
        case Family::RECIP_SQ: return "RECIP_SQ";
        case Family::SKEW_D: return "SKEW_D";
        case Family::TRIG_TAN: return "TRIG_TAN";
        case Family::TRIG_COT: return "TRIG_COT";
    }
    return "?";
}

std::string to_string(Range r) {
    switch (r) {
        case Range::FULL: return "FULL";
        case Range::POS: return "POS";
        case Range::TAIL: return "TAIL";
    }
    return "?";
}

std::size_t range_start(Range r) {
    switch (r) {
        case Range::FULL: return 0;
        case Range::POS: return 1;
        case Range::TAIL: return 2;
    }
    return 0;
}

std::size_t dimension(const MatrixSpec& spec) {
    const std::size_t n = static_cast<std::size_t>((spec.p - 1) / 2);
    const std::size_t start = range_start(spec.range);
    return n + 1 > start ? n + 1 - start : 0;
}

void validate(const MatrixSpec& spec) {
    if (spec.p < 3 || spec.p % 2 == 0) throw InvalidArgument("matrix spec: p must be odd and >= 3");
    if (spec.family == Family::SKEW_D) {
        if (spec.range != Range::POS) throw InvalidArgument("matrix spec: SKEW_D is defined on 1..n only");
        return;
    }
    if (!ntheory::is_prime(spec.p)) throw InvalidArgument("matrix spec: p = " + std::to_string(spec.p) + " is not prime");
    if (spec.family == Family::RECIP || spec.family == Family::RECIP_SQ) {
        if (ntheory::legendre(-spec.d, spec.p) != -1)
            throw InvalidArgument("matrix spec: reciprocal families need (-d/p) = -1");
    }
    if (spec.family == Family::TRIG_TAN || spec.family == Family::TRIG_COT) {
        if (spec.a % static_cast<std::int64_t>(spec.p) == 0 || spec.b % static_cast<std::int64_t>(spec.p) == 0)
            throw InvalidArgument("matrix spec: trigonometric families need p not dividing ab");
    }
}

IntMatrix build_int(const MatrixSpec& spec) {
    validate(spec);
    if (!is_integer_family(spec.family))
        throw InvalidArgument("build_int: family " + to_string(spec.family) + " has non-integer entries");
    const auto sym = symbol_table(spec);
    auto symbol = [&](std::int64_t v) { return static_cast<int>(sym[least_residue(v, spec.p)]); };
    IntMatrix m = fill(spec, IntMatrix(dimension(spec)),
                       [&](IntMatrix& out, std::size_t r, std::size_t c, std::int64_t j, std::int64_t k) {
                           const std::int64_t v = base_value(spec, j, k);
                           mpz_class e;
                           if (spec.family == Family::LEGENDRE) {
                               e = symbol(v);
                           } else {
                               mpz_class base(static_cast<long>(v));
                               mpz_pow_ui(e.get_mpz_t(), base.get_mpz_t(), spec.exponent);
                               if (spec.family != Family::POWER) e *= symbol(v);
                           }
                           out(r, c) = std::move(e);
                       });
    if (spec.bar && m.size() > 0)
        for (std::size_t c = 0; c < m.size(); ++c) m(0, c) = 1;
    return m;
}

ModMatrix build_mod(const MatrixSpec& spec, std::uint64_t modulus) {
    validate(spec);
    if (spec.family == Family::TRIG_TAN || spec.family == Family::TRIG_COT)
        throw InvalidArgument("build_mod: trigonometric families are real-valued");
    std::vector<signed char> sym;
    if (spec.family == Family::LEGENDRE || spec.family == Family::CHAR_POWER || spec.family == Family::SKEW_D)
        sym = symbol_table(spec);
    auto symbol = [&](std::int64_t v) { return static_cast<int>(sym[least_residue(v, spec.p)]); };
    ModMatrix m = fill(spec, ModMatrix(dimension(spec), modulus),
                       [&](ModMatrix& out, std::size_t r, std::size_t c, std::int64_t j, std::int64_t k) {
                           const std::int64_t v = base_value(spec, j, k);
                           const std::uint64_t vr = least_residue(v, modulus);
                           std::uint64_t e = 0;
                           switch (spec.family) {
                               case Family::LEGENDRE:
                                   e = least_residue(symbol(v), modulus);
                                   break;
                               case Family::POWER:
                                   e = pow_mod(vr, spec.exponent, modulus);
                                   break;
                               case Family::CHAR_POWER:
                               case Family::SKEW_D: {
                                   e = pow_mod(vr, spec.exponent, modulus);
                                   const int s = symbol(v);
                                   if (s == 0) e = 0;
                                   else if (s < 0) e = (modulus - e) % modulus;
                                   break;
                               }
                               case Family::RECIP:
                               case Family::RECIP_SQ: {
                                   if (vr == 0)
                                       throw InvalidArgument("build_mod: denominator j^2+dk^2 vanishes mod " +
                                                             std::to_string(modulus));
                                   e = ntheory::inv_mod(vr, modulus);
                                   if (spec.family == Family::RECIP_SQ) e = ntheory::mul_mod(e, e, modulus);
                                   break;
                               }
                               default:
                                   break;
                           }
                           out.set_residue(r, c, e);
                       });
    if (spec.bar && m.size() > 0)
        for (std::size_t c = 0; c < m.size(); ++c) m.set_residue(0, c, 1 % modulus);
    return m;
}

RatMatrix build_rat(const MatrixSpec& spec) {
    validate(spec);
    if (is_integer_family(spec.family)) {
        const IntMatrix im = build_int(spec);
        RatMatrix m(im.size());
        for (std::size_t r = 0; r < im.size(); ++r)
            for (std::size_t c = 0; c < im.size(); ++c) m(r, c) = im(r, c);
        return m;
    }
    if (spec.family != Family::RECIP && spec.family != Family::RECIP_SQ)
        throw InvalidArgument("build_rat: trigonometric families are real-valued");
    RatMatrix m = fill(spec, RatMatrix(dimension(spec)),
                       [&](RatMatrix& out, std::size_t r, std::size_t c, std::int64_t j, std::int64_t k) {
                           const std::int64_t v = base_value(spec, j, k);
                           if (v == 0) throw InvalidArgument("build_rat: zero denominator");
                           mpz_class den(static_cast<long>(v));
                           if (spec.family == Family::RECIP_SQ) den *= den;
                           mpq_class q(1, den);
                           q.canonicalize();
                           out(r, c) = q;
                       });
    if (spec.bar && m.size() > 0)
        for (std::size_t c = 0; c < m.size(); ++c) m(0, c) = 1;
    return m;
}

CosetReport coset_difference_product(std::uint64_t p, std::uint64_t m) {
    if (!ntheory::is_prime(p) || p % 2 == 0) throw InvalidArgument("coset_difference_product: p must be an odd prime");
    if (m == 0 || (p - 1) % m != 0) throw InvalidArgument("coset_difference_product: m must divide p-1");
    const std::uint64_t r2m = p % (2 * m);
    const bool first_case = r2m == 1 % (2 * m);
    const bool second_case = r2m == (1 + m) % (2 * m);
    if (!first_case && !second_case)
        throw OutOfScope("coset_difference_product: p mod 2m must be 1 or 1+m");

    std::vector<bool> in_h(p, false);
    for (std::uint64_t x = 1; x < p; ++x) in_h[pow_mod(x, m, p)] = true;
    std::vector<std::uint64_t> h;
    for (std::uint64_t r = 1; r < p; ++r)
        if (in_h[r]) h.push_back(r);

    std::vector<bool> seen(p, false);
    std::uint64_t prod = 1;
    for (std::uint64_t r = 1; r < p; ++r) {
        if (seen[r]) continue;
        std::vector<std::uint64_t> coset;
        coset.reserve(h.size());
        for (std::uint64_t t : h) {
            const std::uint64_t e = ntheory::mul_mod(r, t, p);
            seen[e] = true;
            coset.push_back(e);
        }
        std::sort(coset.begin(), coset.end());
        for (std::size_t s = 0; s < coset.size(); ++s)
            for (std::size_t t = s + 1; t < coset.size(); ++t) prod = ntheory::mul_mod(prod, coset[t] - coset[s], p);
    }

    const ntheory::PrimeCtx ctx(p);
    std::uint64_t rhs;
    if (first_case) {
        const std::uint64_t e = ((p + 1) / 2) * ((p - 1) / (2 * m)) + (p - 3) / 4;
        rhs = e % 2 ? (p - ctx.half_fact()) % p : ctx.half_fact();
    } else {
        const std::uint64_t e = ((p + 1) / 2) * ((p - 1 - m) / (2 * m));
        rhs = e % 2 ? p - 1 : 1;
    }
    return {prod, rhs, prod == rhs};
}

}  // namespace qrdet::qmatrix
