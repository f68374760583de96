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

#include <complex>

#include "doctest.h"
#include "oracle.hpp"
#include "qrdet/closed_form.hpp"
#include "qrdet/cyclotomic.hpp"
#include "qrdet/errors.hpp"

using namespace qrdet;
using namespace qrdet::cyclo;
using cplx = std::complex<long double>;

namespace {

// Numeric value of sum c_t zeta^t, evaluated without the library.
cplx numeric(const CycloElt& x) {
    cplx z = 0;
    const auto p = static_cast<long double>(x.p());
    for (std::size_t t = 0; t < x.coeffs().size(); ++t) {
        const long double ang = 2 * oracle::pi() * static_cast<long double>(t) / p;
        z += cplx(std::cos(ang), std::sin(ang)) * static_cast<long double>(x.coeffs()[t].get_d());
    }
    return z;
}

cplx numeric(const CycloValue& v) { return v.times_i ? numeric(v.base) * cplx(0, 1) : numeric(v.base); }

cplx zeta(std::int64_t r, std::int64_t p) {
    const long double ang = 2 * oracle::pi() * static_cast<long double>(oracle::mod(r, p)) / static_cast<long double>(p);
    return {std::cos(ang), std::sin(ang)};
}

CycloElt random_elt(std::mt19937_64& rng, std::uint64_t p) {
    CycloElt x(p);
    for (std::uint64_t t = 0; t + 1 < p; ++t) {
        mpq_class q(static_cast<long>(rng() % 11) - 5, rng() % 4 + 1);
        q.canonicalize();
        x += CycloElt::zeta_pow(p, static_cast<std::int64_t>(t)) * q;
    }
    return x;
}

bool close(cplx a, cplx b, long double rel = 1e-12L) { return std::abs(a - b) <= rel * std::max<long double>(1, std::abs(b)); }

CycloElt rat(std::uint64_t p, long v) { return CycloElt(p, mpq_class(v)); }

}  // namespace

TEST_CASE("field basics") {
    for (auto p : oracle::primes(3, 31)) {
        const auto z = CycloElt::zeta_pow(p, 1);
        CHECK(z * CycloElt::zeta_pow(p, static_cast<std::int64_t>(p) - 1) == rat(p, 1));
        const auto one_minus = rat(p, 1) - z;
        CHECK(one_minus.inverse() * one_minus == rat(p, 1));
        CHECK(z.conjugate() == CycloElt::zeta_pow(p, static_cast<std::int64_t>(p) - 1));
        CHECK((z + z.conjugate()).conjugate() == z + z.conjugate());
        CHECK(rat(p, 1).conjugate() == rat(p, 1));
        CHECK(CycloElt::zeta_pow(p, static_cast<std::int64_t>(p)) == rat(p, 1));
        CHECK(close(numeric(z), zeta(1, static_cast<std::int64_t>(p))));
    }
    CHECK_THROWS(rat(7, 1) / CycloElt(7));
}

TEST_CASE("conjugation is an involutive ring homomorphism") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 40; ++t) {
        const std::uint64_t p = oracle::primes(3, 23)[rng() % 8];
        const auto x = random_elt(rng, p), y = random_elt(rng, p);
        CHECK(x.conjugate().conjugate() == x);
        CHECK((x * y).conjugate() == x.conjugate() * y.conjugate());
        CHECK((x + y).conjugate() == x.conjugate() + y.conjugate());
        CHECK(close(numeric(x * y), numeric(x) * numeric(y), 1e-9L));
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("Gauss sums") {
    for (auto p : oracle::primes(3, 31)) {
        const auto g = gauss_sum(p);
        const long sign = p % 4 == 1 ? 1 : -1;
        CHECK(g * g == rat(p, sign * static_cast<long>(p)));
        CHECK(g.conjugate() == g * mpq_class(oracle::legendre(-1, static_cast<std::int64_t>(p))));
        cplx direct = 0;
        for (std::int64_t t = 1; t < static_cast<std::int64_t>(p); ++t)
            direct += static_cast<long double>(oracle::legendre(t, static_cast<std::int64_t>(p))) * zeta(t, static_cast<std::int64_t>(p));
        CHECK(close(numeric(g), direct));
    }
}

TEST_CASE("product_one_minus") {
    // p = 7: -sqrt(7) i, and the Gauss sum is i sqrt(7).
    CHECK(product_one_minus(7, 1) == -gauss_sum(7));
    for (auto p : oracle::primes(3, 31)) {
        const auto lp = static_cast<std::int64_t>(p);
        std::int64_t q = 2;
        while (oracle::legendre(q, lp) != -1) ++q;
        for (std::int64_t a = 1; a < lp; ++a) {
            const auto x = product_one_minus(p, a);
            // a k^2 and q a k^2 together run over every nonzero residue once.
            CHECK(x * product_one_minus(p, q * a) == rat(p, lp));
            if (p % 4 == 3) CHECK(x * product_one_minus(p, -a) == rat(p, lp));
            cplx direct = 1;
            for (std::int64_t k = 1; k <= (lp - 1) / 2; ++k) direct *= cplx(1) - zeta(a * k * k, lp);
            CHECK(close(numeric(x), direct, 1e-10L));
        }
    }
    const auto five = numeric(product_one_minus(5, 1));
    CHECK(std::abs(five.real() - 1.3819660112501051L) < 1e-12L);
    CHECK(std::abs(five.imag()) < 1e-12L);
}

TEST_CASE("pair_products and grid_product") {
    CHECK(pair_products(7, 1, PairKind::SUM) == rat(7, 1));
    CHECK(pair_products(11, 1, PairKind::DIFF) == rat(11, -11));
    CHECK(grid_product(7, 1, 1) == gauss_sum(7) * mpq_class(7));
    CHECK_THROWS_AS(grid_product(7, 1, 3), InvalidArgument);
    CHECK_THROWS_AS(grid_product(13, 1, 1), InvalidArgument);
    for (auto p : oracle::primes(3, 23)) {
        const auto lp = static_cast<std::int64_t>(p);
        for (std::int64_t a = 1; a < lp; ++a) {
            cplx diff = 1, sum = 1;
            for (std::int64_t j = 1; j <= (lp - 1) / 2; ++j)
                for (std::int64_t k = j + 1; k <= (lp - 1) / 2; ++k) {
                    diff *= zeta(a * j * j, lp) - zeta(a * k * k, lp);
                    sum *= zeta(a * j * j, lp) + zeta(a * k * k, lp);
                }
            CHECK(close(numeric(pair_products(p, a, PairKind::DIFF)), diff, 1e-9L));
            CHECK(close(numeric(pair_products(p, a, PairKind::SUM)), sum, 1e-9L));
            if (p % 4 == 3) CHECK(pair_products(p, a, PairKind::SUM) == rat(p, 1));
        }
    }
    for (auto [a, b] : {std::pair{1, 3}, std::pair{3, 5}, std::pair{2, 6}}) {
        const std::int64_t p = 11;
        if (oracle::legendre(a * b, p) != 1) continue;
        cplx direct = 1;
        for (std::int64_t j = 1; j <= 5; ++j)
            for (std::int64_t k = 1; k <= 5; ++k) direct *= cplx(1) - zeta(a * j * j + b * k * k, p);
        CHECK(close(numeric(grid_product(11, a, b)), direct, 1e-9L));
    }
}

TEST_CASE("tan_det_exact examples") {
    const auto t = tan_det_exact(closed::object_spec(closed::Object::T1, 7, 1, 1));
    CHECK(t.c.is_zero());
    CHECK(t.d == CycloValue{rat(7, -56), false});
    const auto u = tan_det_exact(closed::object_spec(closed::Object::T1, 7, 1, 3));
    CHECK(u.c.is_zero());
    CHECK(u.d == CycloValue{rat(7, 7), false});
    CHECK_THROWS_AS(tan_det_exact(closed::object_spec(closed::Object::T1, 37, 1, 1)), ResourceLimit);
}

TEST_CASE("tan_det_exact agrees with a long double evaluation") {
    using closed::Object;
    for (auto p : oracle::primes(5, 19)) {
        const auto lp = static_cast<std::int64_t>(p);
        std::int64_t q = 2;
        while (oracle::legendre(q, lp) != -1) ++q;
        for (auto o : {Object::T0, Object::T1, Object::TBAR, Object::C1, Object::CBAR})
            for (std::int64_t a : {std::int64_t{1}, q})
                for (std::int64_t b : {std::int64_t{1}, q}) {
                    const bool cot = o == Object::C1 || o == Object::CBAR;
                    const int from = (o == Object::T1 || o == Object::C1) ? 1 : 0;
                    const bool bar = o == Object::TBAR || o == Object::CBAR;
                    if (cot && from == 0 && !bar) continue;
                    // Cotangent entries have poles unless (-ab/p) = -1.
                    if (cot && oracle::legendre(-a * b, lp) != -1) continue;
                    const auto ex = tan_det_exact(closed::object_spec(o, p, a, b));
                    CHECK(ex.c.is_real());
                    CHECK(ex.d.is_real());
                    const long double f0 = oracle::trig_det(lp, a, b, 0, from, bar, cot);
                    const long double f1 = oracle::trig_det(lp, a, b, 1, from, bar, cot);
                    const long double scale = std::max({1.0L, std::fabs(f0), std::fabs(f1)});
                    CHECK(std::abs(numeric(ex.c) - cplx(f0)) < 1e-9L * scale);
                    CHECK(std::abs(numeric(ex.d) - cplx(f1 - f0)) < 1e-9L * scale);
                }
    }
}

TEST_CASE("embedding of closed-form monomials") {
    closed::Monomial root_p{1, 0, 1, 0, false};
    for (auto p : oracle::primes(3, 31)) {
        const auto v = embed(root_p, p);
        CHECK(close(numeric(v), cplx(std::sqrt(static_cast<long double>(p)))));
        CHECK(v.is_real());
    }
    closed::Monomial m{-1, 3, 2, 0, true};
    CHECK(close(numeric(embed(m, 7)), cplx(0, -56)));
}
