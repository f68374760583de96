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

#include "doctest.h"
#include "oracle.hpp"
#include "qrdet/errors.hpp"
#include "qrdet/quadfield.hpp"

using namespace qrdet;
using namespace qrdet::quadfield;

namespace {

// Reduced forms ax^2 + bxy + cy^2 of discriminant -p, counted from scratch.
std::uint64_t brute_forms(std::int64_t p) {
    std::uint64_t count = 0;
    for (std::int64_t a = 1; 3 * a * a <= p; ++a)
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b + p;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            ++count;
        }
    return count;
}

// Smallest (u, v) with u^2 - p v^2 = +-4, v > 0.
std::pair<mpz_class, mpz_class> brute_unit(std::int64_t p) {
    for (std::int64_t v = 1;; ++v)
        for (int s : {-4, 4}) {
            const mpz_class u2 = mpz_class(p) * v * v + s;
            const mpz_class u = oracle::isqrt_or_neg(u2);
            if (u > 0) return {u, mpz_class(v)};
        }
}

}  // namespace

TEST_CASE("class_number_imag examples") {
    CHECK(class_number_imag(7) == 1);
    CHECK(class_number_imag(23) == 3);
    CHECK(class_number_imag(47) == 5);
    CHECK_THROWS_AS(class_number_imag(13), InvalidArgument);
    CHECK_THROWS_AS(class_number_imag(3), InvalidArgument);
}

TEST_CASE("forms and the Dirichlet sum agree, h(-p) odd") {
    for (auto p : oracle::primes(7, 1000)) {
        if (p % 4 != 3) continue;
        const auto h = class_number_imag(p);
        REQUIRE(h == brute_forms(static_cast<std::int64_t>(p)));
        CHECK(count_reduced_forms(p) == h);
        CHECK(class_number_imag_dirichlet(p) == h);
        CHECK(h % 2 == 1);
    }
}

TEST_CASE("fundamental_unit examples") {
    const auto e5 = fundamental_unit(5);
    CHECK(e5.u == 1);
    CHECK(e5.v == 1);
    CHECK(e5.norm() == -1);
    const auto e13 = fundamental_unit(13);
    CHECK(e13.u == 3);
    CHECK(e13.v == 1);
    const auto e29 = fundamental_unit(29);
    CHECK(e29.u == 5);
    CHECK(e29.v == 1);
    CHECK(e29.norm() == -1);
    CHECK_THROWS_AS(fundamental_unit(7), InvalidArgument);
}

TEST_CASE("fundamental_unit is the minimal Pell solution") {
    for (auto p : oracle::primes(5, 400)) {
        if (p % 4 != 1) continue;
        const auto e = fundamental_unit(p);
        CHECK(e.is_valid_unit());
        if (p <= 200) {
            const auto [u, v] = brute_unit(static_cast<std::int64_t>(p));
            CHECK(e.u == u);
            CHECK(e.v == v);
        }
        if (auto s = fundamental_unit_by_scan(p, 100000)) CHECK(*s == e);
    }
}

TEST_CASE("class_number_real and eps_h_power") {
    CHECK(class_number_real(5) == 1);
    CHECK(class_number_real(13) == 1);
    CHECK(class_number_real(229) == 3);
    CHECK(class_number_real(257) == 3);
    CHECK(class_number_real(401) == 5);
    CHECK(eps_h_power(5) == fundamental_unit(5));
    CHECK(eps_h_power(13) == fundamental_unit(13));
    for (auto p : oracle::primes(5, 450)) {
        if (p % 4 != 1) continue;
        const auto h = class_number_real(p);
        CHECK(fundamental_unit(p).pow(static_cast<long>(h)) == eps_h_power(p));
    }
}

TEST_CASE("QuadUnit arithmetic") {
    std::mt19937_64 rng(3);
    std::vector<QuadUnit> units;
    for (auto p : {5u, 13u, 29u, 61u, 109u}) units.push_back(fundamental_unit(p));
    for (int t = 0; t < 100; ++t) {
        const auto& e = units[rng() % units.size()];
        const long i = static_cast<long>(rng() % 7) - 3;
        const long j = static_cast<long>(rng() % 7) - 3;
        const long k = static_cast<long>(rng() % 5) - 2;
        const auto x = e.pow(i), y = e.pow(j), z = e.pow(k);
        CHECK((x * y) * z == x * (y * z));
        CHECK((x * y).norm() == x.norm() * y.norm());
        CHECK(x * y == e.pow(i + j));
    }
    const auto e = fundamental_unit(61);
    CHECK(e * e.inverse() == e.pow(0));
    CHECK(e.pow(0).u == 2);
    CHECK(e.pow(0).v == 0);
}

TEST_CASE("class_data") {
    const auto& c7 = class_data(7);
    CHECK(c7.h_imag == 1);
    CHECK(!c7.eps);
    const auto& c229 = class_data(229);
    CHECK(c229.h_real == 3);
    REQUIRE(c229.eps);
    CHECK(*c229.eps_h == c229.eps->pow(3));
}
