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
#include "qrdet/qmatrix.hpp"

using namespace qrdet;
using namespace qrdet::qmatrix;

namespace {

MatrixSpec spec(Family f, std::uint64_t p, std::int64_t d, Range r, unsigned e = 1, bool bar = false) {
    MatrixSpec s;
    s.family = f;
    s.p = p;
    s.d = d;
    s.range = r;
    s.exponent = e;
    s.bar = bar;
    return s;
}

// Entry straight from the definition over the range start..n.
mpq_class entry(const MatrixSpec& s, std::int64_t j, std::int64_t k) {
    const auto p = static_cast<std::int64_t>(s.p);
    const mpz_class v = s.family == Family::SKEW_D ? mpz_class(j * j - k * k) : mpz_class(j * j + s.d * k * k);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), v.get_mpz_t(), s.exponent);
    const int chi = oracle::legendre(mpz_fdiv_ui(v.get_mpz_t(), s.p), p);
    switch (s.family) {
        case Family::LEGENDRE: return chi;
        case Family::POWER: return pw;
        case Family::CHAR_POWER: return pw * chi;
        case Family::SKEW_D: return pw * chi;
        case Family::RECIP: return mpq_class(1) / v;
        case Family::RECIP_SQ: return mpq_class(1) / (v * v);
        default: return 0;
    }
}

}  // namespace

TEST_CASE("builder examples") {
    const auto m = build_int(spec(Family::LEGENDRE, 5, 1, Range::POS));
    REQUIRE(m.size() == 2);
    CHECK(m(0, 0) == -1);
    CHECK(m(0, 1) == 0);
    CHECK(m(1, 0) == 0);
    CHECK(m(1, 1) == -1);
    const auto d = build_int(spec(Family::SKEW_D, 5, 1, Range::POS));
    CHECK(d(0, 1) == 3);
    CHECK(d(1, 0) == -3);
    CHECK(d(0, 0) == 0);
}

TEST_CASE("entries match the definitions on every range") {
    for (auto p : oracle::primes(3, 41)) {
        const auto lp = static_cast<std::int64_t>(p);
        for (std::int64_t d : {std::int64_t{1}, std::int64_t{2}, lp - 1}) {
            for (auto r : {Range::FULL, Range::POS, Range::TAIL}) {
                for (auto f : {Family::LEGENDRE, Family::POWER, Family::CHAR_POWER, Family::RECIP, Family::RECIP_SQ}) {
                    const auto s = spec(f, p, d, r, 3);
                    if (f == Family::RECIP || f == Family::RECIP_SQ) {
                        if (oracle::legendre(-d, lp) != -1) {
                            CHECK_THROWS_AS(build_rat(s), InvalidArgument);
                            continue;
                        }
                    }
                    const auto start = static_cast<std::int64_t>(range_start(r));
                    if (r == Range::FULL && (f == Family::RECIP || f == Family::RECIP_SQ)) {
                        CHECK_THROWS_AS(build_rat(s), InvalidArgument);
                        continue;
                    }
                    const auto q = build_rat(s);
                    REQUIRE(q.size() == dimension(s));
                    REQUIRE(static_cast<std::int64_t>(q.size()) == (lp - 1) / 2 - start + 1);
                    const auto mm = build_mod(s);
                    for (std::size_t a = 0; a < q.size(); ++a)
                        for (std::size_t b = 0; b < q.size(); ++b) {
                            const mpq_class want = entry(s, start + static_cast<std::int64_t>(a), start + static_cast<std::int64_t>(b));
                            REQUIRE(q(a, b) == want);
                            const std::int64_t num = mpz_fdiv_ui(want.get_num_mpz_t(), p);
                            const std::int64_t den = mpz_fdiv_ui(want.get_den_mpz_t(), p);
                            REQUIRE(mm.at(a, b) == static_cast<std::uint64_t>(num * oracle::inv_mod(den, lp) % lp));
                        }
                }
            }
        }
    }
}

TEST_CASE("bar replaces the first row by ones") {
    for (auto p : oracle::primes(3, 61)) {
        auto s = spec(Family::LEGENDRE, p, 2, Range::FULL);
        const auto plain = build_int(s);
        s.bar = true;
        const auto bar = build_int(s);
        mpz_class sum = 0;
        for (std::size_t c = 0; c < bar.size(); ++c) {
            CHECK(bar(0, c) == 1);
            sum += bar(0, c);
        }
        CHECK(sum == (p + 1) / 2);
        for (std::size_t r = 1; r < bar.size(); ++r)
            for (std::size_t c = 0; c < bar.size(); ++c) CHECK(bar(r, c) == plain(r, c));
    }
}

TEST_CASE("SKEW_D symmetry") {
    for (std::uint64_t n = 5; n < 80; n += 2) {
        for (unsigned m = 1; m <= 4; ++m) {
            auto s = spec(Family::SKEW_D, n, 1, Range::POS, m);
            if (!oracle::is_prime(n) && n % 4 != 3) continue;
            const auto d = build_int(s);
            if (m % 2 == 1 && n % 4 == 1) {
                CHECK(d == [&] {
                    auto t = d.transpose();
                    for (std::size_t r = 0; r < t.size(); ++r)
                        for (std::size_t c = 0; c < t.size(); ++c) t(r, c) = -t(r, c);
                    return t;
                }());
                if (oracle::is_prime(n)) CHECK(build_mod(s).is_skew_symmetric());
            }
            if (m % 2 == 0 && n % 4 == 3 && n < 40) CHECK(exactlin::det_exact(d) == 0);
        }
    }
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(build_int(spec(Family::LEGENDRE, 9, 1, Range::POS)), InvalidArgument);
    CHECK_THROWS_AS(build_int(spec(Family::SKEW_D, 13, 1, Range::FULL)), InvalidArgument);
    CHECK_THROWS_AS(build_int(spec(Family::RECIP, 7, 1, Range::POS)), InvalidArgument);
    CHECK_THROWS_AS(build_rat(spec(Family::RECIP, 7, 3, Range::POS)), InvalidArgument);
    auto t = spec(Family::TRIG_TAN, 7, 1, Range::POS);
    CHECK_THROWS_AS(build_mod(t), InvalidArgument);
    t.a = 7;
    CHECK_THROWS_AS(validate(t), InvalidArgument);
}

TEST_CASE("coset_difference_product") {
    const auto r7 = coset_difference_product(7, 2);
    CHECK(r7.lhs == 1);
    CHECK(r7.pass);
    const auto r5 = coset_difference_product(5, 2);
    CHECK(r5.lhs == 3);
    CHECK(r5.rhs == 3);
    CHECK(coset_difference_product(13, 4).pass);
    CHECK_THROWS_AS(coset_difference_product(13, 5), Error);
    for (auto p : oracle::primes(3, 61))
        for (std::uint64_t m = 1; m < p; ++m) {
            if ((p - 1) % m != 0) continue;
            if (p % (2 * m) != 1 && p % (2 * m) != 1 + m) {
                CHECK_THROWS_AS(coset_difference_product(p, m), OutOfScope);
                continue;
            }
            const auto r = coset_difference_product(p, m);
            CHECK(r.lhs == static_cast<std::uint64_t>(oracle::coset_product(static_cast<std::int64_t>(p), static_cast<std::int64_t>(m))));
            CHECK(r.pass);
        }
}
