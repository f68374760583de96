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
#include "qrdet/conjectures.hpp"
#include "qrdet/errors.hpp"
#include "qrdet/exactlin.hpp"
#include "qrdet/qmatrix.hpp"

using namespace qrdet;
using namespace qrdet::conjectures;

namespace {

int jacobi(std::int64_t a, std::int64_t n) {
    int s = 1;
    for (std::int64_t q = 3; n > 1; q += 2)
        while (n % q == 0) {
            s *= oracle::legendre(a, q);
            n /= q;
        }
    return s;
}

std::int64_t jacobsthal(std::int64_t p, std::int64_t d) {
    std::int64_t s = 0;
    for (std::int64_t x = 1; x <= (p - 1) / 2; ++x) s += oracle::legendre(x * (x * x + d), p);
    return s;
}

// T(d,p) = 2^{(p-3)/2} ((p-1)/4 t)^2 J, solved for t from a rational Gaussian elimination.
mpz_class oracle_tp(std::int64_t p, std::int64_t d) {
    const std::int64_t n = (p - 1) / 2;
    oracle::Grid g(n + 1, std::vector<mpq_class>(n + 1));
    for (std::int64_t j = 0; j <= n; ++j)
        for (std::int64_t k = 0; k <= n; ++k) g[j][k] = oracle::legendre(j * j + d * k * k, p);
    const mpq_class det = oracle::gauss_det(g);
    mpz_class scale = mpz_class(1) << ((p - 3) / 2);
    scale *= jacobsthal(p, d);
    const mpq_class sq = det / scale;
    REQUIRE(sq.get_den() == 1);
    const mpz_class r = oracle::isqrt_or_neg(sq.get_num());
    REQUIRE(r >= 0);
    REQUIRE(r % ((p - 1) / 4) == 0);
    return r / ((p - 1) / 4);
}

std::vector<std::vector<std::int64_t>> skew_rows(std::int64_t n, unsigned m, std::int64_t mod) {
    std::vector<std::vector<std::int64_t>> a;
    for (std::int64_t j = 1; j <= (n - 1) / 2; ++j) {
        std::vector<std::int64_t> row;
        for (std::int64_t k = 1; k <= (n - 1) / 2; ++k)
            row.push_back(oracle::mod(oracle::pow_mod(oracle::mod(j * j - k * k, mod), m, mod) * jacobi(j * j - k * k, n), mod));
        a.push_back(row);
    }
    return a;
}

mpz_class skew_det_exact(std::int64_t n, unsigned m) {
    const std::int64_t h = (n - 1) / 2;
    oracle::Grid g(h, std::vector<mpq_class>(h));
    for (std::int64_t j = 1; j <= h; ++j)
        for (std::int64_t k = 1; k <= h; ++k) {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), mpz_class(j * j - k * k).get_mpz_t(), m);
            g[j - 1][k - 1] = e * jacobi(j * j - k * k, n);
        }
    const mpq_class det = oracle::gauss_det(g);
    REQUIRE(det.get_den() == 1);
    return det.get_num();
}

}  // namespace

TEST_CASE("t_p matches an independent determinant for small primes") {
    const std::vector<std::pair<std::uint64_t, long>> table = {{5, 1}, {13, 1}, {17, 1}, {29, 13}, {37, 9}, {41, 18}};
    for (auto [p, t] : table) {
        const auto rec = extract_tp(p);
        INFO("p=", p);
        REQUIRE(rec.tp.has_value());
        CHECK(*rec.tp == t);
        CHECK(rec.per_d_consistent);
        CHECK(rec.symbol_ok);
        for (std::int64_t d = 1; d < static_cast<std::int64_t>(p); ++d)
            if (oracle::legendre(d, p) == -1) CHECK(oracle_tp(p, d) == t);
        for (const auto& s : rec.samples) {
            CHECK(s.jacobsthal == jacobsthal(p, s.d));
            REQUIRE(s.full_route_ok.has_value());
            CHECK(*s.full_route_ok);
        }
    }
    CHECK_THROWS_AS(extract_tp(7), InvalidArgument);
    CHECK_THROWS_AS(extract_tp(15), InvalidArgument);
}

TEST_CASE("t_p predictions and Jacobsthal two-squares") {
    for (auto p : oracle::primes(5, 101)) {
        if (p % 4 != 1) continue;
        const std::int64_t a = jacobsthal(p, 1);
        for (std::int64_t d = 1; d < static_cast<std::int64_t>(p); ++d)
            if (oracle::legendre(d, p) == -1) {
                const std::int64_t b = jacobsthal(p, d);
                CHECK(a * a + b * b == static_cast<std::int64_t>(p));
            }
    }
    // T = ((p-1)/2)^2 times the tail determinant.
    for (std::uint64_t p : {13u, 29u, 37u}) {
        const mpz_class t = 7;
        const mpq_class ratio = mpq_class(tp_full_prediction(p, t, 3)) / tp_tail_prediction(p, t, 3);
        CHECK(ratio == mpq_class((p - 1) / 2 * ((p - 1) / 2)));
    }
    CHECK(factor_string({{2, 9}, {3, 2}, {47, 2}, {79, 1}}) == "2^9*3^2*47^2*79");
}

TEST_CASE("p-2 congruence") {
    // S_3(1,5) = -11529 == 1 (mod 5).
    std::vector<std::vector<std::int64_t>> s{{8, 125}, {125, 512}};
    CHECK(oracle::leibniz_det(s) == -11529);
    for (auto p : oracle::primes(5, 61)) {
        if (p % 4 != 1) continue;
        const std::int64_t lp = static_cast<std::int64_t>(p);
        const std::int64_t n = (lp - 1) / 2;
        std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
        for (std::int64_t j = 1; j <= n; ++j)
            for (std::int64_t k = 1; k <= n; ++k) m[j - 1][k - 1] = oracle::pow_mod(j * j + k * k, lp - 2, lp);
        const std::int64_t sp = oracle::det_mod_p(m, lp);
        for (std::int64_t d = 1; d < lp; ++d) {
            if (oracle::legendre(d, lp) != -1) continue;
            const auto r = check_conj_p2(p, d);
            INFO("p=", p, " d=", d, " ", r.lhs.value, " ", r.rhs.value);
            CHECK(r.status == verify::Status::PASS);
            CHECK(r.lhs.value.find("," + std::to_string(sp) + ",") != std::string::npos);
        }
    }
    CHECK_THROWS_AS(check_conj_p2(7, 3), InvalidArgument);
}

TEST_CASE("dm symbols against exact square roots") {
    CHECK(dm_expected_symbol(5, 1) == -1);
    CHECK(dm_expected_symbol(5, 3) == -1);
    for (auto p : oracle::primes(5, 41)) {
        if (p % 4 != 1) continue;
        for (unsigned m : {1u, 3u}) {
            const mpz_class det = skew_det_exact(p, m);
            const mpz_class r = oracle::isqrt_or_neg(det);
            INFO("p=", p, " m=", m);
            REQUIRE(r >= 0);
            const long rm = mpz_class(r % p).get_si();
            const int sym = oracle::legendre(rm, p);
            CHECK(sym == dm_expected_symbol(p, m));
            const auto rep = dm_symbol(p, m);
            CHECK(rep.status == verify::Status::PASS);
            CHECK(rep.lhs.value == "[" + std::to_string(sym) + "," + std::to_string(sym) + "]");
        }
    }
    CHECK_THROWS_AS(dm_symbol(7, 1), InvalidArgument);
}

TEST_CASE("E(m) scans agree with a direct mod-p scan") {
    for (unsigned m : {5u, 7u, 9u}) {
        std::vector<std::uint64_t> want;
        for (auto p : oracle::primes(5, 120))
            if (p % 4 == 1 && oracle::det_mod_p(skew_rows(p, m, p), p) == 0) want.push_back(p);
        const auto got = scan_Em(m, 120, 2);
        CHECK(got.m == m);
        CHECK(got.members == want);
    }
    CHECK(scan_Em(5, 120).members == std::vector<std::uint64_t>{29});
    CHECK(scan_Em(7, 120).members == std::vector<std::uint64_t>{13, 53});
    CHECK(reported_Em(11) == std::optional<std::vector<std::uint64_t>>({17, 29}));
    CHECK(!reported_Em(3));
    CHECK_THROWS_AS(scan_Em(4, 100), InvalidArgument);
    CHECK_THROWS_AS(scan_Em(5, kMaxScanPrime + 1), ResourceLimit);
}

TEST_CASE("skew builds: Pfaffian squared equals determinant") {
    for (std::uint64_t n = 5; n <= 61; n += 4)
        for (unsigned m = 1; m <= 7; m += 2) {
            qmatrix::MatrixSpec spec;
            spec.family = qmatrix::Family::SKEW_D;
            spec.p = n;
            spec.exponent = m;
            spec.range = qmatrix::Range::POS;
            for (std::uint64_t q : {1000003ull, 998244353ull}) {
                const auto mm = qmatrix::build_mod(spec, q);
                const std::uint64_t pf = exactlin::pfaffian_mod(mm);
                const auto det = exactlin::det_mod(mm);
                CHECK(static_cast<unsigned __int128>(pf) * pf % q == det);
            }
            const auto small = exactlin::det_mod(qmatrix::build_mod(spec, 10007));
            CHECK(small == static_cast<std::uint64_t>(oracle::det_mod_p(skew_rows(n, m, 10007), 10007)));
        }
}

TEST_CASE("even exponent with n == 3 (mod 4) vanishes") {
    for (std::int64_t n : {7, 11, 15, 19, 27}) {
        for (unsigned m : {2u, 4u}) {
            qmatrix::MatrixSpec spec;
            spec.family = qmatrix::Family::SKEW_D;
            spec.p = static_cast<std::uint64_t>(n);
            spec.exponent = m;
            CHECK(exactlin::det_exact(qmatrix::build_int(spec)) == 0);
            CHECK(skew_det_exact(n, m) == 0);
        }
    }
}
