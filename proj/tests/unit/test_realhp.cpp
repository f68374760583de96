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
#include "qrdet/closed_form.hpp"
#include "qrdet/errors.hpp"
#include "qrdet/realhp.hpp"

using namespace qrdet;
using namespace qrdet::realhp;
using closed::Object;

namespace {

long double ld(const BigFloat& x) { return mpfr_get_ld(x.get(), MPFR_RNDN); }

bool near(const HPReal& x, long double want, long double rel = 1e-15L) {
    return std::fabs(ld(x.value) - want) <= rel * std::max<long double>(1, std::fabs(want));
}

HPReal exact(long v, mpfr_prec_t prec) { return {BigFloat(v, prec), BigFloat(0L, 64)}; }

// Geometry of an object's matrix, for the long double oracle.
struct Shape {
    int from;
    bool bar;
    bool cot;
};

Shape shape(Object o) {
    return {(o == Object::T1 || o == Object::C1) ? 1 : 0, o == Object::TBAR || o == Object::CBAR,
            o == Object::C1 || o == Object::CBAR};
}

}  // namespace

TEST_CASE("trig_pi_frac") {
    const mpfr_prec_t prec = 256;
    CHECK(near(trig_pi_frac(1, 3, TrigKind::TAN, prec), std::sqrt(3.0L)));
    CHECK(trig_pi_frac(0, 7, TrigKind::TAN, prec).value.is_zero());
    CHECK(trig_pi_frac(14, 7, TrigKind::TAN, prec).value.is_zero());
    CHECK(near(trig_pi_frac(1, 3, TrigKind::COT, prec), 1 / std::sqrt(3.0L)));
    CHECK(near(trig_pi_frac(-8, 3, TrigKind::COT, prec), 1 / std::sqrt(3.0L)));
    CHECK_THROWS_AS(trig_pi_frac(7, 7, TrigKind::COT, prec), InvalidArgument);
    for (auto p : oracle::primes(3, 101))
        for (std::int64_t r = -3; r < 2 * static_cast<std::int64_t>(p); r += 5) {
            if (r % static_cast<std::int64_t>(p) == 0) continue;
            const auto lo = trig_pi_frac(r, p, TrigKind::TAN, 256);
            const auto hi = trig_pi_frac(r, p, TrigKind::TAN, 512);
            CHECK(near(lo, std::tan(oracle::pi() * static_cast<long double>(r) / static_cast<long double>(p)), 1e-14L));
            // The bound must cover the gap to a far more accurate value.
            CHECK(abs(lo.value - hi.value) <= lo.err);
        }
}

TEST_CASE("det_hp") {
    const auto id = det_hp(4, [](std::size_t r, std::size_t c, mpfr_prec_t prec) { return BigFloat(r == c ? 1L : 0L, prec); }, 256);
    CHECK(near(id, 1));
    CHECK(!id.unreliable);
    const auto sing = det_hp(3, [](std::size_t, std::size_t, mpfr_prec_t prec) { return BigFloat(2L, prec); }, 256);
    CHECK(sing.unreliable);
}

TEST_CASE("trig determinants at p = 7") {
    const auto prec = working_precision(7);
    CHECK(prec == 256);
    CHECK(working_precision(101) == 1212);
    CHECK(working_precision(101, 300) == 300);
    CHECK(near(trig_det(closed::object_spec(Object::T0, 7, 1, 1), 0, prec), 392));
    for (long x : {0L, 1L, 5L}) CHECK(near(trig_det(closed::object_spec(Object::C1, 7, 1, 1), x, prec), -8 / std::sqrt(7.0L)));
}

TEST_CASE("affine_extract") {
    const auto prec = working_precision(7);
    const auto t = trig_affine(closed::object_spec(Object::T1, 7, 1, 1), prec);
    CHECK(near(t.c, 0));
    CHECK(near(t.d, -56));
    const auto u = trig_affine(closed::object_spec(Object::T1, 7, 1, 3), prec);
    CHECK(near(u.c, 0));
    CHECK(near(u.d, 7));
    const auto k = affine_extract([&](long) { return exact(5, prec); }, prec);
    CHECK(k.d.value.is_zero());
    CHECK_THROWS_AS(affine_extract([&](long x) { return exact(x * x, prec); }, prec), InternalError);
}

TEST_CASE("compare") {
    const mpfr_prec_t prec = 256;
    CHECK(compare(exact(3, prec), exact(3, prec), prec) == Agreement::EQUAL);
    CHECK(compare(exact(3, prec), exact(4, prec), prec) == Agreement::DIFFERENT);
    HPReal fuzzy{BigFloat(3L, prec), BigFloat(1L, 64)};
    CHECK(compare(fuzzy, exact(3, prec), prec) == Agreement::INCONCLUSIVE);
}

TEST_CASE("closed forms against long double determinants") {
    // Every statement, every prime 5 < p <= 23 and a spread of (a, b).
    int compared = 0;
    for (const auto& id : closed::trig_statement_ids())
        for (auto p : oracle::primes(7, 23)) {
            const auto lp = static_cast<std::int64_t>(p);
            const auto prec = working_precision(p);
            for (std::int64_t a = 1; a < std::min<std::int64_t>(lp, 6); ++a)
                for (std::int64_t b = 1; b < std::min<std::int64_t>(lp, 6); ++b) {
                    std::vector<closed::ObjectForm> forms;
                    try {
                        forms = closed::trig_forms(id, p, a, b);
                    } catch (const HypothesisViolation&) {
                        continue;
                    }
                    for (const auto& f : forms) {
                        const auto sh = shape(f.object);
                        const long double f0 = oracle::trig_det(lp, a, b, 0, sh.from, sh.bar, sh.cot);
                        const long double f1 = oracle::trig_det(lp, a, b, 1, sh.from, sh.bar, sh.cot);
                        const auto cf = closed_form_eval(f.form, p, prec);
                        const long double scale = std::max({1.0L, std::fabs(f0), std::fabs(f1)});
                        INFO(id, " p=", p, " a=", a, " b=", b, " object=", closed::to_string(f.object));
                        CHECK(std::fabs(ld(cf.c.value) - f0) <= 1e-10L * scale);
                        CHECK(std::fabs(ld(cf.d.value) - (f1 - f0)) <= 1e-10L * scale);
                        ++compared;
                    }
                }
        }
    CHECK(compared > 300);
}

TEST_CASE("barT at p = 7 is -8 * 7 sqrt 7") {
    const auto forms = closed::trig_forms("thm14", 7, 1, 1);
    REQUIRE(!forms.empty());
    const auto cf = closed_form_eval(forms.front().form, 7, 256);
    CHECK(near(cf.c, -56 * std::sqrt(7.0L), 1e-15L));
    CHECK(std::fabs(oracle::trig_det(7, 1, 1, 0, 0, true, false) + 56 * std::sqrt(7.0L)) < 1e-9L);
}

TEST_CASE("T0 vanishes at x = 0 for p == 1 (mod 4)") {
    for (auto p : oracle::primes(5, 61)) {
        if (p % 4 != 1) continue;
        const auto prec = working_precision(p);
        for (std::int64_t b : {1, 2, 3}) {
            const auto v = trig_det(closed::object_spec(Object::T0, p, 1, b), 0, prec);
            CHECK(abs(v.value) <= BigFloat(64L, 64) * v.err);
        }
    }
}

TEST_CASE("precision doubling stays inside the error bound") {
    for (auto p : {11u, 29u, 43u}) {
        const auto spec = closed::object_spec(Object::T1, p, 1, 2);
        const auto lo = trig_det(spec, 1, working_precision(p));
        const auto hi = trig_det(spec, 1, 2 * working_precision(p));
        CHECK(abs(lo.value - hi.value) <= lo.err + hi.err);
    }
}
