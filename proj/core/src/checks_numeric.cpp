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

// Checks decided numerically (trigonometric determinants, root-of-unity
// products) with exact cyclotomic evaluation wherever p is small enough.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "checks.hpp"
#include "qrdet/closed_form.hpp"
#include "qrdet/cyclotomic.hpp"
#include "qrdet/errors.hpp"

namespace qrdet::verify::detail {

namespace {

using closed::Monomial;
using closed::Object;
using realhp::HPReal;

// Extra bits carried by the product evaluations; results are rounded back.
constexpr mpfr_prec_t kProductGuard = 64;

BigFloat scaled_abs(const BigFloat& v, long exp2) {
    BigFloat e(abs(v), 64);
    mpfr_mul_2si(e.get(), e.get(), exp2, MPFR_RNDU);
    return e;
}

HPReal hp_sub(const HPReal& x, const HPReal& y) {
    BigFloat v = x.value - y.value;
    BigFloat e = x.err + y.err + scaled_abs(v, 1 - v.prec());
    return {v, BigFloat(e, 64)};
}

HPReal hp_mul(const HPReal& x, const HPReal& y) {
    BigFloat v = x.value * y.value;
    BigFloat e = abs(x.value) * y.err + abs(y.value) * x.err + x.err * y.err + scaled_abs(v, 1 - v.prec());
    return {v, BigFloat(e, 64)};
}

/// Collects lhs/rhs pairs compared under the realhp tolerance.
struct NumericAcc {
    explicit NumericAcc(mpfr_prec_t p) : prec(p), lerr(0L, 64), rerr(0L, 64) {}

    void add(const HPReal& l, const HPReal& r) {
        lv.push_back(l.value_string());
        rv.push_back(r.value_string());
        lerr = max(lerr, BigFloat(l.err, 64));
        rerr = max(rerr, BigFloat(r.err, 64));
        switch (realhp::compare(l, r, prec)) {
            case realhp::Agreement::EQUAL: break;
            case realhp::Agreement::DIFFERENT: different = true; break;
            case realhp::Agreement::INCONCLUSIVE: inconclusive = true; break;
        }
    }

    void finish(CheckReport& r) const {
        r.lhs = {lv.size() == 1 ? lv.front() : join(lv), lerr.to_string(6)};
        r.rhs = {rv.size() == 1 ? rv.front() : join(rv), rerr.to_string(6)};
        if (different) {
            r.status = Status::FAIL;
            if (r.reason.empty()) r.reason = "values differ beyond tolerance";
        } else if (inconclusive) {
            r.status = Status::ERROR;
            r.reason = "precision: error bound too large at " + std::to_string(prec) + " bits";
        } else if (r.reason.empty()) {
            r.status = Status::PASS;
        }
    }

    mpfr_prec_t prec;
    std::vector<std::string> lv, rv;
    BigFloat lerr, rerr;
    bool different = false;
    bool inconclusive = false;
};

mpfr_prec_t prec_for(std::uint64_t p, const RunOptions& opts) { return realhp::working_precision(p, opts.precision); }

std::vector<Params> when(bool ok, std::vector<Params> v) { return ok ? v : std::vector<Params>{}; }

std::vector<Params> sweep_a(std::uint64_t p) {
    const auto q = static_cast<std::int64_t>(ntheory::PrimeCtx(p).smallest_nonresidue());
    return {{{"a", 1}}, {{"a", q}}};
}

std::vector<Params> sweep_ab_symbol(std::uint64_t p, int ab_symbol) {
    std::vector<Params> out;
    for (auto& pr : sweep_ab(p))
        if (ntheory::legendre(pr.at("a") * pr.at("b"), p) == ab_symbol) out.push_back(pr);
    return out;
}

// ---------------------------------------------------------------------------
// Trigonometric determinant statements.

CheckReport run_trig(const std::string& id, std::uint64_t p, const Params& params, const RunOptions& opts) {
    const std::int64_t a = param(params, "a");
    const std::int64_t b = param(params, "b");
    const auto forms = closed::trig_forms(id, p, a, b);
    const mpfr_prec_t prec = prec_for(p, opts);
    auto r = make_report(id, p, params);
    NumericAcc acc(prec);
    for (const auto& f : forms) {
        const auto num = realhp::trig_affine(closed::object_spec(f.object, p, a, b), prec);
        const auto cf = realhp::closed_form_eval(f.form, p, prec);
        acc.add(num.c, cf.c);
        acc.add(num.d, cf.d);
        // For p == 1 (mod 4) the cotangent value is also tied to T1 by
        // C = T1 / (-p)^{(p-1)/4}.
        if (id == "eq_C" && p % 4 == 1 && f.object == Object::C1) {
            const auto t1 = realhp::trig_affine(closed::object_spec(Object::T1, p, a, b), prec);
            BigFloat scale(static_cast<long>(p), prec + kProductGuard);
            mpfr_pow_ui(scale.get(), scale.get(), (p - 1) / 4, MPFR_RNDN);
            if (((p - 1) / 4) % 2) scale = -scale;
            const HPReal inv{BigFloat(BigFloat(1L, prec + kProductGuard) / scale, prec),
                             scaled_abs(BigFloat(1L, prec) / scale, 2 - prec)};
            acc.add(num.c, hp_mul(t1.c, inv));
        }
    }
    acc.finish(r);
    return r;
}

// Every trigonometric object for (p, a, b): exact value in Q(zeta_p) against
// the numeric determinant and against the closed forms under embedding.
CheckReport run_tan_exact(std::uint64_t p, const Params& params, const RunOptions& opts) {
    require(p > 3, "p > 3");
    const std::int64_t a = param(params, "a");
    const std::int64_t b = param(params, "b");
    require(ntheory::legendre(a * b, p) != 0, "p does not divide ab");
    const mpfr_prec_t prec = prec_for(p, opts);
    auto r = make_report("tan_exact", p, params);

    std::vector<Object> objects{Object::T0, Object::T1, Object::TBAR};
    if (ntheory::legendre(-a * b, p) == -1) objects.insert(objects.end(), {Object::C1, Object::CBAR});

    std::vector<std::pair<Object, closed::AffineForm>> forms;
    for (const auto& id : closed::trig_statement_ids()) {
        try {
            for (const auto& f : closed::trig_forms(id, p, a, b)) forms.emplace_back(f.object, f.form);
        } catch (const HypothesisViolation&) {
        }
    }

    NumericAcc acc(prec);
    std::vector<std::string> mismatches;
    for (const Object o : objects) {
        const auto spec = closed::object_spec(o, p, a, b);
        const auto exact = cyclo::tan_det_exact(spec);
        const auto num = realhp::trig_affine(spec, prec);
        for (const auto* part : {&exact.c, &exact.d}) {
            const BigComplex z = part->to_complex(prec + kProductGuard);
            acc.add(part == &exact.c ? num.c : num.d,
                    HPReal(BigFloat(z.re, prec), scaled_abs(z.re, -prec) + BigFloat::pow2(-prec, 64)));
        }
        for (const auto& [fo, form] : forms) {
            if (fo != o) continue;
            if (!(exact.c == cyclo::embed(form.c, p)) || !(exact.d == cyclo::embed(form.d, p)))
                mismatches.push_back(closed::to_string(o));
        }
    }
    if (!mismatches.empty()) {
        r.status = Status::FAIL;
        r.reason = "closed form differs exactly for " + join(mismatches);
    }
    acc.finish(r);
    return r;
}

// ---------------------------------------------------------------------------
// Root-of-unity products.

struct Roots {
    Roots(std::uint64_t p, mpfr_prec_t prec) : p(p) {
        z.reserve(p);
        for (std::uint64_t r = 0; r < p; ++r) z.push_back(root_of_unity(static_cast<std::int64_t>(r), p, prec));
    }
    const BigComplex& at(std::int64_t e) const { return z[ntheory::least_residue(e, p)]; }
    std::uint64_t p;
    std::vector<BigComplex> z;
};

BigComplex combine(const BigComplex& x, const BigComplex& y, int sign) {
    return sign > 0 ? BigComplex(x.re + y.re, x.im + y.im) : BigComplex(x.re - y.re, x.im - y.im);
}

BigComplex one_minus(const Roots& z, std::int64_t e) { return combine(z.at(0), z.at(e), -1); }

BigComplex product_one_minus_num(const Roots& z, std::int64_t a, mpfr_prec_t prec) {
    const auto n = static_cast<std::int64_t>((z.p - 1) / 2);
    BigComplex out(BigFloat(1L, prec), BigFloat(0L, prec));
    for (std::int64_t k = 1; k <= n; ++k) out *= one_minus(z, a * k * k);
    return out;
}

BigComplex pair_product_num(const Roots& z, std::int64_t a, int sign, mpfr_prec_t prec) {
    const auto n = static_cast<std::int64_t>((z.p - 1) / 2);
    BigComplex out(BigFloat(1L, prec), BigFloat(0L, prec));
    for (std::int64_t j = 1; j <= n; ++j)
        for (std::int64_t k = j + 1; k <= n; ++k) out *= combine(z.at(a * j * j), z.at(a * k * k), sign);
    return out;
}

BigComplex grid_product_num(const Roots& z, std::int64_t a, std::int64_t b, mpfr_prec_t prec) {
    const auto n = static_cast<std::int64_t>((z.p - 1) / 2);
    BigComplex out(BigFloat(1L, prec), BigFloat(0L, prec));
    for (std::int64_t j = 1; j <= n; ++j)
        for (std::int64_t k = 1; k <= n; ++k) out *= one_minus(z, a * j * j + b * k * k);
    return out;
}

// The products have at most p^2 factors, each with relative error near
// 2^-(prec + guard); an error of |v| 2^-prec leaves a wide margin.
void add_complex(NumericAcc& acc, const BigComplex& v, const Monomial& m, std::uint64_t p, mpfr_prec_t prec) {
    const BigFloat mag = v.abs();
    const BigFloat err = scaled_abs(mag, -prec) + BigFloat::pow2(-prec, 64);
    Monomial real_part = m;
    real_part.times_i = false;
    const HPReal expect = realhp::evaluate(real_part, p, prec);
    const HPReal zero{BigFloat(0L, prec), BigFloat(0L, 64)};
    acc.add(HPReal(BigFloat(v.re, prec), err), m.times_i ? zero : expect);
    acc.add(HPReal(BigFloat(v.im, prec), err), m.times_i ? expect : zero);
}

bool exact_sized(std::uint64_t p) { return p <= cyclo::kMaxExactPrime; }

/// One product identity: exact in Q(zeta_p) for small p, numeric beyond.
struct ProductCase {
    Monomial closed;
    std::function<cyclo::CycloElt()> exact;
    std::function<BigComplex(const Roots&, mpfr_prec_t)> numeric;
};

CheckReport run_products(const std::string& id, std::uint64_t p, const Params& params, const RunOptions& opts,
                         const std::vector<ProductCase>& cases) {
    auto r = make_report(id, p, params);
    if (exact_sized(p)) {
        std::vector<std::string> lhs, rhs;
        for (const auto& c : cases) {
            lhs.push_back(cyclo::CycloValue{c.exact(), false}.to_string());
            rhs.push_back(cyclo::embed(c.closed, p).to_string());
        }
        set_exact(r, lhs.size() == 1 ? lhs.front() : join(lhs), rhs.size() == 1 ? rhs.front() : join(rhs));
        return r;
    }
    const mpfr_prec_t prec = prec_for(p, opts);
    const Roots z(p, prec + kProductGuard);
    NumericAcc acc(prec);
    for (const auto& c : cases) add_complex(acc, c.numeric(z, prec + kProductGuard), c.closed, p, prec);
    acc.finish(r);
    return r;
}

CheckReport run_lem41(std::uint64_t p, const Params& params, const RunOptions& opts) {
    require(p % 4 == 1, "p == 1 (mod 4)");
    const std::int64_t a = param(params, "a");
    return run_products("lem41", p, params, opts,
                        {{closed::one_minus_product(p, a), [&] { return cyclo::product_one_minus(p, a); },
                          [&](const Roots& z, mpfr_prec_t w) { return product_one_minus_num(z, a, w); }}});
}

CheckReport run_lem43(std::uint64_t p, const Params& params, const RunOptions& opts) {
    require(p > 3, "p > 3");
    require(p % 4 == 3, "p == 3 (mod 4)");
    const std::int64_t a = param(params, "a");
    return run_products(
        "lem43", p, params, opts,
        {{closed::one_minus_product(p, a), [&] { return cyclo::product_one_minus(p, a); },
          [&](const Roots& z, mpfr_prec_t w) { return product_one_minus_num(z, a, w); }},
         {closed::pair_diff_product(p, a), [&] { return cyclo::pair_products(p, a, cyclo::PairKind::DIFF); },
          [&](const Roots& z, mpfr_prec_t w) { return pair_product_num(z, a, -1, w); }},
         {closed::pair_sum_product(p, a), [&] { return cyclo::pair_products(p, a, cyclo::PairKind::SUM); },
          [&](const Roots& z, mpfr_prec_t w) { return pair_product_num(z, a, 1, w); }}});
}

CheckReport run_lem44(std::uint64_t p, const Params& params, const RunOptions& opts) {
    require(p > 3, "p > 3");
    const std::int64_t a = param(params, "a");
    const std::int64_t b = param(params, "b");
    const Monomial closed = closed::grid_product(p, a, b);
    return run_products("lem44", p, params, opts,
                        {{closed, [&] { return cyclo::grid_product(p, a, b); },
                          [&](const Roots& z, mpfr_prec_t w) { return grid_product_num(z, a, b, w); }}});
}

CheckReport run_aux_zeta(std::uint64_t p, const Params& params, const RunOptions& opts) {
    const std::int64_t a = param(params, "a");
    const std::int64_t b = param(params, "b");
    const Monomial closed = closed::pair_diff_product_ab(p, a, b);
    return run_products(
        "thm3aux_zeta", p, params, opts,
        {{closed,
          [&] { return cyclo::pair_products(p, a, cyclo::PairKind::DIFF) * cyclo::pair_products(p, b, cyclo::PairKind::DIFF); },
          [&](const Roots& z, mpfr_prec_t w) { return pair_product_num(z, a, -1, w) * pair_product_num(z, b, -1, w); }}});
}

CheckReport run_aux_cot(std::uint64_t p, const Params& params, const RunOptions& opts) {
    const std::int64_t a = param(params, "a");
    const std::int64_t b = param(params, "b");
    const Monomial closed = closed::cot_pair_product_ab(p, a, b);
    const mpfr_prec_t prec = prec_for(p, opts);
    const mpfr_prec_t work = prec + kProductGuard;
    auto r = make_report("thm3aux_cot", p, params);
    const auto n = static_cast<std::int64_t>((p - 1) / 2);
    BigFloat prod(1L, work);
    for (const std::int64_t c : {a, b}) {
        std::vector<BigFloat> cot;
        for (std::int64_t k = 1; k <= n; ++k)
            cot.push_back(realhp::trig_pi_frac(c * k * k, p, realhp::TrigKind::COT, work).value);
        for (std::int64_t j = 0; j < n; ++j)
            for (std::int64_t k = j + 1; k < n; ++k) prod *= cot[j] - cot[k];
    }
    // Differences of distinct cotangents at multiples of pi/p lose at most
    // about 3 log2(p) bits each; the guard bits absorb this.
    NumericAcc acc(prec);
    acc.add(HPReal(BigFloat(prod, prec), scaled_abs(prod, -prec) + BigFloat::pow2(-prec, 64)),
            realhp::evaluate(closed, p, prec));
    acc.finish(r);
    return r;
}

// Shift identity det[x + t]_{0..m} - det[t]_{0..m} = x det[t]_{1..m} prod_k t_{k0} t_{0k}
// for t_jk = tan(pi (a_j + b_k)/n), a_0 + b_0 = 0, on seeded random data with n = p.
CheckReport run_lem42(std::uint64_t p, const Params& params, const RunOptions& opts) {
    const std::int64_t seed = param(params, "seed");
    const mpfr_prec_t prec = std::max<mpfr_prec_t>(256, prec_for(p, opts));
    auto r = make_report("lem42", p, params);
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 1000003u + p);
    const auto lp = static_cast<std::int64_t>(p);
    std::uniform_int_distribution<std::int64_t> entry(-3 * lp, 3 * lp);
    std::uniform_int_distribution<std::size_t> size(1, std::min<std::size_t>(8, (p - 1) / 2));
    const std::size_t m = size(rng);
    std::vector<std::int64_t> av(m + 1), bv(m + 1);
    for (auto& v : av) v = entry(rng);
    for (auto& v : bv) v = entry(rng);
    bv[0] = -av[0];
    const long x = std::uniform_int_distribution<long>(-5, 5)(rng);

    const mpfr_prec_t work = prec + kProductGuard;
    std::vector<BigFloat> t;
    for (std::size_t j = 0; j <= m; ++j)
        for (std::size_t k = 0; k <= m; ++k)
            t.push_back(realhp::trig_pi_frac(av[j] + bv[k], p, realhp::TrigKind::TAN, work).value);
    const std::size_t w = m + 1;
    auto full = [&](long shift) {
        return realhp::det_hp(
            w, [&](std::size_t j, std::size_t k, mpfr_prec_t pr) { return BigFloat(t[j * w + k] + BigFloat(shift, work), pr); },
            prec);
    };
    const HPReal lhs = hp_sub(full(x), full(0));
    const HPReal minor = realhp::det_hp(
        m, [&](std::size_t j, std::size_t k, mpfr_prec_t pr) { return BigFloat(t[(j + 1) * w + k + 1], pr); }, prec);
    BigFloat factor(x, work);
    for (std::size_t k = 1; k <= m; ++k) factor *= t[k * w] * t[k];
    const HPReal rhs = hp_mul(minor, HPReal(BigFloat(factor, prec), scaled_abs(factor, 8 - prec)));
    NumericAcc acc(prec);
    acc.add(lhs, rhs);
    acc.finish(r);
    return r;
}

}  // namespace

std::vector<CheckDef> numeric_checks() {
    std::vector<CheckDef> out;
    for (const auto& id : closed::trig_statement_ids()) {
        out.push_back({id, "closed form of the trigonometric determinants (" + id + ")",
                       [](std::uint64_t p) { return when(p > 3, sweep_ab(p)); },
                       [id](std::uint64_t p, const Params& params, const RunOptions& opts) {
                           return run_trig(id, p, params, opts);
                       }});
    }
    out.push_back({"tan_exact", "trigonometric determinants computed exactly in Q(zeta_p)",
                   [](std::uint64_t p) { return when(p > 3 && p <= cyclo::kMaxExactPrime, sweep_ab(p)); },
                   run_tan_exact});
    out.push_back({"lem41", "prod (1 - zeta^{ak^2}) for p == 1 (mod 4)",
                   [](std::uint64_t p) { return when(p % 4 == 1, sweep_a(p)); }, run_lem41});
    out.push_back({"lem42", "tangent shift identity on random data",
                   [](std::uint64_t p) {
                       return when(p > 3, {{{"seed", 1}}, {{"seed", 2}}, {{"seed", 3}}});
                   },
                   run_lem42});
    out.push_back({"lem43", "products over zeta^{ak^2} for p == 3 (mod 4)",
                   [](std::uint64_t p) { return when(p > 3 && p % 4 == 3, sweep_a(p)); }, run_lem43});
    out.push_back({"lem44", "prod (1 - zeta^{aj^2+bk^2}) for p == 3 (mod 4), (ab/p) = 1",
                   [](std::uint64_t p) { return when(p > 3 && p % 4 == 3, sweep_ab_symbol(p, 1)); }, run_lem44});
    out.push_back({"thm3aux_zeta", "pair difference products for a and b, (ab/p) = -1",
                   [](std::uint64_t p) { return when(p % 4 == 1, sweep_ab_symbol(p, -1)); }, run_aux_zeta});
    out.push_back({"thm3aux_cot", "cotangent pair difference products for a and b, (ab/p) = -1",
                   [](std::uint64_t p) { return when(p % 4 == 1, sweep_ab_symbol(p, -1)); }, run_aux_cot});
    return out;
}

}  // namespace qrdet::verify::detail
