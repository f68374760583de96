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

#include "qrdet/realhp.hpp"

#include <cmath>
#include <vector>

#include "qrdet/errors.hpp"
#include "qrdet/ntheory.hpp"
#include "qrdet/quadfield.hpp"

namespace qrdet::realhp {

namespace {

constexpr mpfr_prec_t kGuard = 32;

struct Elimination {
    BigFloat det;
    BigFloat hadamard;
};

Elimination eliminate(std::size_t n, const EntryFn& entry, mpfr_prec_t prec) {
    std::vector<BigFloat> a;
    a.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a.emplace_back(entry(r, c, prec), prec);

    // Product of row norms, a bound for |det| used to scale rounding errors.
    BigFloat hadamard(1L, 64);
    BigFloat sq(64), acc(64);
    for (std::size_t r = 0; r < n; ++r) {
        mpfr_set_zero(acc.get(), 1);
        for (std::size_t c = 0; c < n; ++c) {
            mpfr_sqr(sq.get(), a[r * n + c].get(), MPFR_RNDU);
            mpfr_add(acc.get(), acc.get(), sq.get(), MPFR_RNDU);
        }
        mpfr_sqrt(acc.get(), acc.get(), MPFR_RNDU);
        mpfr_mul(hadamard.get(), hadamard.get(), acc.get(), MPFR_RNDU);
    }

    BigFloat det(1L, prec);
    BigFloat factor(prec), tmp(prec);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (mpfr_cmpabs(a[i * n + k].get(), a[piv * n + k].get()) > 0) piv = i;
        if (a[piv * n + k].is_zero()) return {BigFloat(0L, prec), hadamard};
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) mpfr_swap(a[k * n + c].get(), a[piv * n + c].get());
            mpfr_neg(det.get(), det.get(), MPFR_RNDN);
        }
        mpfr_mul(det.get(), det.get(), a[k * n + k].get(), MPFR_RNDN);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i * n + k].is_zero()) continue;
            mpfr_div(factor.get(), a[i * n + k].get(), a[k * n + k].get(), MPFR_RNDN);
            for (std::size_t c = k + 1; c < n; ++c) {
                mpfr_mul(tmp.get(), factor.get(), a[k * n + c].get(), MPFR_RNDN);
                mpfr_sub(a[i * n + c].get(), a[i * n + c].get(), tmp.get(), MPFR_RNDN);
            }
        }
    }
    return {det, hadamard};
}

BigFloat relative_bound(const BigFloat& magnitude, long exp2) {
    BigFloat e = abs(magnitude);
    mpfr_mul_2si(e.get(), e.get(), exp2, MPFR_RNDU);
    return BigFloat(e, 64);
}

}  // namespace

mpfr_prec_t working_precision(std::uint64_t p, mpfr_prec_t requested) {
    if (requested > 0) return requested;
    return quadfield::default_precision(p);
}

HPReal trig_pi_frac(std::int64_t r, std::uint64_t p, TrigKind kind, mpfr_prec_t prec) {
    const std::uint64_t rr = ntheory::least_residue(r, p);
    if (kind == TrigKind::COT && rr == 0) throw InvalidArgument("cot(pi r/p) has a pole at p | r");
    if (rr == 0) return {BigFloat(0L, prec), BigFloat(0L, 64)};
    const mpfr_prec_t work = prec + kGuard;
    BigFloat angle = BigFloat::pi(work);
    mpfr_mul_ui(angle.get(), angle.get(), static_cast<unsigned long>(rr), MPFR_RNDN);
    mpfr_div_ui(angle.get(), angle.get(), static_cast<unsigned long>(p), MPFR_RNDN);
    BigFloat v(work);
    if (kind == TrigKind::TAN)
        mpfr_tan(v.get(), angle.get(), MPFR_RNDN);
    else
        mpfr_cot(v.get(), angle.get(), MPFR_RNDN);
    BigFloat out(v, prec);
    return {out, relative_bound(out, 4 - prec)};
}

HPReal det_hp(std::size_t n, const EntryFn& entry, mpfr_prec_t prec) {
    if (n == 0) return {BigFloat(1L, prec), BigFloat(0L, 64)};
    const Elimination lo = eliminate(n, entry, prec);
    const Elimination hi = eliminate(n, entry, 2 * prec);
    BigFloat err(64);
    mpfr_sub(err.get(), hi.det.get(), lo.det.get(), MPFR_RNDU);
    mpfr_abs(err.get(), err.get(), MPFR_RNDU);
    const long growth = static_cast<long>(std::ceil(std::log2(static_cast<double>(n) + 1.0))) + 8;
    BigFloat propagated = relative_bound(hi.hadamard, growth - 2 * prec);
    mpfr_add(err.get(), err.get(), propagated.get(), MPFR_RNDU);
    HPReal out(BigFloat(hi.det, prec), err);
    BigFloat eight_err = err;
    mpfr_mul_ui(eight_err.get(), eight_err.get(), 8, MPFR_RNDU);
    out.unreliable = mpfr_cmpabs(out.value.get(), eight_err.get()) < 0;
    return out;
}

HPReal trig_det(const qmatrix::MatrixSpec& spec, const mpq_class& x, mpfr_prec_t prec) {
    if (spec.family != qmatrix::Family::TRIG_TAN && spec.family != qmatrix::Family::TRIG_COT)
        throw InvalidArgument("trig_det: spec is not trigonometric");
    qmatrix::validate(spec);
    const TrigKind kind = spec.family == qmatrix::Family::TRIG_TAN ? TrigKind::TAN : TrigKind::COT;
    const std::uint64_t p = spec.p;
    const auto start = static_cast<std::int64_t>(qmatrix::range_start(spec.range));
    const std::uint64_t ar = ntheory::least_residue(spec.a, p);
    const std::uint64_t br = ntheory::least_residue(spec.b, p);

    // Residue-indexed tables, one per precision.
    std::vector<BigFloat> table;
    mpfr_prec_t table_prec = 0;
    EntryFn entry = [&](std::size_t row, std::size_t col, mpfr_prec_t pr) -> BigFloat {
        if (spec.bar && row == 0) return BigFloat(1L, pr);
        if (table_prec != pr) {
            table.assign(p, BigFloat(0L, pr));
            for (std::uint64_t r = 1; r < p; ++r) table[r] = trig_pi_frac(static_cast<std::int64_t>(r), p, kind, pr).value;
            table_prec = pr;
        }
        const auto j = static_cast<std::uint64_t>(start) + row;
        const auto k = static_cast<std::uint64_t>(start) + col;
        const std::uint64_t r = (ntheory::mul_mod(ar, j * j % p, p) + ntheory::mul_mod(br, k * k % p, p)) % p;
        if (r == 0 && kind == TrigKind::COT) throw InvalidArgument("trig_det: cotangent pole in matrix entry");
        BigFloat v(x, pr);
        mpfr_add(v.get(), v.get(), table[r].get(), MPFR_RNDN);
        return v;
    };
    return det_hp(qmatrix::dimension(spec), entry, prec);
}

Agreement compare(const HPReal& lhs, const HPReal& rhs, mpfr_prec_t prec) {
    BigFloat scale(abs(rhs.value), 64);
    if (mpfr_cmp_ui(scale.get(), 1) < 0) mpfr_set_ui(scale.get(), 1, MPFR_RNDN);
    BigFloat tol(scale, 64);
    mpfr_mul_2si(tol.get(), tol.get(), -static_cast<long>(prec / 2), MPFR_RNDU);
    BigFloat errs(64);
    mpfr_add(errs.get(), lhs.err.get(), rhs.err.get(), MPFR_RNDU);
    mpfr_mul_ui(errs.get(), errs.get(), 64, MPFR_RNDU);
    if (errs > tol) tol = errs;
    BigFloat limit(scale, 64);
    mpfr_mul_2si(limit.get(), limit.get(), -64, MPFR_RNDN);
    const mpfr_prec_t work = std::max(lhs.prec(), rhs.prec());
    BigFloat diff(work);
    mpfr_sub(diff.get(), lhs.value.get(), rhs.value.get(), MPFR_RNDN);
    mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
    if (tol > limit) return Agreement::INCONCLUSIVE;
    return diff <= tol ? Agreement::EQUAL : Agreement::DIFFERENT;
}

AffineReal affine_extract(const std::function<HPReal(long)>& eval, mpfr_prec_t prec) {
    HPReal f0 = eval(0);
    HPReal f1 = eval(1);
    HPReal fm1 = eval(-1);
    AffineReal out;
    out.c = f0;
    BigFloat dv = f1.value - f0.value;
    BigFloat de(64);
    mpfr_add(de.get(), f1.err.get(), f0.err.get(), MPFR_RNDU);
    out.d = HPReal(dv, de);
    HPReal predicted(f0.value - dv, BigFloat(64));
    mpfr_add(predicted.err.get(), f0.err.get(), de.get(), MPFR_RNDU);
    switch (compare(fm1, predicted, prec)) {
        case Agreement::EQUAL:
            break;
        case Agreement::DIFFERENT:
            throw InternalError("affinity certificate failed: f(-1) = " + fm1.value_string(20) + " but c - d = " +
                                predicted.value_string(20));
        case Agreement::INCONCLUSIVE:
            throw PrecisionFailure("affinity certificate inconclusive at " + std::to_string(prec) + " bits");
    }
    return out;
}

AffineReal trig_affine(const qmatrix::MatrixSpec& spec, mpfr_prec_t prec) {
    return affine_extract([&](long x) { return trig_det(spec, mpq_class(x), prec); }, prec);
}

HPReal evaluate(const closed::Monomial& m, std::uint64_t p, mpfr_prec_t prec) {
    if (m.times_i) throw InvalidArgument("evaluate: monomial is not real");
    if (m.is_zero()) return {BigFloat(0L, prec), BigFloat(0L, 64)};
    const mpfr_prec_t work = prec + 64;
    BigFloat v = BigFloat::pow2(m.pow2, work);
    if (m.half_p != 0) {
        BigFloat root = sqrt(BigFloat(static_cast<long>(p), work));
        mpfr_pow_si(root.get(), root.get(), m.half_p, MPFR_RNDN);
        v *= root;
    }
    if (m.eps_mult != 0) {
        const auto& cd = quadfield::class_data(p);
        if (!cd.eps_h) throw InvalidArgument("evaluate: eps_p is defined for p == 1 (mod 4) only");
        v *= cd.eps_h->pow(m.eps_mult).value(work);
    }
    if (m.sign < 0) v = -v;
    BigFloat out(v, prec);
    return {out, relative_bound(out, 1 - prec)};
}

AffineReal closed_form_eval(const closed::AffineForm& form, std::uint64_t p, mpfr_prec_t prec) {
    return {evaluate(form.c, p, prec), evaluate(form.d, p, prec)};
}

}  // namespace qrdet::realhp
