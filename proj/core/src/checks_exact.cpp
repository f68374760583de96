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

// Checks decided by exact engines: bigint and mod-p determinants,
// permanents and residue bookkeeping.

#include <algorithm>
#include <string>
#include <vector>

#include "checks.hpp"
#include "qrdet/errors.hpp"
#include "qrdet/exactlin.hpp"
#include "qrdet/qmatrix.hpp"
#include "qrdet/quadfield.hpp"

namespace qrdet::verify::detail {

namespace {

using exactlin::ModMatrix;
using qmatrix::Family;
using qmatrix::MatrixSpec;
using qmatrix::Range;
using ntheory::PrimeCtx;

std::uint64_t mod(const mpz_class& v, std::uint64_t p) { return mpz_fdiv_ui(v.get_mpz_t(), p); }

std::string res(std::int64_t v, std::uint64_t p) { return to_str(static_cast<std::int64_t>(ntheory::least_residue(v, p))); }

int symbol_of(const mpz_class& v, std::uint64_t p) { return ntheory::legendre(static_cast<std::int64_t>(mod(v, p)), p); }

int sign_pow(std::uint64_t e) { return e % 2 ? -1 : 1; }

MatrixSpec spec_of(Family f, std::uint64_t p, std::int64_t d, Range range, unsigned exponent = 1, bool bar = false) {
    MatrixSpec s;
    s.family = f;
    s.p = p;
    s.d = d;
    s.range = range;
    s.exponent = exponent;
    s.bar = bar;
    return s;
}

mpz_class det_int(const MatrixSpec& s) { return exactlin::det_multimodular(qmatrix::build_int(s)); }

std::uint64_t det_p(const MatrixSpec& s) { return exactlin::det_mod(qmatrix::build_mod(s)); }

std::int64_t require_d_unit(std::uint64_t p, const Params& params) {
    const std::int64_t d = param(params, "d");
    require(ntheory::legendre(d, p) != 0, "p does not divide d");
    return d;
}

std::int64_t require_neg_d_nonresidue(std::uint64_t p, const Params& params) {
    const std::int64_t d = param(params, "d");
    require(ntheory::legendre(-d, p) == -1, "(-d/p) = -1");
    return d;
}

// (1/4) prod_{r=1}^{(p-3)/4} (r + 1/4)^2 mod p, for p = 3 (mod 4).
std::uint64_t quarter_square_product(std::uint64_t p) {
    const std::uint64_t q4 = ntheory::inv_mod(4, p);
    std::uint64_t prod = q4;
    for (std::uint64_t r = 1; r <= (p - 3) / 4; ++r) {
        const std::uint64_t t = (r + q4) % p;
        prod = ntheory::mul_mod(prod, ntheory::mul_mod(t, t, p), p);
    }
    return prod;
}

mpq_class frac(long num, long den) {
    mpq_class q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

std::vector<Params> when(bool ok, std::vector<Params> v) { return ok ? v : std::vector<Params>{}; }

// ---------------------------------------------------------------------------

CheckReport run_S_symbol(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t d = require_d_unit(p, params);
    auto r = make_report("thm_intro_S_symbol", p, params);
    const int lhs = symbol_of(det_int(spec_of(Family::LEGENDRE, p, d, Range::POS)), p);
    const int rhs = ntheory::legendre(d, p) == 1 ? ntheory::legendre(-1, p) : 0;
    set_exact(r, symbol_str(lhs), symbol_str(rhs));
    return r;
}

CheckReport run_T_symbol(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t d = require_d_unit(p, params);
    auto r = make_report("thm_intro_T_symbol", p, params);
    const int lhs = symbol_of(det_int(spec_of(Family::LEGENDRE, p, d, Range::FULL)), p);
    const int rhs = ntheory::legendre(d, p) == 1 ? ntheory::legendre(2, p) : 1;
    set_exact(r, symbol_str(lhs), symbol_str(rhs));
    return r;
}

CheckReport run_gsz(std::uint64_t p, const Params& params, const RunOptions&) {
    require(p > 3, "p > 3");
    const std::int64_t d = param(params, "d");
    auto r = make_report("thm_GSZ", p, params);
    const mpz_class det = det_int(spec_of(Family::CHAR_POWER, p, d, Range::FULL, 1));
    set_exact(r, to_str(static_cast<std::int64_t>(mod(det, p))), "0");
    return r;
}

CheckReport run_wsw(std::uint64_t p, const Params& params, const RunOptions&) {
    require(p > 3, "p > 3");
    const std::int64_t d = require_d_unit(p, params);
    auto r = make_report("thm_WSW", p, params);
    const auto e = static_cast<unsigned>((p + 1) / 2);
    const int lhs = symbol_of(det_int(spec_of(Family::POWER, p, d, Range::POS, e)), p);
    const int ld = ntheory::legendre(d, p);
    int rhs;
    if (p % 4 == 1) {
        rhs = ld == 1 ? 1 : sign_pow((p - 1) / 4);
    } else {
        const std::uint64_t h = quadfield::class_number_imag(p);
        rhs = (ld == 1 ? 1 : sign_pow((p + 1) / 4)) * sign_pow((h - 1) / 2);
    }
    set_exact(r, symbol_str(lhs), symbol_str(rhs));
    return r;
}

CheckReport run_thm11_i(std::uint64_t p, const Params& params, const RunOptions&) {
    require(p > 3, "p > 3");
    const std::int64_t d = require_d_unit(p, params);
    auto r = make_report("thm11_i", p, params);
    const mpz_class sbar = det_int(spec_of(Family::LEGENDRE, p, d, Range::POS, 1, true));
    if (ntheory::legendre(d, p) == 1) {
        const mpz_class s = det_int(spec_of(Family::LEGENDRE, p, d, Range::POS));
        set_exact(r, sbar.get_str(), mpz_class(-s).get_str());
        return r;
    }
    const mpz_class t = det_int(spec_of(Family::LEGENDRE, p, d, Range::FULL));
    const mpz_class tail = det_int(spec_of(Family::LEGENDRE, p, d, Range::TAIL));
    const auto half = static_cast<long>((p - 1) / 2);
    const mpz_class l1 = sbar * static_cast<long>(p - 1);
    const mpz_class r1 = 2 * t;
    const mpz_class r2 = half * tail;
    set_exact(r, join({l1.get_str(), sbar.get_str()}), join({r1.get_str(), r2.get_str()}));
    return r;
}

// T_n(d,p) mod p for every n in the open range, reusing elementwise powers.
CheckReport run_thm11_ii(std::uint64_t p, const Params& params, const RunOptions&) {
    require(p > 3, "p > 3");
    const std::uint64_t lo = (p - 1) / 2 + 1;
    const std::uint64_t hi = p - 2;
    std::uint64_t n_only = 0;
    if (params.count("n")) {
        const std::int64_t n = param(params, "n");
        require(n >= static_cast<std::int64_t>(lo) && n <= static_cast<std::int64_t>(hi), "(p-1)/2 < n < p-1");
        n_only = static_cast<std::uint64_t>(n);
    }
    std::vector<std::int64_t> ds;
    if (params.count("d")) {
        ds.push_back(param(params, "d"));
    } else {
        for (std::uint64_t d = 1; d < p; ++d) ds.push_back(static_cast<std::int64_t>(d));
    }
    auto r = make_report("thm11_ii", p, params);
    const std::size_t dim = (p - 1) / 2 + 1;
    std::vector<std::string> lhs, rhs;
    for (const std::int64_t d : ds) {
        std::vector<std::uint64_t> base(dim * dim), cur(dim * dim);
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k)
                base[j * dim + k] = ntheory::least_residue(static_cast<std::int64_t>(j * j) + d * static_cast<std::int64_t>(k * k), p);
        for (std::size_t t = 0; t < base.size(); ++t) cur[t] = ntheory::pow_mod(base[t], lo, p);
        for (std::uint64_t n = lo; n <= hi; ++n) {
            if (n > lo)
                for (std::size_t t = 0; t < base.size(); ++t) cur[t] = ntheory::mul_mod(cur[t], base[t], p);
            if (n_only && n != n_only) continue;
            ModMatrix m(dim, p);
            for (std::size_t j = 0; j < dim; ++j)
                for (std::size_t k = 0; k < dim; ++k) m.set_residue(j, k, cur[j * dim + k]);
            lhs.push_back(to_str(static_cast<std::int64_t>(exactlin::det_mod(m))));
            rhs.push_back("0");
        }
    }
    set_exact(r, join(lhs), join(rhs));
    return r;
}

CheckReport run_s_p2_const(std::uint64_t p, const Params& params, const RunOptions&) {
    require(p % 4 == 3, "p == 3 (mod 4)");
    auto r = make_report("s_p2_const", p, params);
    const auto e = static_cast<unsigned>(p - 2);
    const std::uint64_t s = mod(det_int(spec_of(Family::POWER, p, 1, Range::POS, e)), p);
    const std::uint64_t rec = det_p(spec_of(Family::RECIP, p, 1, Range::POS));
    const std::string two = res(ntheory::legendre(2, p), p);
    set_exact(r, join({to_str(static_cast<std::int64_t>(s)), to_str(static_cast<std::int64_t>(rec))}), join({two, two}));
    return r;
}

CheckReport run_thm12_i(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t d = require_neg_d_nonresidue(p, params);
    auto r = make_report("thm12_i", p, params);
    const auto e = static_cast<unsigned>(p - 2);
    const std::uint64_t s = det_p(spec_of(Family::POWER, p, d, Range::POS, e));
    const std::uint64_t rec = det_p(spec_of(Family::RECIP, p, d, Range::POS));
    std::string expect;
    if (p % 4 == 1) {
        expect = to_str(static_cast<std::int64_t>(ntheory::pow_mod(ntheory::least_residue(d, p), (p - 1) / 4, p)));
    } else {
        expect = res(sign_pow((p + 1) / 4), p);
    }
    set_exact(r, join({symbol_str(ntheory::legendre(static_cast<std::int64_t>(s), p)), to_str(static_cast<std::int64_t>(rec))}),
              join({symbol_str(ntheory::legendre(2, p)), expect}));
    return r;
}

CheckReport run_thm12_ii(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t d = require_neg_d_nonresidue(p, params);
    auto r = make_report("thm12_ii", p, params);
    const auto e = static_cast<unsigned>(p - 3);
    const std::uint64_t s = det_p(spec_of(Family::POWER, p, d, Range::POS, e));
    std::vector<std::string> lhs{symbol_str(ntheory::legendre(static_cast<std::int64_t>(s), p))};
    std::vector<std::string> rhs{symbol_str((1 - ntheory::legendre(-1, p)) / 2)};
    if (p % 4 == 3) {
        lhs.push_back(to_str(static_cast<std::int64_t>(det_p(spec_of(Family::RECIP_SQ, p, d, Range::POS)))));
        rhs.push_back(to_str(static_cast<std::int64_t>(quarter_square_product(p))));
    }
    set_exact(r, join(lhs), join(rhs));
    return r;
}

// The congruence is compared in the form (-1)^{n-1} prod_{r=1}^{n} (r + 1/4),
// and for p = 3 (mod 4) also as (-1)^{(p+1)/4} (1/4) prod_{r<=(p-3)/4} (r + 1/4)^2.
CheckReport run_lemma_per(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t d = require_neg_d_nonresidue(p, params);
    auto r = make_report("lemma_per", p, params);
    const std::uint64_t per = exactlin::permanent_ryser(qmatrix::build_mod(spec_of(Family::RECIP, p, d, Range::POS)));
    const std::uint64_t n = (p - 1) / 2;
    const std::uint64_t q4 = ntheory::inv_mod(4, p);
    std::uint64_t prod = 1;
    for (std::uint64_t k = 1; k <= n; ++k) prod = ntheory::mul_mod(prod, (k + q4) % p, p);
    if ((n - 1) % 2) prod = (p - prod) % p;
    std::vector<std::string> lhs{to_str(static_cast<std::int64_t>(per))};
    std::vector<std::string> rhs{to_str(static_cast<std::int64_t>(prod))};
    if (p % 4 == 3) {
        std::uint64_t split = quarter_square_product(p);
        if (((p + 1) / 4) % 2) split = (p - split) % p;
        lhs.push_back(lhs.front());
        rhs.push_back(to_str(static_cast<std::int64_t>(split)));
    } else {
        lhs.push_back(lhs.front());
        rhs.push_back("0");
    }
    set_exact(r, join(lhs), join(rhs));
    return r;
}

std::vector<Params> sweep_thm3m(std::uint64_t p) {
    std::vector<Params> out;
    for (std::uint64_t m : ntheory::divisors(p - 1)) {
        const std::uint64_t r = p % (2 * m);
        if (r == 1 % (2 * m) || r == (1 + m) % (2 * m)) out.push_back({{"m", static_cast<std::int64_t>(m)}});
    }
    return out;
}

CheckReport run_thm3m(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t m = param(params, "m");
    require(m > 0 && (p - 1) % static_cast<std::uint64_t>(m) == 0, "m divides p-1");
    const auto um = static_cast<std::uint64_t>(m);
    const std::uint64_t rm = p % (2 * um);
    require(rm == 1 % (2 * um) || rm == (1 + um) % (2 * um), "p == 1 or 1+m (mod 2m)");
    auto r = make_report("thm3m", p, params);
    const auto rep = qmatrix::coset_difference_product(p, um);
    set_exact(r, to_str(static_cast<std::int64_t>(rep.lhs)), to_str(static_cast<std::int64_t>(rep.rhs)));
    return r;
}

CheckReport run_cor3_2(std::uint64_t p, const Params& params, const RunOptions&) {
    auto r = make_report("cor3_2", p, params);
    const PrimeCtx ctx(p);
    std::vector<std::uint64_t> qr, qnr;
    for (std::uint64_t t = 1; t < p; ++t) (ctx.chi_residue(t) == 1 ? qr : qnr).push_back(t);
    std::uint64_t prod = 1;
    for (const auto* v : {&qr, &qnr})
        for (std::size_t j = 0; j < v->size(); ++j)
            for (std::size_t k = j + 1; k < v->size(); ++k) prod = ntheory::mul_mod(prod, (*v)[k] - (*v)[j], p);
    std::uint64_t expect = 1;
    if (p % 4 == 1) {
        std::uint64_t nf = 1;
        for (std::uint64_t k = 2; k <= ctx.n(); ++k) nf = ntheory::mul_mod(nf, k, p);
        expect = (p - nf) % p;
    }
    set_exact(r, to_str(static_cast<std::int64_t>(prod)), to_str(static_cast<std::int64_t>(expect)));
    return r;
}

std::vector<Params> sweep_spab(std::uint64_t p) {
    const PrimeCtx ctx(p);
    const auto q = static_cast<std::int64_t>(ctx.smallest_nonresidue());
    const auto lp = static_cast<std::int64_t>(p);
    std::vector<Params> out;
    for (std::int64_t a : {std::int64_t{1}, 4 % lp}) {
        for (std::int64_t b : {q, 4 * q % lp}) {
            Params pr{{"a", a}, {"b", b}};
            if (std::find(out.begin(), out.end(), pr) == out.end()) out.push_back(pr);
        }
    }
    return out;
}

CheckReport run_spab(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t a = param(params, "a");
    const std::int64_t b = param(params, "b");
    require(ntheory::legendre(a, p) == 1, "(a/p) = 1");
    require(ntheory::legendre(b, p) == -1, "(b/p) = -1");
    auto r = make_report("lemma_spab", p, params);
    const int lhs = ntheory::sp_sign(a, p) * ntheory::sp_sign(b, p);
    const int rhs = p % 4 == 1 ? sign_pow((p + 3) / 4) * ntheory::delta_sign(a * b, p) : sign_pow((p - 3) / 4);
    set_exact(r, symbol_str(lhs), symbol_str(rhs));
    return r;
}

// det[x + ((j^2+dk^2)/p)] over both index ranges at a few integer x.
CheckReport run_sec6_affine(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t d = require_d_unit(p, params);
    auto r = make_report("sec6_affine", p, params);
    const exactlin::IntMatrix pos = qmatrix::build_int(spec_of(Family::LEGENDRE, p, d, Range::POS));
    const exactlin::IntMatrix full = qmatrix::build_int(spec_of(Family::LEGENDRE, p, d, Range::FULL));
    auto shifted = [](exactlin::IntMatrix m, long x) {
        for (std::size_t j = 0; j < m.size(); ++j)
            for (std::size_t k = 0; k < m.size(); ++k) m(j, k) += x;
        return exactlin::det_multimodular(m);
    };
    const mpz_class s = exactlin::det_multimodular(pos);
    const mpz_class t = exactlin::det_multimodular(full);
    const auto lp = static_cast<long>(p);
    std::vector<std::string> lhs, rhs;
    const bool residue = ntheory::legendre(d, p) == 1;
    for (long x : {-1L, 0L, 1L, 2L}) {
        const mpz_class dp = shifted(pos, x);
        const mpz_class df = shifted(full, x);
        if (residue) {
            const mpq_class ps = 1 - frac(lp - 1, 2) * x;
            const mpq_class pf = lp * x + frac(lp - 1, 2);
            const mpq_class pt = 1 + frac(2 * lp * x, lp - 1);
            lhs.insert(lhs.end(), {dp.get_str(), df.get_str(), df.get_str()});
            rhs.insert(rhs.end(), {mpq_class(ps * s).get_str(), mpq_class(pf * s).get_str(), mpq_class(pt * t).get_str()});
        } else {
            lhs.insert(lhs.end(), {df.get_str(), dp.get_str()});
            rhs.insert(rhs.end(), {t.get_str(), mpz_class(t * x).get_str()});
        }
    }
    if (!residue && p > 3) {
        const mpz_class tail = det_int(spec_of(Family::LEGENDRE, p, d, Range::TAIL));
        const auto half = static_cast<long>((p - 1) / 2);
        lhs.push_back(t.get_str());
        rhs.push_back(mpz_class(tail * half * half).get_str());
    }
    set_exact(r, join(lhs), join(rhs));
    return r;
}

inline constexpr std::uint64_t kExactRationalMax = 31;

CheckReport run_sec6_ap(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t d = require_neg_d_nonresidue(p, params);
    auto r = make_report("sec6_Ap", p, params);
    const MatrixSpec ap = spec_of(Family::RECIP, p, d, Range::FULL, 1, true);
    const std::uint64_t det = det_p(ap);
    std::string expect;
    if (p % 4 == 1) {
        const std::uint64_t v = ntheory::pow_mod(ntheory::least_residue(d, p), (p - 1) / 4, p);
        expect = to_str(static_cast<std::int64_t>((p - v) % p));
    } else {
        expect = res(sign_pow((p - 3) / 4), p);
    }
    std::vector<std::string> lhs{to_str(static_cast<std::int64_t>(det)),
                                 symbol_str(ntheory::legendre(static_cast<std::int64_t>(det), p))};
    std::vector<std::string> rhs{expect, symbol_str(ntheory::legendre(-2, p))};
    if (p <= kExactRationalMax) {
        const mpq_class exact = exactlin::det_rational(qmatrix::build_rat(ap));
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), mpz_class(-d).get_mpz_t(), (p - 1) / 2);
        const mpq_class rec = exactlin::det_rational(qmatrix::build_rat(spec_of(Family::RECIP, p, d, Range::POS)));
        lhs.push_back(exact.get_str());
        rhs.push_back(mpq_class(rec * scale).get_str());
    }
    set_exact(r, join(lhs), join(rhs));
    return r;
}

}  // namespace

std::vector<CheckDef> exact_checks() {
    auto d_all = [](std::uint64_t p) { return sweep_d(p); };
    auto d_all_gt3 = [](std::uint64_t p) { return when(p > 3, sweep_d(p)); };
    auto d_neg = [](std::uint64_t p) { return sweep_d_neg_nonresidue(p); };
    return {
        {"thm_intro_S_symbol", "Legendre symbol of S(d,p)", d_all, run_S_symbol},
        {"thm_intro_T_symbol", "Legendre symbol of T(d,p)", d_all, run_T_symbol},
        {"thm_GSZ", "det[(j^2+dk^2)((j^2+dk^2)/p)] over 0..n vanishes mod p", d_all_gt3, run_gsz},
        {"thm_WSW", "Legendre symbol of S_{(p+1)/2}(d,p)", d_all_gt3, run_wsw},
        {"thm11_i", "first-row-ones determinant against S(d,p), T(d,p) and the tail", d_all_gt3, run_thm11_i},
        {"thm11_ii", "T_n(d,p) = 0 mod p for (p-1)/2 < n < p-1", d_all_gt3, run_thm11_ii},
        {"s_p2_const", "S_{p-2}(1,p) and det[1/(j^2+k^2)] are (2/p) mod p, p = 3 mod 4",
         [](std::uint64_t p) { return when(p % 4 == 3, {Params{}}); }, run_s_p2_const},
        {"thm12_i", "symbol of S_{p-2}(d,p) and det[1/(j^2+dk^2)] mod p", d_neg, run_thm12_i},
        {"thm12_ii", "symbol of S_{p-3}(d,p) and det[1/(j^2+dk^2)^2] mod p", d_neg, run_thm12_ii},
        {"lemma_per", "per[1/(j^2+dk^2)] mod p via Ryser",
         [](std::uint64_t p) { return when(p <= 37, sweep_d_neg_nonresidue(p)); }, run_lemma_per},
        {"thm3m", "product of sorted coset differences mod p", sweep_thm3m, run_thm3m},
        {"cor3_2", "difference products of sorted residues and nonresidues",
         [](std::uint64_t) { return std::vector<Params>{Params{}}; }, run_cor3_2},
        {"lemma_spab", "s_p(a) s_p(b) for (a/p) = 1, (b/p) = -1", sweep_spab, run_spab},
        {"sec6_affine", "det[x + ((j^2+dk^2)/p)] is affine in x with the stated coefficients", d_all, run_sec6_affine},
        {"sec6_Ap", "det A_p mod p, its symbol and the exact reciprocal relation", d_neg, run_sec6_ap},
    };
}

}  // namespace qrdet::verify::detail
