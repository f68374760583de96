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

#include "qrdet/cyclotomic.hpp"

#include "qrdet/errors.hpp"
#include "qrdet/ntheory.hpp"
#include "qrdet/quadfield.hpp"

namespace qrdet::cyclo {

namespace {

// Canonical representative of sum_{t=0}^{p-1} w_t zeta^t.
std::vector<mpq_class> canonical(std::vector<mpq_class>& w) {
    const std::size_t p = w.size();
    const mpq_class top = w[p - 1];
    std::vector<mpq_class> out(p - 1);
    for (std::size_t t = 0; t + 1 < p; ++t) out[t] = top == 0 ? w[t] : mpq_class(w[t] - top);
    return out;
}

}  // namespace

CycloElt::CycloElt(std::uint64_t p) : p_(p), c_(p - 1, mpq_class(0)) {
    if (p < 3 || !ntheory::is_prime(p)) throw InvalidArgument("CycloElt: p must be an odd prime");
}

CycloElt::CycloElt(std::uint64_t p, const mpq_class& rational) : CycloElt(p) { c_[0] = rational; }

CycloElt CycloElt::zeta_pow(std::uint64_t p, std::int64_t r) {
    CycloElt z(p);
    const std::uint64_t t = ntheory::least_residue(r, p);
    if (t == p - 1) {
        for (auto& c : z.c_) c = -1;
    } else {
        z.c_[t] = 1;
    }
    return z;
}

void CycloElt::check_same(const CycloElt& o) const {
    if (p_ != o.p_) throw InvalidArgument("CycloElt: mismatched fields");
}

bool CycloElt::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool CycloElt::is_rational() const {
    for (std::size_t t = 1; t < c_.size(); ++t)
        if (c_[t] != 0) return false;
    return true;
}

CycloElt& CycloElt::operator+=(const CycloElt& o) {
    check_same(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
    return *this;
}

CycloElt& CycloElt::operator-=(const CycloElt& o) {
    check_same(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] -= o.c_[t];
    return *this;
}

CycloElt& CycloElt::operator*=(const mpq_class& q) {
    for (auto& c : c_) c *= q;
    return *this;
}

CycloElt CycloElt::operator-() const {
    CycloElt r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

CycloElt& CycloElt::operator*=(const CycloElt& o) {
    check_same(o);
    const std::size_t p = p_;
    std::vector<mpq_class> w(p, mpq_class(0));
    mpq_class prod;
    for (std::size_t i = 0; i + 1 < p; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j + 1 < p; ++j) {
            if (o.c_[j] == 0) continue;
            mpq_mul(prod.get_mpq_t(), c_[i].get_mpq_t(), o.c_[j].get_mpq_t());
            mpq_class& dst = w[(i + j) % p];
            mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), prod.get_mpq_t());
        }
    }
    c_ = canonical(w);
    return *this;
}

CycloElt CycloElt::galois(std::int64_t s) const {
    const std::uint64_t sr = ntheory::least_residue(s, p_);
    if (sr == 0) throw InvalidArgument("CycloElt::galois: p divides s");
    std::vector<mpq_class> w(p_, mpq_class(0));
    for (std::size_t t = 0; t + 1 < p_; ++t) w[ntheory::mul_mod(t, sr, p_)] = c_[t];
    CycloElt r(p_);
    r.c_ = canonical(w);
    return r;
}

mpq_class CycloElt::norm() const {
    CycloElt acc = *this;
    for (std::uint64_t s = 2; s < p_; ++s) acc *= galois(static_cast<std::int64_t>(s));
    if (!acc.is_rational()) throw InternalError("CycloElt::norm: product of conjugates is not rational");
    return acc.c_[0];
}

CycloElt CycloElt::inverse() const {
    if (is_zero()) throw InvalidArgument("CycloElt: division by zero");
    CycloElt others(p_, mpq_class(1));
    for (std::uint64_t s = 2; s < p_; ++s) others *= galois(static_cast<std::int64_t>(s));
    const CycloElt n = *this * others;
    if (!n.is_rational()) throw InternalError("CycloElt::inverse: norm is not rational");
    others *= mpq_class(1 / n.c_[0]);
    return others;
}

CycloElt& CycloElt::operator/=(const CycloElt& o) {
    check_same(o);
    return *this *= o.inverse();
}

BigComplex CycloElt::to_complex(mpfr_prec_t prec) const {
    BigComplex acc(prec);
    for (std::size_t t = 0; t < c_.size(); ++t) {
        if (c_[t] == 0) continue;
        BigComplex z = root_of_unity(static_cast<std::int64_t>(t), p_, prec + 16);
        const BigFloat q(c_[t], prec + 16);
        z.re *= q;
        z.im *= q;
        acc += z;
    }
    return acc;
}

std::string CycloElt::to_string() const {
    std::string s = "[";
    for (std::size_t t = 0; t < c_.size(); ++t) s += (t ? "," : "") + c_[t].get_str();
    return s + "]";
}

CycloElt gauss_sum(std::uint64_t p) {
    CycloElt g(p);
    for (std::uint64_t t = 1; t < p; ++t) {
        CycloElt z = CycloElt::zeta_pow(p, static_cast<std::int64_t>(t));
        z *= mpq_class(ntheory::legendre(static_cast<std::int64_t>(t), p));
        g += z;
    }
    return g;
}

bool CycloValue::is_real() const {
    const CycloElt c = base.conjugate();
    return times_i ? c == -base : c == base;
}

CycloValue operator*(const CycloValue& x, const CycloValue& y) {
    CycloValue r{x.base * y.base, x.times_i != y.times_i};
    if (x.times_i && y.times_i) r.base = -r.base;
    return r;
}

bool operator==(const CycloValue& x, const CycloValue& y) {
    if (x.is_zero() && y.is_zero()) return x.base.p() == y.base.p();
    return x.times_i == y.times_i && x.base == y.base;
}

BigComplex CycloValue::to_complex(mpfr_prec_t prec) const {
    BigComplex z = base.to_complex(prec);
    if (!times_i) return z;
    return BigComplex(-z.im, z.re);
}

std::string CycloValue::to_string() const { return (times_i ? "i*" : "") + base.to_string(); }

CycloValue embed(const closed::Monomial& m, std::uint64_t p) {
    if (m.is_zero()) return {CycloElt(p), false};
    mpq_class r(m.sign);
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(m.pow2 < 0 ? -m.pow2 : m.pow2));
    if (m.pow2 >= 0) r *= two_pow; else r /= two_pow;
    long q = m.half_p / 2;
    long rem = m.half_p % 2;
    if (rem < 0) {
        rem += 2;
        q -= 1;
    }
    mpz_class p_pow;
    mpz_ui_pow_ui(p_pow.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(q < 0 ? -q : q));
    if (q >= 0) r *= p_pow; else r /= p_pow;
    r.canonicalize();
    CycloValue v{CycloElt(p, r), false};
    if (rem) {
        const CycloElt g = gauss_sum(p);
        v = v * (p % 4 == 1 ? CycloValue{g, false} : CycloValue{-g, true});
    }
    if (m.eps_mult != 0) {
        const auto& cd = quadfield::class_data(p);
        if (!cd.eps_h) throw InvalidArgument("embed: eps_p is defined for p == 1 (mod 4) only");
        const quadfield::QuadUnit e = cd.eps_h->pow(m.eps_mult);
        CycloElt u = gauss_sum(p) * mpq_class(e.v);
        u += CycloElt(p, mpq_class(e.u));
        u *= mpq_class(1, 2);
        v = v * CycloValue{u, false};
    }
    if (m.times_i) v = v * CycloValue{CycloElt(p, mpq_class(1)), true};
    return v;
}

CycloElt product_one_minus(std::uint64_t p, std::int64_t a) {
    if (ntheory::legendre(a, p) == 0) throw InvalidArgument("product_one_minus: p divides a");
    CycloElt acc(p, mpq_class(1));
    const CycloElt one(p, mpq_class(1));
    for (std::uint64_t k = 1; k <= (p - 1) / 2; ++k)
        acc *= one - CycloElt::zeta_pow(p, static_cast<std::int64_t>(ntheory::mul_mod(ntheory::least_residue(a, p), k * k % p, p)));
    return acc;
}

CycloElt pair_products(std::uint64_t p, std::int64_t a, PairKind kind) {
    if (ntheory::legendre(a, p) == 0) throw InvalidArgument("pair_products: p divides a");
    const std::uint64_t n = (p - 1) / 2;
    const std::uint64_t ar = ntheory::least_residue(a, p);
    CycloElt acc(p, mpq_class(1));
    for (std::uint64_t j = 1; j <= n; ++j) {
        const CycloElt zj = CycloElt::zeta_pow(p, static_cast<std::int64_t>(ntheory::mul_mod(ar, j * j % p, p)));
        for (std::uint64_t k = j + 1; k <= n; ++k) {
            const CycloElt zk = CycloElt::zeta_pow(p, static_cast<std::int64_t>(ntheory::mul_mod(ar, k * k % p, p)));
            acc *= kind == PairKind::DIFF ? zj - zk : zj + zk;
        }
    }
    return acc;
}

CycloElt grid_product(std::uint64_t p, std::int64_t a, std::int64_t b) {
    if (ntheory::legendre(a, p) == 0 || ntheory::legendre(b, p) == 0)
        throw InvalidArgument("grid_product: p divides ab");
    if (p % 4 != 3) throw HypothesisViolation("p == 3 (mod 4)");
    if (ntheory::legendre(a, p) != ntheory::legendre(b, p)) throw HypothesisViolation("(ab/p) = 1");
    const std::uint64_t n = (p - 1) / 2;
    const std::uint64_t ar = ntheory::least_residue(a, p), br = ntheory::least_residue(b, p);
    // Collect exponent multiplicities first; the product has n^2 factors but
    // at most p - 1 distinct ones.
    std::vector<unsigned> mult(p, 0);
    for (std::uint64_t j = 1; j <= n; ++j)
        for (std::uint64_t k = 1; k <= n; ++k)
            ++mult[(ntheory::mul_mod(ar, j * j % p, p) + ntheory::mul_mod(br, k * k % p, p)) % p];
    const CycloElt one(p, mpq_class(1));
    CycloElt acc(p, mpq_class(1));
    for (std::uint64_t r = 0; r < p; ++r) {
        if (mult[r] == 0) continue;
        if (r == 0) return CycloElt(p);
        const CycloElt f = one - CycloElt::zeta_pow(p, static_cast<std::int64_t>(r));
        for (unsigned t = 0; t < mult[r]; ++t) acc *= f;
    }
    return acc;
}

CycloElt det(std::vector<CycloElt> m, std::size_t n) {
    if (m.size() != n * n) throw InvalidArgument("cyclo::det: size mismatch");
    if (n == 0) throw InvalidArgument("cyclo::det: empty matrix");
    const std::uint64_t p = m[0].p();
    CycloElt d(p, mpq_class(1));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv * n + k].is_zero()) ++piv;
        if (piv == n) return CycloElt(p);
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(m[k * n + c], m[piv * n + c]);
            d = -d;
        }
        d *= m[k * n + k];
        const CycloElt inv = m[k * n + k].inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i * n + k].is_zero()) continue;
            const CycloElt f = m[i * n + k] * inv;
            for (std::size_t c = k + 1; c < n; ++c) m[i * n + c] -= f * m[k * n + c];
        }
    }
    return d;
}

ExactAffine tan_det_exact(const qmatrix::MatrixSpec& spec) {
    if (spec.family != qmatrix::Family::TRIG_TAN && spec.family != qmatrix::Family::TRIG_COT)
        throw InvalidArgument("tan_det_exact: spec is not trigonometric");
    qmatrix::validate(spec);
    const std::uint64_t p = spec.p;
    if (p > kMaxExactPrime)
        throw ResourceLimit("tan_det_exact: p = " + std::to_string(p) + " exceeds " + std::to_string(kMaxExactPrime));
    const bool tan = spec.family == qmatrix::Family::TRIG_TAN;
    const std::size_t n = qmatrix::dimension(spec);
    const std::uint64_t start = qmatrix::range_start(spec.range);
    const std::uint64_t ar = ntheory::least_residue(spec.a, p), br = ntheory::least_residue(spec.b, p);

    // x + tan(pi r/p) at x = i equals 2i/(zeta^r + 1); x + cot(pi r/p) at
    // x = -i equals 2i/(zeta^r - 1). Each non-bar row contributes 2i.
    const CycloElt one(p, mpq_class(1));
    std::vector<std::optional<CycloElt>> table(p);
    auto entry = [&](std::uint64_t r) -> const CycloElt& {
        if (!table[r]) {
            const CycloElt z = CycloElt::zeta_pow(p, static_cast<std::int64_t>(r));
            const CycloElt den = tan ? z + one : z - one;
            if (den.is_zero()) throw InvalidArgument("tan_det_exact: cotangent pole in matrix entry");
            table[r] = den.inverse();
        }
        return *table[r];
    };
    std::vector<CycloElt> m;
    m.reserve(n * n);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            if (spec.bar && row == 0) {
                m.push_back(one);
                continue;
            }
            const std::uint64_t j = start + row, k = start + col;
            m.push_back(entry((ntheory::mul_mod(ar, j * j % p, p) + ntheory::mul_mod(br, k * k % p, p)) % p));
        }
    }
    const std::size_t e = spec.bar ? n - 1 : n;
    CycloElt v = det(std::move(m), n);
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, e);
    v *= mpq_class(e % 4 >= 2 ? mpz_class(-two_pow) : two_pow);
    const bool flag = e % 2 == 1;

    const CycloElt vc = v.conjugate();
    CycloElt plus = (v + vc) * mpq_class(1, 2);
    CycloElt minus = (v - vc) * mpq_class(1, 2);
    // T(x0) = c + x0 d with x0 = sigma i.
    const int sigma = tan ? 1 : -1;
    ExactAffine out;
    if (!flag) {
        out.c = {plus, false};
        out.d = {minus * mpq_class(-sigma), true};
    } else {
        out.c = {minus, true};
        out.d = {plus * mpq_class(sigma), false};
    }
    if (!out.c.is_real() || !out.d.is_real()) throw InternalError("tan_det_exact: components are not real");
    return out;
}

}  // namespace qrdet::cyclo
