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

#include "qrdet/exactlin.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "qrdet/ntheory.hpp"

namespace qrdet::exactlin {

using ntheory::inv_mod;
using ntheory::least_residue;
using ntheory::mul_mod;

ModMatrix::ModMatrix(std::size_t n, std::uint64_t modulus) : n_(n), modulus_(modulus), data_(n * n, 0) {
    if (modulus < 2 || modulus >= (std::uint64_t{1} << 63))
        throw InvalidArgument("ModMatrix: modulus out of range");
}

ModMatrix ModMatrix::reduce(const IntMatrix& m, std::uint64_t modulus) {
    ModMatrix out(m.size(), modulus);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            out.data_[i * out.n_ + j] = mpz_fdiv_ui(m(i, j).get_mpz_t(), static_cast<unsigned long>(modulus));
    return out;
}

void ModMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
    data_[r * n_ + c] = least_residue(value, modulus_);
}

bool ModMatrix::is_skew_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
        if (at(i, i) != 0) return false;
        for (std::size_t j = i + 1; j < n_; ++j) {
            if ((at(i, j) + at(j, i)) % modulus_ != 0) return false;
        }
    }
    return true;
}

ModMatrix ModMatrix::tail(std::size_t from) const {
    ModMatrix t(n_ - from, modulus_);
    for (std::size_t r = from; r < n_; ++r)
        for (std::size_t c = from; c < n_; ++c) t.data_[(r - from) * t.n_ + (c - from)] = at(r, c);
    return t;
}

mpz_class det_exact(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1, t;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        const mpz_class& pivot = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const mpz_class& lead = m(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_mul(t.get_mpz_t(), m(i, j).get_mpz_t(), pivot.get_mpz_t());
                mpz_submul(t.get_mpz_t(), lead.get_mpz_t(), m(k, j).get_mpz_t());
                assert(mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()));
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = pivot;
    }
    mpz_class d = m(n - 1, n - 1);
    return sign < 0 ? mpz_class(-d) : d;
}

namespace {

// Elimination with lazily reduced rows: non-pivot rows accumulate
// g * pivot_row products and are only reduced when they become the pivot
// row. Word must hold (m-1) + n (m-1)^2.
template <typename Word>
std::uint64_t det_mod_lazy(const ModMatrix& src) {
    const std::size_t n = src.size();
    const Word m = static_cast<Word>(src.modulus());
    std::vector<Word> w(src.data().begin(), src.data().end());
    std::uint64_t det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i) {
            Word& e = w[i * n + k];
            e %= m;
            if (piv == n && e != 0) piv = i;
        }
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(w[k * n + c], w[piv * n + c]);
            det = (src.modulus() - det) % src.modulus();
        }
        Word* __restrict prow = w.data() + k * n;
        for (std::size_t c = k + 1; c < n; ++c) prow[c] %= m;
        det = mul_mod(det, prow[k], src.modulus());
        const std::uint64_t inv = inv_mod(prow[k], src.modulus());
        for (std::size_t i = k + 1; i < n; ++i) {
            Word* __restrict row = w.data() + i * n;
            if (row[k] == 0) continue;
            const Word f = static_cast<Word>(mul_mod(row[k], inv, src.modulus()));
            const Word g = m - f;
            if constexpr (sizeof(Word) == 8) {
                // Operands are reduced below 2^32, so a 32x32->64 multiply suffices and vectorizes.
                if (src.modulus() <= 0xffffffffu) {
                    const auto g32 = static_cast<std::uint32_t>(g);
                    for (std::size_t c = k + 1; c < n; ++c)
                        row[c] += static_cast<Word>(g32) * static_cast<std::uint32_t>(prow[c]);
                    continue;
                }
            }
            for (std::size_t c = k + 1; c < n; ++c) row[c] += g * prow[c];
        }
    }
    return det;
}

std::uint64_t det_mod_generic(const ModMatrix& src) {
    const std::size_t n = src.size();
    const std::uint64_t m = src.modulus();
    std::vector<std::uint64_t> w = src.data();
    std::uint64_t det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && w[piv * n + k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(w[k * n + c], w[piv * n + c]);
            det = (m - det) % m;
        }
        det = mul_mod(det, w[k * n + k], m);
        const std::uint64_t inv = inv_mod(w[k * n + k], m);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (w[i * n + k] == 0) continue;
            const std::uint64_t g = m - mul_mod(w[i * n + k], inv, m);
            for (std::size_t c = k + 1; c < n; ++c)
                w[i * n + c] = (w[i * n + c] + mul_mod(g, w[k * n + c], m)) % m;
        }
    }
    return det;
}

bool lazy_fits(std::uint64_t m, std::size_t n, unsigned __int128 limit) {
    const unsigned __int128 sq = static_cast<unsigned __int128>(m - 1) * (m - 1);
    return (m - 1) + static_cast<unsigned __int128>(n + 1) * sq < limit;
}

}  // namespace

std::uint64_t det_mod(const ModMatrix& m) {
    if (m.size() == 0) return 1 % m.modulus();
    if (lazy_fits(m.modulus(), m.size(), static_cast<unsigned __int128>(1) << 32))
        return det_mod_lazy<std::uint32_t>(m);
    if (lazy_fits(m.modulus(), m.size(), static_cast<unsigned __int128>(1) << 64))
        return det_mod_lazy<std::uint64_t>(m);
    return det_mod_generic(m);
}

mpz_class det_multimodular(const IntMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    double bound_bits = 1;
    mpz_class row_sq;
    for (std::size_t i = 0; i < n; ++i) {
        row_sq = 0;
        for (std::size_t j = 0; j < n; ++j) mpz_addmul(row_sq.get_mpz_t(), m(i, j).get_mpz_t(), m(i, j).get_mpz_t());
        if (row_sq == 0) return 0;
        long e = 0;
        const double mant = mpz_get_d_2exp(&e, row_sq.get_mpz_t());
        bound_bits += (std::log2(mant) + static_cast<double>(e)) / 2.0 + 1e-6;
    }
    // Largest prime size that keeps det_mod on its lazy 64-bit path.
    unsigned size_bits = 0;
    while ((std::uint64_t{1} << size_bits) < n + 2) ++size_bits;
    unsigned q_bits = std::min(62u, (64u - size_bits) / 2u - 1u);
    if (q_bits < 16) q_bits = 62;

    mpz_class x = 0, modulus = 1, t;
    std::uint64_t q = (std::uint64_t{1} << q_bits) - 1;
    // modulus > 2^(bound+1) >= 2 |det| recovers the symmetric residue.
    while (static_cast<double>(mpz_sizeinbase(modulus.get_mpz_t(), 2)) <= bound_bits + 2) {
        while (!ntheory::is_prime(q)) --q;
        const std::uint64_t r = det_mod(ModMatrix::reduce(m, q));
        // x += modulus * ((r - x) / modulus mod q)
        const std::uint64_t xr = mpz_fdiv_ui(x.get_mpz_t(), q);
        const std::uint64_t mr = mpz_fdiv_ui(modulus.get_mpz_t(), q);
        const std::uint64_t k = mul_mod((r + q - xr) % q, inv_mod(mr, q), q);
        mpz_addmul_ui(x.get_mpz_t(), modulus.get_mpz_t(), k);
        mpz_mul_ui(modulus.get_mpz_t(), modulus.get_mpz_t(), q);
        --q;
    }
    t = modulus / 2;
    if (x > t) x -= modulus;
    return x;
}

mpq_class det_rational(const RatMatrix& m) {
    const std::size_t n = m.size();
    IntMatrix scaled(n);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) scaled(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
        scale *= l;
    }
    mpq_class d(det_exact(std::move(scaled)), scale);
    d.canonicalize();
    return d;
}

std::uint64_t permanent_ryser(const ModMatrix& m) {
    const std::size_t n = m.size();
    const std::uint64_t mod = m.modulus();
    if (n > kMaxPermanentDim)
        throw ResourceLimit("permanent_ryser: dimension " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxPermanentDim));
    if (n == 0) return 1 % mod;
    std::vector<std::uint64_t> row_sums(n, 0);
    std::uint64_t total = 0;
    std::uint64_t gray = 0;
    const std::uint64_t steps = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < steps; ++g) {
        const unsigned col = static_cast<unsigned>(__builtin_ctzll(g));
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            for (std::size_t i = 0; i < n; ++i) {
                row_sums[i] += m.at(i, col);
                if (row_sums[i] >= mod) row_sums[i] -= mod;
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                row_sums[i] += mod - m.at(i, col);
                if (row_sums[i] >= mod) row_sums[i] -= mod;
            }
        }
        std::uint64_t prod = row_sums[0];
        for (std::size_t i = 1; i < n && prod != 0; ++i) prod = mul_mod(prod, row_sums[i], mod);
        if (__builtin_popcountll(gray) % 2)
            total = (total + mod - prod) % mod;
        else
            total = (total + prod) % mod;
    }
    return n % 2 ? (mod - total) % mod : total;
}

std::uint64_t pfaffian_mod(const ModMatrix& src) {
    const std::size_t n = src.size();
    const std::uint64_t p = src.modulus();
    if (n % 2) throw InvalidArgument("pfaffian_mod: odd dimension " + std::to_string(n));
    if (!src.is_skew_symmetric()) throw InvalidArgument("pfaffian_mod: matrix is not skew-symmetric");
    std::vector<std::uint64_t> a = src.data();
    auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return a[i * n + j]; };
    std::uint64_t pf = 1;
    for (std::size_t k = 0; k < n; k += 2) {
        std::size_t piv = k + 1;
        while (piv < n && at(k, piv) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k + 1) {
            // Simultaneous row/column transposition flips the Pfaffian's sign.
            for (std::size_t c = 0; c < n; ++c) std::swap(at(k + 1, c), at(piv, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(at(r, k + 1), at(r, piv));
            pf = (p - pf) % p;
        }
        const std::uint64_t pivot = at(k, k + 1);
        pf = mul_mod(pf, pivot, p);
        const std::uint64_t inv = inv_mod(pivot, p);
        // Congruence by I - sum_i tau_i e_i e_{k+1}^T clears row k beyond k+1;
        // only the trailing block is needed afterwards.
        std::vector<std::uint64_t> tau(n, 0);
        for (std::size_t i = k + 2; i < n; ++i) tau[i] = mul_mod(at(k, i), inv, p);
        const bool small = p < (std::uint64_t{1} << 31);
        for (std::size_t i = k + 2; i < n; ++i) {
            const std::uint64_t ti = (p - tau[i]) % p;
            const std::uint64_t ai = at(i, k + 1);
            for (std::size_t j = k + 2; j < n; ++j) {
                if (small) {
                    at(i, j) = (at(i, j) + ti * at(k + 1, j) + ((p - tau[j]) % p) * ai) % p;
                } else {
                    std::uint64_t v = (at(i, j) + mul_mod(ti, at(k + 1, j), p)) % p;
                    at(i, j) = (v + mul_mod((p - tau[j]) % p, ai, p)) % p;
                }
            }
        }
    }
    return pf;
}

std::optional<mpz_class> integer_sqrt_exact(const mpz_class& v) {
    if (v < 0) throw InvalidArgument("integer_sqrt_exact: negative input");
    if (!mpz_perfect_square_p(v.get_mpz_t())) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

RatMatrix cauchy_matrix(std::span<const mpq_class> x, std::span<const mpq_class> y, int power) {
    if (x.size() != y.size()) throw InvalidArgument("cauchy_matrix: length mismatch");
    const std::size_t n = x.size();
    RatMatrix m(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            mpq_class s = x[j] + y[k];
            if (s == 0) throw InvalidArgument("cauchy_matrix: x_j + y_k = 0");
            mpq_class e = 1 / s;
            mpq_class v = 1;
            for (int t = 0; t < power; ++t) v *= e;
            m(j, k) = v;
        }
    }
    return m;
}

mpq_class cauchy_det_closed(std::span<const mpq_class> x, std::span<const mpq_class> y) {
    const RatMatrix direct_matrix = cauchy_matrix(x, y);
    const std::size_t n = x.size();
    mpq_class num = 1, den = 1;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) num *= (x[j] - x[k]) * (y[j] - y[k]);
        for (std::size_t k = 0; k < n; ++k) den *= x[j] + y[k];
    }
    mpq_class closed = num / den;
    const mpq_class direct = det_rational(direct_matrix);
    if (closed != direct)
        throw InternalError("cauchy_det_closed: closed form " + closed.get_str() + " != determinant " +
                            direct.get_str());
    return closed;
}

BorchardtReport borchardt_identity_check(std::span<const mpq_class> x, std::span<const mpq_class> y) {
    BorchardtReport r;
    const RatMatrix c = cauchy_matrix(x, y, 1);
    r.det_squared = det_rational(cauchy_matrix(x, y, 2));
    r.det = det_rational(c);
    r.per = permanent_ryser(c);
    r.pass = r.det_squared == r.det * r.per;
    return r;
}

ShiftReport shift_det_check(const RatMatrix& a, const mpq_class& x) {
    const std::size_t n1 = a.size();
    if (n1 == 0) throw InvalidArgument("shift_det_check: empty matrix");
    RatMatrix shifted = a;
    for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t k = 0; k < n1; ++k) shifted(j, k) += x;
    RatMatrix b(n1 - 1);
    for (std::size_t j = 1; j < n1; ++j)
        for (std::size_t k = 1; k < n1; ++k) b(j - 1, k - 1) = a(j, k) - a(j, 0) - a(0, k) + a(0, 0);
    ShiftReport r;
    r.lhs = det_rational(shifted) - det_rational(a);
    r.rhs = x * det_rational(b);
    r.pass = r.lhs == r.rhs;
    return r;
}

}  // namespace qrdet::exactlin
