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

#pragma once

// Slow, obviously-correct reference computations. Nothing here calls into
// the library, so tests can compare the engines against them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <gmpxx.h>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Grid = std::vector<std::vector<mpq_class>>;

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Legendre symbol by listing the squares.
inline int legendre(std::int64_t a, std::int64_t p) {
    const std::int64_t r = mod(a, p);
    if (r == 0) return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> primes(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

inline std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1;
    b = mod(b, m);
    for (std::int64_t k = 0; k < e; ++k) r = r * b % m;
    return r;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    a = mod(a, p);
    for (std::int64_t x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    return 0;
}

// Sign of a permutation by counting inversions.
inline int perm_sign(const std::vector<int>& s) {
    int inv = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) inv += s[i] > s[j];
    return inv % 2 ? -1 : 1;
}

// Leibniz expansion; only for n <= 8.
template <typename T>
T leibniz_det(const std::vector<std::vector<T>>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 0);
    T total = 0;
    do {
        T prod = perm_sign(s);
        for (int i = 0; i < n; ++i) prod *= a[i][s[i]];
        total += prod;
    } while (std::next_permutation(s.begin(), s.end()));
    return total;
}

template <typename T>
T naive_permanent(const std::vector<std::vector<T>>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 0);
    T total = 0;
    do {
        T prod = 1;
        for (int i = 0; i < n; ++i) prod *= a[i][s[i]];
        total += prod;
    } while (std::next_permutation(s.begin(), s.end()));
    return total;
}

// Gaussian elimination over Q with plain fractions (no fraction-free tricks).
inline mpq_class gauss_det(Grid a) {
    const std::size_t n = a.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const mpq_class f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

// Determinant mod p by elimination with brute-force inverses.
inline std::int64_t det_mod_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
    const std::size_t n = a.size();
    for (auto& row : a)
        for (auto& v : row) v = mod(v, p);
    std::int64_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = mod(-det, p);
        }
        det = det * a[c][c] % p;
        const std::int64_t inv = inv_mod(a[c][c], p);
        for (std::size_t r = c + 1; r < n; ++r) {
            const std::int64_t f = a[r][c] * inv % p;
            for (std::size_t k = c; k < n; ++k) a[r][k] = mod(a[r][k] - f * a[c][k], p);
        }
    }
    return det;
}

// Long double elimination with partial pivoting, for sanity checks of the
// multiprecision engine at modest sizes.
inline long double float_det(std::vector<std::vector<long double>> a) {
    const std::size_t n = a.size();
    long double det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        if (a[piv][c] == 0) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const long double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

inline long double pi() { return 3.14159265358979323846264338327950288L; }

// det[x + tan(pi (a j^2 + b k^2)/p)] over j, k in from..(p-1)/2; the first
// row is all ones when bar is set; cot instead of tan when cot is set.
inline long double trig_det(std::int64_t p, std::int64_t a, std::int64_t b, long double x, int from, bool bar,
                            bool cot) {
    const int n = static_cast<int>((p - 1) / 2);
    std::vector<std::vector<long double>> m;
    for (int j = from; j <= n; ++j) {
        std::vector<long double> row;
        for (int k = from; k <= n; ++k) {
            if (bar && j == from) {
                row.push_back(1);
                continue;
            }
            const long double t = pi() * static_cast<long double>(mod(a * j * j + b * k * k, p)) / p;
            row.push_back(x + (cot ? 1 / std::tan(t) : std::tan(t)));
        }
        m.push_back(std::move(row));
    }
    return float_det(m);
}

// Product of the Legendre-matrix cosets, straight from the definition.
inline std::int64_t coset_product(std::int64_t p, std::int64_t m) {
    std::vector<std::int64_t> h;
    for (std::int64_t x = 1; x < p; ++x) h.push_back(pow_mod(x, m, p));
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    std::set<std::int64_t> seen;
    std::int64_t prod = 1;
    for (std::int64_t g = 1; g < p; ++g) {
        if (seen.count(g)) continue;
        std::vector<std::int64_t> coset;
        for (auto e : h) coset.push_back(g * e % p);
        for (auto e : coset) seen.insert(e);
        std::sort(coset.begin(), coset.end());
        for (std::size_t s = 0; s < coset.size(); ++s)
            for (std::size_t t = s + 1; t < coset.size(); ++t) prod = prod * mod(coset[t] - coset[s], p) % p;
    }
    return prod;
}

inline mpz_class isqrt_or_neg(const mpz_class& v) {
    if (v < 0) return -1;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r * r == v ? r : mpz_class(-1);
}

}  // namespace oracle
