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

// Exact linear algebra over Z, Z/pZ and Q.

#include <cstddef>
#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrdet/errors.hpp"

namespace qrdet::exactlin {

/// Dense square matrix, row-major.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}
    Matrix(std::size_t n, const T& fill) : n_(n), data_(n * n, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * n_, n_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < n_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    Matrix transpose() const {
        Matrix t(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    /// Principal submatrix on indices [from, n).
    Matrix tail(std::size_t from) const {
        Matrix t(n_ - from);
        for (std::size_t r = from; r < n_; ++r)
            for (std::size_t c = from; c < n_; ++c) t(r - from, c - from) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;

/// Square matrix over Z/mZ for a prime m < 2^63; entries kept in [0, m).
class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(std::size_t n, std::uint64_t modulus);

    static ModMatrix reduce(const IntMatrix& m, std::uint64_t modulus);

    std::size_t size() const noexcept { return n_; }
    std::uint64_t modulus() const noexcept { return modulus_; }

    std::uint64_t at(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
    /// Stores value mod m (any sign).
    void set(std::size_t r, std::size_t c, std::int64_t value);
    void set_residue(std::size_t r, std::size_t c, std::uint64_t residue) { data_[r * n_ + c] = residue; }

    const std::vector<std::uint64_t>& data() const noexcept { return data_; }

    bool is_skew_symmetric() const;
    ModMatrix tail(std::size_t from) const;

    friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
        return a.n_ == b.n_ && a.modulus_ == b.modulus_ && a.data_ == b.data_;
    }

private:
    std::size_t n_ = 0;
    std::uint64_t modulus_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Determinant by one-step Bareiss elimination; every division is exact.
mpz_class det_exact(IntMatrix m);

/// Determinant over Z/mZ, m prime.
std::uint64_t det_mod(const ModMatrix& m);

/// Exact determinant from residues modulo word-size primes, combined by CRT
/// until the modulus exceeds twice the Hadamard bound.
mpz_class det_multimodular(const IntMatrix& m);

/// Determinant of a rational matrix: each row is scaled to integers by the
/// lcm of its denominators, then Bareiss.
mpq_class det_rational(const RatMatrix& m);

inline constexpr std::size_t kMaxPermanentDim = 24;

/// Ryser's formula with Gray-code column updates, O(2^n n).
template <typename T>
T permanent_ryser(const Matrix<T>& m) {
    const std::size_t n = m.size();
    if (n > kMaxPermanentDim)
        throw ResourceLimit("permanent_ryser: dimension " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxPermanentDim));
    if (n == 0) return T(1);
    std::vector<T> row_sums(n, T(0));
    T total(0);
    std::uint64_t gray = 0;
    const std::uint64_t steps = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < steps; ++g) {
        const unsigned col = static_cast<unsigned>(__builtin_ctzll(g));
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            for (std::size_t i = 0; i < n; ++i) row_sums[i] += m(i, col);
        } else {
            for (std::size_t i = 0; i < n; ++i) row_sums[i] -= m(i, col);
        }
        T prod = row_sums[0];
        for (std::size_t i = 1; i < n; ++i) prod *= row_sums[i];
        if (__builtin_popcountll(gray) % 2) total -= prod; else total += prod;
    }
    return n % 2 ? T(-total) : total;
}

std::uint64_t permanent_ryser(const ModMatrix& m);

/// Pfaffian over Z/pZ. Pf([[0,a],[-a,0]]) = a. Throws InvalidArgument for
/// odd dimension or a matrix that is not skew-symmetric mod p.
std::uint64_t pfaffian_mod(const ModMatrix& m);

/// r with r^2 = v, or nullopt. Throws InvalidArgument for v < 0.
std::optional<mpz_class> integer_sqrt_exact(const mpz_class& v);

/// Closed form of det[1/(x_j + y_k)], checked against the direct rational
/// determinant (InternalError on mismatch).
mpq_class cauchy_det_closed(std::span<const mpq_class> x, std::span<const mpq_class> y);

RatMatrix cauchy_matrix(std::span<const mpq_class> x, std::span<const mpq_class> y, int power = 1);

struct BorchardtReport {
    bool pass = false;
    mpq_class det_squared;  // det[1/(x+y)^2]
    mpq_class det;          // det[1/(x+y)]
    mpq_class per;          // per[1/(x+y)]
};

/// det[1/(x+y)^2] == det[1/(x+y)] * per[1/(x+y)] over Q.
BorchardtReport borchardt_identity_check(std::span<const mpq_class> x, std::span<const mpq_class> y);

struct ShiftReport {
    bool pass = false;
    mpq_class lhs;  // det[x + a] - det[a]
    mpq_class rhs;  // x det[a_jk - a_j0 - a_0k + a_00]_{j,k>=1}
};

/// det[x + a_jk]_{0..n} - det[a_jk]_{0..n} == x det[b_jk]_{1..n}.
ShiftReport shift_det_check(const RatMatrix& a, const mpq_class& x);

}  // namespace qrdet::exactlin
