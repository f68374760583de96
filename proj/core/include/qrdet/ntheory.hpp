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

// Elementary modular number theory over odd primes.

#include <cstdint>
#include <vector>

namespace qrdet::ntheory {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo prime m; throws InvalidArgument when m | a.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

/// m mod p in [0, p-1], also for negative m.
std::uint64_t least_residue(std::int64_t m, std::uint64_t p);

/// Legendre symbol (a/p) by Euler's criterion. Throws InvalidArgument unless
/// p is an odd prime.
int legendre(std::int64_t a, std::uint64_t p);

/// An odd prime with its quadratic character tabulated.
class PrimeCtx {
public:
    explicit PrimeCtx(std::uint64_t p);

    std::uint64_t p() const noexcept { return p_; }
    /// (p-1)/2
    std::uint64_t n() const noexcept { return n_; }
    /// ((p-1)/2)! mod p
    std::uint64_t half_fact() const noexcept { return half_fact_; }
    unsigned p_mod4() const noexcept { return static_cast<unsigned>(p_ % 4); }
    unsigned p_mod8() const noexcept { return static_cast<unsigned>(p_ % 8); }

    /// Table lookup of (a/p).
    int chi(std::int64_t a) const noexcept { return table_[least_residue(a, p_)]; }
    int chi_residue(std::uint64_t r) const noexcept { return table_[r]; }
    const std::vector<signed char>& legendre_table() const noexcept { return table_; }

    std::uint64_t reduce(std::int64_t a) const noexcept { return least_residue(a, p_); }

    std::uint64_t smallest_nonresidue() const noexcept { return smallest_nonresidue_; }

private:
    std::uint64_t p_;
    std::uint64_t n_;
    std::uint64_t half_fact_;
    std::uint64_t smallest_nonresidue_ = 0;
    std::vector<signed char> table_;
};

/// Sum over x = 1..(p-1)/2 of ((x(x^2+d))/p).
std::int64_t jacobsthal_sum(std::int64_t d, const PrimeCtx& ctx);
std::int64_t jacobsthal_sum(std::int64_t d, std::uint64_t p);

/// +1 if c^((p-1)/4) == ((p-1)/2)! (mod p), else -1. Requires p == 1 (mod 4)
/// and (c/p) = -1; any other input is rejected with InvalidArgument.
int delta_sign(std::int64_t c, const PrimeCtx& ctx);
int delta_sign(std::int64_t c, std::uint64_t p);

/// Sign of the permutation that sorts {a j^2 mod p : j = 1..(p-1)/2}:
/// (-1)^#{j<k : {aj^2}_p > {ak^2}_p}. Throws InvalidArgument when p | a.
int sp_sign(std::int64_t a, const PrimeCtx& ctx);
int sp_sign(std::int64_t a, std::uint64_t p);

/// Sum over x = 0..p-1 of ((ax^2+bx+c)/p). The direct sum is cross-checked
/// against the closed form (p-1)(a/p) or -(a/p); a mismatch throws
/// InternalError.
std::int64_t quad_poly_char_sum(std::int64_t a, std::int64_t b, std::int64_t c,
                                std::uint64_t p);

/// Primes in [lo, hi], ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace qrdet::ntheory
