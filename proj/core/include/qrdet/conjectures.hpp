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

// Exploration of the open determinant conjectures: the integers t_p, the
// p-2 congruence, symbols of sqrt(D_p^(m)) and the exceptional sets E(m).

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrdet/verify.hpp"

namespace qrdet::conjectures {

/// One nonresidue d used to extract t_p.
struct TpSample {
    std::int64_t d = 0;
    std::int64_t jacobsthal = 0;  // sum_{x=1}^{n} (x(x^2+d)/p)
    mpz_class tail;               // det[((j^2+dk^2)/p)]_{2<=j,k<=n}
    std::optional<mpz_class> root;  // sqrt(tail / (2^{(p-7)/2} J)) when it is a square
    /// T(d,p), computed for p <= kTpCrossCheckMax only.
    std::optional<mpz_class> full;
    /// T(d,p) = 2^{(p-3)/2} ((p-1)/4 t)^2 J with t = root.
    std::optional<bool> full_route_ok;
};

struct TpRecord {
    std::uint64_t p = 0;
    std::optional<mpz_class> tp;
    bool per_d_consistent = false;
    bool symbol_ok = false;
    /// Prime powers from trial division; a trailing unfactored cofactor has exponent 0.
    std::vector<std::pair<mpz_class, unsigned>> factorization;
    std::vector<TpSample> samples;
};

/// All nonresidues are sampled and the T(d,p) route is cross-checked up to this p.
inline constexpr std::uint64_t kTpCrossCheckMax = 61;
/// Nonresidues sampled above kTpCrossCheckMax.
inline constexpr std::size_t kTpSamples = 3;

/// p == 1 (mod 4), p >= 5.
TpRecord extract_tp(std::uint64_t p);

/// 2^{(p-7)/2} t^2 J, the conjectured tail determinant.
mpq_class tp_tail_prediction(std::uint64_t p, const mpz_class& t, std::int64_t jacobsthal);
/// 2^{(p-3)/2} ((p-1)/4 t)^2 J, the conjectured T(d,p).
mpz_class tp_full_prediction(std::uint64_t p, const mpz_class& t, std::int64_t jacobsthal);

/// "2^4*3*11^2"; "1" for 1.
std::string factor_string(const std::vector<std::pair<mpz_class, unsigned>>& f);

/// 3 barS_{p-2}(1,p) == S_{p-2}(1,p) == 2 delta(d,p) J (mod p) and (S_{p-2}(1,p)/p) = 1.
verify::CheckReport check_conj_p2(std::uint64_t p, std::int64_t d);

/// (sqrt(D_p^(m))/p) against the conjectured value, m in {1, 3}.
verify::CheckReport dm_symbol(std::uint64_t p, unsigned m);

/// Conjectured value of (sqrt(D_p^(m))/p) for m in {1, 3}.
int dm_expected_symbol(std::uint64_t p, unsigned m);

struct EmScan {
    unsigned m = 0;
    std::uint64_t pmax = 0;
    std::vector<std::uint64_t> members;
};

inline constexpr std::uint64_t kMaxScanPrime = 1000000;

/// Primes p == 1 (mod 4), p <= pmax, with p | D_p^(m); m odd.
EmScan scan_Em(unsigned m, std::uint64_t pmax, unsigned jobs = 1);

/// Previously reported members of E(m) below 1000, if any are on record.
std::optional<std::vector<std::uint64_t>> reported_Em(unsigned m);

}  // namespace qrdet::conjectures
