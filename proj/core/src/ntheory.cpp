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

#include "qrdet/ntheory.hpp"

#include <algorithm>
#include <string>

#include "qrdet/errors.hpp"

namespace qrdet::ntheory {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    // Extended Euclid on signed 128-bit to stay exact for 64-bit moduli.
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw InvalidArgument("inv_mod: " + std::to_string(a) + " is not invertible mod " +
                                      std::to_string(m));
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t q : small) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are a proven witness set for n < 3.3e24.
    for (std::uint64_t a : small) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t least_residue(std::int64_t m, std::uint64_t p) {
    if (m >= 0) return static_cast<std::uint64_t>(m) % p;
    // -(m+1) avoids overflow at INT64_MIN.
    std::uint64_t r = static_cast<std::uint64_t>(-(m + 1)) % p;
    return p - 1 - r;
}

namespace {

void require_odd_prime(std::uint64_t p) {
    if (p < 3 || (p & 1) == 0 || !is_prime(p))
        throw InvalidArgument("expected an odd prime, got " + std::to_string(p));
}

}  // namespace

int legendre(std::int64_t a, std::uint64_t p) {
    require_odd_prime(p);
    std::uint64_t r = least_residue(a, p);
    if (r == 0) return 0;
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

PrimeCtx::PrimeCtx(std::uint64_t p) : p_(p), n_((p - 1) / 2) {
    require_odd_prime(p);
    table_.assign(p, -1);
    table_[0] = 0;
    // Squares of 1..n hit each residue exactly once.
    for (std::uint64_t x = 1; x <= n_; ++x) table_[mul_mod(x, x, p)] = 1;
    half_fact_ = 1;
    for (std::uint64_t x = 2; x <= n_; ++x) half_fact_ = mul_mod(half_fact_, x, p);
    for (std::uint64_t r = 2; r < p; ++r) {
        if (table_[r] == -1) {
            smallest_nonresidue_ = r;
            break;
        }
    }
}

std::int64_t jacobsthal_sum(std::int64_t d, const PrimeCtx& ctx) {
    const std::uint64_t p = ctx.p();
    const std::uint64_t dr = ctx.reduce(d);
    std::int64_t sum = 0;
    for (std::uint64_t x = 1; x <= ctx.n(); ++x) {
        std::uint64_t v = mul_mod(x, (mul_mod(x, x, p) + dr) % p, p);
        sum += ctx.chi_residue(v);
    }
    return sum;
}

std::int64_t jacobsthal_sum(std::int64_t d, std::uint64_t p) { return jacobsthal_sum(d, PrimeCtx(p)); }

int delta_sign(std::int64_t c, const PrimeCtx& ctx) {
    if (ctx.p_mod4() != 1)
        throw InvalidArgument("delta_sign requires p == 1 (mod 4), got p = " + std::to_string(ctx.p()));
    if (ctx.chi(c) != -1)
        throw InvalidArgument("delta_sign requires (c/p) = -1, got c = " + std::to_string(c));
    std::uint64_t lhs = pow_mod(ctx.reduce(c), (ctx.p() - 1) / 4, ctx.p());
    return lhs == ctx.half_fact() ? 1 : -1;
}

int delta_sign(std::int64_t c, std::uint64_t p) { return delta_sign(c, PrimeCtx(p)); }

int sp_sign(std::int64_t a, const PrimeCtx& ctx) {
    const std::uint64_t p = ctx.p();
    const std::uint64_t ar = ctx.reduce(a);
    if (ar == 0) throw InvalidArgument("sp_sign requires p not dividing a");
    std::vector<std::uint64_t> seq(ctx.n());
    for (std::uint64_t j = 1; j <= ctx.n(); ++j) seq[j - 1] = mul_mod(ar, mul_mod(j, j, p), p);
    // Parity of the permutation via cycle decomposition of the sort order.
    std::vector<std::size_t> order(seq.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return seq[x] < seq[y]; });
    std::vector<bool> seen(order.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = order[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

int sp_sign(std::int64_t a, std::uint64_t p) { return sp_sign(a, PrimeCtx(p)); }

std::int64_t quad_poly_char_sum(std::int64_t a, std::int64_t b, std::int64_t c, std::uint64_t p) {
    PrimeCtx ctx(p);
    const std::uint64_t ar = ctx.reduce(a), br = ctx.reduce(b), cr = ctx.reduce(c);
    if (ar == 0) throw InvalidArgument("quad_poly_char_sum requires p not dividing a");
    std::int64_t direct = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = (mul_mod(ar, mul_mod(x, x, p), p) + mul_mod(br, x, p) + cr) % p;
        direct += ctx.chi_residue(v);
    }
    const std::uint64_t disc = (mul_mod(br, br, p) + p - mul_mod(4 % p, mul_mod(ar, cr, p), p)) % p;
    const std::int64_t chi_a = ctx.chi_residue(ar);
    const std::int64_t closed = disc == 0 ? static_cast<std::int64_t>(p - 1) * chi_a : -chi_a;
    if (direct != closed)
        throw InternalError("quad_poly_char_sum: direct sum " + std::to_string(direct) +
                            " != closed form " + std::to_string(closed));
    return direct;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n) {
        if (is_prime(n)) out.push_back(n);
        if (n == UINT64_MAX) break;
    }
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace qrdet::ntheory
