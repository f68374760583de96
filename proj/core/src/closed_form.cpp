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

#include "qrdet/closed_form.hpp"

#include <algorithm>
#include <cctype>

#include "qrdet/errors.hpp"
#include "qrdet/ntheory.hpp"
#include "qrdet/quadfield.hpp"

namespace qrdet::closed {

using ntheory::legendre;

namespace {

void require(bool ok, const char* hypothesis) {
    if (!ok) throw HypothesisViolation(hypothesis);
}

int neg_one_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

void require_prime_gt3(std::uint64_t p) {
    if (!ntheory::is_prime(p) || p < 3) throw InvalidArgument("p = " + std::to_string(p) + " is not an odd prime");
    require(p > 3, "p > 3");
}

long h_imag(std::uint64_t p) { return static_cast<long>(quadfield::class_data(p).h_imag); }

int delta_ab(std::uint64_t p, std::int64_t a, std::int64_t b) {
    return ntheory::delta_sign(static_cast<std::int64_t>(ntheory::mul_mod(ntheory::least_residue(a, p),
                                                                           ntheory::least_residue(b, p), p)),
                               p);
}

void require_ab(std::uint64_t p, std::int64_t a, std::int64_t b) {
    require_prime_gt3(p);
    require(legendre(a, p) != 0 && legendre(b, p) != 0, "p does not divide ab");
}

}  // namespace

Monomial operator*(const Monomial& x, const Monomial& y) {
    if (x.is_zero() || y.is_zero()) return Monomial::zero();
    Monomial r{x.sign * y.sign, x.pow2 + y.pow2, x.half_p + y.half_p, x.eps_mult + y.eps_mult, x.times_i != y.times_i};
    if (x.times_i && y.times_i) r.sign = -r.sign;
    return r;
}

std::string Monomial::to_string(std::uint64_t p) const {
    if (is_zero()) return "0";
    std::vector<std::string> parts;
    if (pow2 != 0) parts.push_back(pow2 == 1 ? "2" : "2^" + std::to_string(pow2));
    if (half_p != 0) {
        const std::string ps = std::to_string(p);
        if (half_p % 2 == 0)
            parts.push_back(half_p == 2 ? ps : ps + "^" + std::to_string(half_p / 2));
        else
            parts.push_back(ps + "^(" + std::to_string(half_p) + "/2)");
    }
    if (eps_mult != 0) parts.push_back(eps_mult == 1 ? "eps^h" : "eps^(" + std::to_string(eps_mult) + "h)");
    if (times_i) parts.push_back("i");
    std::string s = sign < 0 ? "-" : "";
    if (parts.empty()) return s + "1";
    for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? "*" : "") + parts[k];
    return s;
}

std::string to_string(Object o) {
    switch (o) {
        case Object::T0: return "T0";
        case Object::T1: return "T1";
        case Object::TBAR: return "TBAR";
        case Object::C1: return "C1";
        case Object::CBAR: return "CBAR";
    }
    return "?";
}

Object parse_object(const std::string& name) {
    std::string u = name;
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::toupper(ch); });
    for (Object o : {Object::T0, Object::T1, Object::TBAR, Object::C1, Object::CBAR})
        if (to_string(o) == u) return o;
    throw InvalidArgument("unknown object '" + name + "' (expected T0, T1, TBAR, C1 or CBAR)");
}

qmatrix::MatrixSpec object_spec(Object o, std::uint64_t p, std::int64_t a, std::int64_t b) {
    qmatrix::MatrixSpec s;
    s.p = p;
    s.a = a;
    s.b = b;
    const bool cot = o == Object::C1 || o == Object::CBAR;
    s.family = cot ? qmatrix::Family::TRIG_COT : qmatrix::Family::TRIG_TAN;
    s.range = (o == Object::T1 || o == Object::C1) ? qmatrix::Range::POS : qmatrix::Range::FULL;
    s.bar = o == Object::TBAR || o == Object::CBAR;
    return s;
}

std::int64_t square_ratio_root(std::uint64_t p, std::int64_t a, std::int64_t b) {
    const std::uint64_t target = ntheory::mul_mod(ntheory::least_residue(b, p),
                                                  ntheory::inv_mod(ntheory::least_residue(a, p), p), p);
    for (std::uint64_t c = 1; c < p; ++c)
        if (ntheory::mul_mod(c, c, p) == target) return static_cast<std::int64_t>(c);
    throw HypothesisViolation("(ab/p) = 1");
}

const std::vector<std::string>& trig_statement_ids() {
    static const std::vector<std::string> ids = {"thm13_i", "thm13_ii", "eq_Tp03", "eq_Tpm",
                                                 "eq_C",    "eq_cot",   "thm14",   "thm15"};
    return ids;
}

std::vector<ObjectForm> trig_forms(const std::string& id, std::uint64_t p, std::int64_t a, std::int64_t b) {
    require_ab(p, a, b);
    const long n = static_cast<long>((p - 1) / 2);
    const long lp = static_cast<long>(p);
    const int s = legendre(a, p) * legendre(b, p);
    const int la = legendre(a, p);
    const bool one_mod4 = p % 4 == 1;
    auto c_only = [](Object o, Monomial c) { return ObjectForm{o, {c, Monomial::zero()}}; };
    auto d_only = [](Object o, Monomial d) { return ObjectForm{o, {Monomial::zero(), d}}; };

    if (id == "thm13_i") {
        require(one_mod4, "p == 1 (mod 4)");
        if (s == 1) {
            const int l2c = legendre(2 * square_ratio_root(p, a, b), p);
            return {d_only(Object::T0, {l2c, 0, (lp + 1) / 2, la * (legendre(2, p) - 2), false})};
        }
        const int dl = delta_ab(p, a, b);
        return {c_only(Object::T1, {-dl, n, (lp - 3) / 2, 0, false}),
                d_only(Object::T0, {-dl, n, (lp + 1) / 2, 0, false})};
    }
    if (id == "thm13_ii") {
        require(!one_mod4, "p == 3 (mod 4)");
        return {d_only(Object::T1, s == 1 ? Monomial{-1, n, (lp - 3) / 2, 0, false} : Monomial{1, 0, (lp - 3) / 2, 0, false})};
    }
    if (id == "eq_Tp03") {
        require(!one_mod4, "p == 3 (mod 4)");
        return {c_only(Object::T0, {1, s == 1 ? n : 0, (lp + 1) / 2, 0, false})};
    }
    if (id == "eq_Tpm") {
        require(one_mod4, "p == 1 (mod 4)");
        if (s == 1) {
            const int l2c = legendre(2 * square_ratio_root(p, a, b), p);
            return {c_only(Object::T1, {l2c, 0, (lp - 3) / 2, la * (2 - legendre(2, p)), false})};
        }
        return {c_only(Object::T1, {-delta_ab(p, a, b), n, (lp - 3) / 2, 0, false})};
    }
    if (id == "eq_C") {
        require(s == (one_mod4 ? -1 : 1), "(-ab/p) = -1");
        if (one_mod4) {
            // T1(a,b) / (-p)^{(p-1)/4} with T1(a,b) in its delta form.
            const int dl = delta_ab(p, a, b);
            return {c_only(Object::C1, {-dl * neg_one_pow((lp - 1) / 4), n, -1, 0, false})};
        }
        return {c_only(Object::C1, {neg_one_pow((h_imag(p) + 1) / 2) * la, n, -1, 0, false})};
    }
    if (id == "eq_cot") {
        require(one_mod4, "p == 1 (mod 4)");
        require(s == -1, "(ab/p) = -1");
        return {c_only(Object::C1, {neg_one_pow((lp + 3) / 4) * delta_ab(p, a, b), n, -1, 0, false})};
    }
    if (id == "thm14") {
        if (one_mod4) {
            if (s == 1) {
                const int l2c = legendre(2 * square_ratio_root(p, a, b), p);
                return {c_only(Object::TBAR, {l2c, 0, (lp - 1) / 2, 0, false})};
            }
            return {c_only(Object::TBAR, {-delta_ab(p, a, b), n, (lp - 1) / 2, legendre(2 * a, p), false})};
        }
        const int sign = neg_one_pow((lp + 1) / 4 + (h_imag(p) + 1) / 2) * la;
        return {c_only(Object::TBAR, {sign, (1 + s) * (lp - 1) / 4, (lp - 1) / 2, 0, false})};
    }
    if (id == "thm15") {
        require(s == (one_mod4 ? -1 : 1), "(-ab/p) = -1");
        if (one_mod4)
            return {c_only(Object::CBAR,
                           {neg_one_pow((lp + 3) / 4) * delta_ab(p, a, b), n, -1, 2L * la, false})};
        return {c_only(Object::CBAR, {neg_one_pow((h_imag(p) - 1) / 2) * la, n, -1, 0, false})};
    }
    throw InvalidArgument("unknown trigonometric statement '" + id + "'");
}

Monomial one_minus_product(std::uint64_t p, std::int64_t a) {
    require_prime_gt3(p);
    require(legendre(a, p) != 0, "p does not divide a");
    if (p % 4 == 1) return {1, 0, 1, -legendre(a, p), false};
    return {neg_one_pow((h_imag(p) + 1) / 2) * legendre(a, p), 0, 1, 0, true};
}

Monomial pair_diff_product(std::uint64_t p, std::int64_t a) {
    require_prime_gt3(p);
    require(p % 4 == 3, "p == 3 (mod 4)");
    require(legendre(a, p) != 0, "p does not divide a");
    const long lp = static_cast<long>(p);
    if (p % 8 == 3) return {neg_one_pow((lp - 3) / 8), 0, (lp - 3) / 4, 0, false};
    return {neg_one_pow((lp + 1) / 8 + (h_imag(p) - 1) / 2) * legendre(a, p), 0, (lp - 3) / 4, 0, true};
}

Monomial pair_sum_product(std::uint64_t p, std::int64_t a) {
    require_prime_gt3(p);
    require(p % 4 == 3, "p == 3 (mod 4)");
    require(legendre(a, p) != 0, "p does not divide a");
    return Monomial::one();
}

Monomial pair_diff_product_ab(std::uint64_t p, std::int64_t a, std::int64_t b) {
    require_ab(p, a, b);
    require(p % 4 == 1, "p == 1 (mod 4)");
    require(legendre(a, p) * legendre(b, p) == -1, "(ab/p) = -1");
    return {-delta_ab(p, a, b), 0, (static_cast<long>(p) - 3) / 2, 0, false};
}

Monomial grid_product(std::uint64_t p, std::int64_t a, std::int64_t b) {
    require_ab(p, a, b);
    require(p % 4 == 3, "p == 3 (mod 4)");
    require(legendre(a, p) * legendre(b, p) == 1, "(ab/p) = 1");
    return {neg_one_pow((h_imag(p) - 1) / 2) * legendre(a, p), 0, (static_cast<long>(p) - 1) / 2, 0, true};
}

Monomial cot_pair_product_ab(std::uint64_t p, std::int64_t a, std::int64_t b) {
    require_ab(p, a, b);
    require(p % 4 == 1, "p == 1 (mod 4)");
    require(legendre(a, p) * legendre(b, p) == -1, "(ab/p) = -1");
    const long lp = static_cast<long>(p);
    return {delta_ab(p, a, b) * neg_one_pow((lp + 3) / 4), (lp - 1) * (lp - 3) / 4, -(lp - 3) / 2, 0, false};
}

}  // namespace qrdet::closed
