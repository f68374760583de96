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

#include "qrdet/conjectures.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "checks.hpp"
#include "qrdet/errors.hpp"
#include "qrdet/exactlin.hpp"
#include "qrdet/ntheory.hpp"
#include "qrdet/qmatrix.hpp"

namespace qrdet::conjectures {

using qmatrix::Family;
using qmatrix::MatrixSpec;
using qmatrix::Range;
using verify::CheckReport;
using verify::Status;
using verify::detail::join;
using verify::detail::make_report;
using verify::detail::require;
using verify::detail::symbol_str;

namespace {

MatrixSpec legendre_spec(std::uint64_t p, std::int64_t d, Range range) {
    MatrixSpec s;
    s.family = Family::LEGENDRE;
    s.p = p;
    s.d = d;
    s.range = range;
    return s;
}

MatrixSpec skew_spec(std::uint64_t p, unsigned m) {
    MatrixSpec s;
    s.family = Family::SKEW_D;
    s.p = p;
    s.exponent = m;
    s.range = Range::POS;
    return s;
}

mpq_class pow2q(long e) {
    mpz_class v = 1;
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(std::labs(e)));
    return e >= 0 ? mpq_class(v) : mpq_class(mpz_class(1), v);
}

std::string str(std::uint64_t v) { return std::to_string(v); }

void require_one_mod4(std::uint64_t p) {
    require(p % 4 == 1, "p == 1 (mod 4)");
}

std::vector<std::pair<mpz_class, unsigned>> trial_factor(mpz_class v) {
    std::vector<std::pair<mpz_class, unsigned>> out;
    constexpr unsigned long kLimit = 1000000;
    for (unsigned long q = 2; q <= kLimit && v > 1; ++q) {
        if (mpz_divisible_ui_p(v.get_mpz_t(), q) == 0) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), q) != 0) {
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), q);
            ++e;
        }
        out.emplace_back(mpz_class(q), e);
    }
    if (v > 1) out.emplace_back(v, 0);
    return out;
}

}  // namespace

mpq_class tp_tail_prediction(std::uint64_t p, const mpz_class& t, std::int64_t jacobsthal) {
    const long e = (static_cast<long>(p) - 7) / 2;
    return pow2q(e) * mpq_class(t * t) * static_cast<long>(jacobsthal);
}

mpz_class tp_full_prediction(std::uint64_t p, const mpz_class& t, std::int64_t jacobsthal) {
    mpz_class v = t * static_cast<unsigned long>((p - 1) / 4);
    v *= v;
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), (p - 3) / 2);
    return v * static_cast<long>(jacobsthal);
}

TpRecord extract_tp(std::uint64_t p) {
    if (!ntheory::is_prime(p) || p < 5) throw InvalidArgument("extract_tp: p must be a prime >= 5");
    require_one_mod4(p);
    const ntheory::PrimeCtx ctx(p);
    TpRecord rec;
    rec.p = p;
    for (std::uint64_t d = 1; d < p; ++d) {
        if (ctx.chi_residue(d) != -1) continue;
        if (p > kTpCrossCheckMax && rec.samples.size() == kTpSamples) break;
        TpSample s;
        s.d = static_cast<std::int64_t>(d);
        s.jacobsthal = ntheory::jacobsthal_sum(s.d, ctx);
        s.tail = exactlin::det_multimodular(qmatrix::build_int(legendre_spec(p, s.d, Range::TAIL)));
        if (s.jacobsthal != 0) {
            // tail / (2^{(p-7)/2} J), exact even when the power of 2 is negative.
            const mpq_class q = mpq_class(s.tail) / tp_tail_prediction(p, 1, s.jacobsthal);
            if (q.get_den() == 1 && q >= 0) s.root = exactlin::integer_sqrt_exact(q.get_num());
        }
        if (p <= kTpCrossCheckMax) {
            s.full = exactlin::det_multimodular(qmatrix::build_int(legendre_spec(p, s.d, Range::FULL)));
            if (s.root) s.full_route_ok = *s.full == tp_full_prediction(p, *s.root, s.jacobsthal);
        }
        rec.samples.push_back(std::move(s));
    }
    rec.per_d_consistent = !rec.samples.empty() && std::all_of(rec.samples.begin(), rec.samples.end(), [&](const TpSample& s) {
        return s.root && *s.root == *rec.samples.front().root && s.full_route_ok.value_or(true);
    });
    if (rec.per_d_consistent && *rec.samples.front().root > 0) {
        rec.tp = *rec.samples.front().root;
        rec.symbol_ok = ntheory::legendre(static_cast<std::int64_t>(mpz_fdiv_ui(rec.tp->get_mpz_t(), p)), p) == 1;
        rec.factorization = trial_factor(*rec.tp);
    }
    return rec;
}

std::string factor_string(const std::vector<std::pair<mpz_class, unsigned>>& f) {
    if (f.empty()) return "1";
    std::string s;
    for (const auto& [q, e] : f) {
        if (!s.empty()) s += '*';
        s += q.get_str();
        if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
}

CheckReport check_conj_p2(std::uint64_t p, std::int64_t d) {
    require_one_mod4(p);
    require(ntheory::legendre(d, p) == -1, "(d/p) = -1");
    auto r = make_report("conj_p2", p, {{"d", d}});
    MatrixSpec s;
    s.family = Family::POWER;
    s.p = p;
    s.d = 1;
    s.exponent = static_cast<unsigned>(p - 2);
    s.range = Range::POS;
    const std::uint64_t sp = exactlin::det_mod(qmatrix::build_mod(s));
    s.range = Range::FULL;
    s.bar = true;
    const std::uint64_t sbar = exactlin::det_mod(qmatrix::build_mod(s));
    const std::int64_t rhs = 2 * ntheory::delta_sign(d, p) * ntheory::jacobsthal_sum(d, p);
    const std::string rr = str(ntheory::least_residue(rhs, p));
    verify::detail::set_exact(
        r, join({str(ntheory::mul_mod(3, sbar, p)), str(sp), symbol_str(ntheory::legendre(static_cast<std::int64_t>(sp), p))}),
        join({rr, rr, "1"}));
    return r;
}

int dm_expected_symbol(std::uint64_t p, unsigned m) {
    require_one_mod4(p);
    require(m == 1 || m == 3, "m in {1, 3}");
    const ntheory::PrimeCtx ctx(p);
    unsigned count = 0;
    for (std::uint64_t k = 1; 4 * k < p; ++k) count += ctx.chi_residue(k) == -1;
    const int sign = count % 2 ? -1 : 1;
    const std::uint64_t q = m == 1 ? 3 : (((p - 1) / 4) % 2 ? 3 : 5);
    return sign * ntheory::legendre(static_cast<std::int64_t>(p), q);
}

CheckReport dm_symbol(std::uint64_t p, unsigned m) {
    const int expect = dm_expected_symbol(p, m);
    auto r = make_report("conj_dm", p, {{"m", m}});
    const std::uint64_t pf = exactlin::pfaffian_mod(qmatrix::build_mod(skew_spec(p, m)));
    if (pf == 0) {
        r.status = Status::SKIPPED;
        r.reason = "p divides D";
        r.lhs = {"0", std::nullopt};
        r.rhs = {symbol_str(expect), std::nullopt};
        return r;
    }
    std::vector<std::string> lhs{symbol_str(ntheory::legendre(static_cast<std::int64_t>(pf), p))};
    std::vector<std::string> rhs{symbol_str(expect)};
    if (p <= kTpCrossCheckMax) {
        const mpz_class det = exactlin::det_multimodular(qmatrix::build_int(skew_spec(p, m)));
        const auto root = exactlin::integer_sqrt_exact(det);
        if (!root) throw InternalError("dm_symbol: D is not a perfect square");
        lhs.push_back(symbol_str(ntheory::legendre(static_cast<std::int64_t>(mpz_fdiv_ui(root->get_mpz_t(), p)), p)));
        rhs.push_back(symbol_str(expect));
    }
    verify::detail::set_exact(r, join(lhs), join(rhs));
    return r;
}

EmScan scan_Em(unsigned m, std::uint64_t pmax, unsigned jobs) {
    if (m % 2 == 0) throw InvalidArgument("scan_Em: m must be odd");
    if (pmax > kMaxScanPrime) throw ResourceLimit("scan_Em: pmax exceeds " + std::to_string(kMaxScanPrime));
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : ntheory::primes_in_range(5, pmax))
        if (p % 4 == 1) primes.push_back(p);
    std::vector<char> hit(primes.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < primes.size(); k = next++)
            hit[k] = exactlin::det_mod(qmatrix::build_mod(skew_spec(primes[k], m))) == 0;
    };
    jobs = std::max(1u, jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    EmScan out{m, pmax, {}};
    for (std::size_t k = 0; k < primes.size(); ++k)
        if (hit[k]) out.members.push_back(primes[k]);
    return out;
}

std::optional<std::vector<std::uint64_t>> reported_Em(unsigned m) {
    switch (m) {
        case 5: return std::vector<std::uint64_t>{29};
        case 7: return std::vector<std::uint64_t>{13, 53};
        case 9: return std::vector<std::uint64_t>{13, 17, 29};
        case 11: return std::vector<std::uint64_t>{17, 29};
        case 13: return std::vector<std::uint64_t>{17, 109, 401};
        default: return std::nullopt;
    }
}

}  // namespace qrdet::conjectures

namespace qrdet::verify::detail {

namespace {

CheckReport run_conj_tp(std::uint64_t p, const Params& params, const RunOptions&) {
    require(p >= 5, "p >= 5");
    const auto rec = conjectures::extract_tp(p);
    auto r = make_report("conj_tp", p, params);
    std::vector<std::string> lhs, rhs;
    const auto& first = rec.samples.front();
    for (const auto& s : rec.samples) {
        lhs.push_back(s.tail.get_str());
        rhs.push_back(first.root ? conjectures::tp_tail_prediction(p, *first.root, s.jacobsthal).get_str() : "none");
        if (s.full) {
            lhs.push_back(s.full->get_str());
            rhs.push_back(first.root ? conjectures::tp_full_prediction(p, *first.root, s.jacobsthal).get_str() : "none");
        }
    }
    lhs.push_back(rec.tp ? symbol_str(ntheory::legendre(static_cast<std::int64_t>(mpz_fdiv_ui(rec.tp->get_mpz_t(), p)), p)) : "none");
    rhs.push_back("1");
    set_exact(r, join(lhs), join(rhs));
    if (r.status == Status::FAIL && !rec.tp) r.reason = "no positive integer t_p fits every sampled d";
    return r;
}

CheckReport run_conj_p2(std::uint64_t p, const Params& params, const RunOptions&) {
    return conjectures::check_conj_p2(p, param(params, "d"));
}

CheckReport run_conj_dm(std::uint64_t p, const Params& params, const RunOptions&) {
    const std::int64_t m = param(params, "m");
    require(m == 1 || m == 3, "m in {1, 3}");
    return conjectures::dm_symbol(p, static_cast<unsigned>(m));
}

std::vector<Params> sweep_qnr(std::uint64_t p) {
    std::vector<Params> out;
    for (std::uint64_t d = 1; d < p; ++d)
        if (ntheory::legendre(static_cast<std::int64_t>(d), p) == -1) out.push_back({{"d", static_cast<std::int64_t>(d)}});
    return out;
}

}  // namespace

std::vector<CheckDef> conjecture_checks() {
    return {
        {"conj_tp", "tail determinant equals 2^{(p-7)/2} t_p^2 J for one t_p and every sampled d",
         [](std::uint64_t p) { return p % 4 == 1 && p >= 5 ? std::vector<Params>{Params{}} : std::vector<Params>{}; },
         run_conj_tp},
        {"conj_p2", "3 barS_{p-2}(1,p) == S_{p-2}(1,p) == 2 delta(d,p) J (mod p)",
         [](std::uint64_t p) { return p % 4 == 1 ? sweep_qnr(p) : std::vector<Params>{}; }, run_conj_p2},
        {"conj_dm", "Legendre symbol of sqrt(D_p^(m)) for m = 1, 3",
         [](std::uint64_t p) {
             return p % 4 == 1 ? std::vector<Params>{{{"m", 1}}, {{"m", 3}}} : std::vector<Params>{};
         },
         run_conj_dm},
    };
}

}  // namespace qrdet::verify::detail
