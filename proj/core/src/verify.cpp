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

#include "qrdet/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>
#include <tuple>

#include "checks.hpp"
#include "qrdet/errors.hpp"

namespace qrdet::verify {

std::string to_string(Status s) {
    switch (s) {
        case Status::PASS: return "PASS";
        case Status::FAIL: return "FAIL";
        case Status::SKIPPED: return "SKIPPED";
        case Status::ERROR: return "ERROR";
    }
    return "ERROR";
}

Status parse_status(const std::string& s) {
    for (Status st : {Status::PASS, Status::FAIL, Status::SKIPPED, Status::ERROR})
        if (to_string(st) == s) return st;
    throw InvalidArgument("unknown status '" + s + "'");
}

std::string canonical_params(const Params& params) {
    std::string s;
    for (const auto& [k, v] : params) {
        if (!s.empty()) s += ',';
        s += k + '=' + std::to_string(v);
    }
    return s;
}

namespace detail {

CheckReport make_report(const std::string& id, std::uint64_t p, const Params& params) {
    CheckReport r;
    r.check_id = id;
    r.p = p;
    r.params = params;
    return r;
}

void set_exact(CheckReport& r, std::string lhs, std::string rhs) {
    r.status = lhs == rhs ? Status::PASS : Status::FAIL;
    if (r.status == Status::FAIL) r.reason = "lhs != rhs";
    r.lhs = {std::move(lhs), std::nullopt};
    r.rhs = {std::move(rhs), std::nullopt};
}

void set_numeric(CheckReport& r, const realhp::HPReal& lhs, const realhp::HPReal& rhs, mpfr_prec_t prec) {
    r.lhs = {lhs.value_string(), lhs.err_string()};
    r.rhs = {rhs.value_string(), rhs.err_string()};
    switch (realhp::compare(lhs, rhs, prec)) {
        case realhp::Agreement::EQUAL:
            r.status = Status::PASS;
            break;
        case realhp::Agreement::DIFFERENT:
            r.status = Status::FAIL;
            r.reason = "values differ beyond tolerance";
            break;
        case realhp::Agreement::INCONCLUSIVE:
            r.status = Status::ERROR;
            r.reason = "precision: error bound too large at " + std::to_string(prec) + " bits";
            break;
    }
}

std::string join(const std::vector<std::string>& items) {
    std::string s = "[";
    for (std::size_t k = 0; k < items.size(); ++k) s += (k ? "," : "") + items[k];
    return s + "]";
}

std::int64_t param(const Params& params, const char* key) {
    auto it = params.find(key);
    if (it == params.end()) throw InvalidArgument(std::string("missing parameter '") + key + "'");
    return it->second;
}

void require(bool ok, const char* hypothesis) {
    if (!ok) throw HypothesisViolation(hypothesis);
}

std::vector<Params> sweep_d(std::uint64_t p) {
    std::vector<Params> out;
    for (std::uint64_t d = 1; d < p; ++d) out.push_back({{"d", static_cast<std::int64_t>(d)}});
    return out;
}

std::vector<Params> sweep_d_neg_nonresidue(std::uint64_t p) {
    std::vector<Params> out;
    for (std::uint64_t d = 1; d < p; ++d)
        if (ntheory::legendre(-static_cast<std::int64_t>(d), p) == -1)
            out.push_back({{"d", static_cast<std::int64_t>(d)}});
    return out;
}

std::vector<Params> sweep_ab(std::uint64_t p) {
    const auto q = static_cast<std::int64_t>(ntheory::PrimeCtx(p).smallest_nonresidue());
    const auto lp = static_cast<std::int64_t>(p);
    std::vector<Params> out;
    for (std::int64_t a : {std::int64_t{1}, q}) {
        for (std::int64_t b : {std::int64_t{1}, q, 4 * a % lp}) {
            Params pr{{"a", a}, {"b", b}};
            if (std::find(out.begin(), out.end(), pr) == out.end()) out.push_back(pr);
        }
    }
    return out;
}

std::string to_str(std::int64_t v) { return std::to_string(v); }
std::string symbol_str(int s) { return std::to_string(s); }

}  // namespace detail

namespace {

struct Registry {
    std::vector<CheckDef> defs;
    std::map<std::string, std::string> aliases;
};

const Registry& reg() {
    static const Registry r = [] {
        Registry out;
        for (auto&& list : {detail::exact_checks(), detail::numeric_checks(), detail::conjecture_checks()})
            for (auto& d : list) out.defs.push_back(d);
        out.aliases["conj_T1_3mod4"] = "thm13_ii";
        return out;
    }();
    return r;
}

const CheckDef* find_def(const std::string& id) {
    const auto canon = canonical_id(id);
    if (!canon) return nullptr;
    for (const auto& d : reg().defs)
        if (d.id == *canon) return &d;
    return nullptr;
}

}  // namespace

const std::vector<CheckDef>& registry() { return reg().defs; }

std::vector<std::string> check_ids() {
    std::vector<std::string> ids;
    for (const auto& d : registry()) ids.push_back(d.id);
    return ids;
}

std::optional<std::string> canonical_id(const std::string& id) {
    if (auto it = reg().aliases.find(id); it != reg().aliases.end()) return it->second;
    for (const auto& d : reg().defs)
        if (d.id == id) return id;
    return std::nullopt;
}

CheckReport run_check(const std::string& id, std::uint64_t p, const Params& params, const RunOptions& opts) {
    const CheckDef* def = find_def(id);
    if (!def) throw InvalidArgument("unknown check id '" + id + "'");
    if (p < 3 || !ntheory::is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not an odd prime");
    const auto t0 = std::chrono::steady_clock::now();
    CheckReport r;
    try {
        r = def->run(p, params, opts);
    } catch (const HypothesisViolation& e) {
        r = detail::make_report(id, p, params);
        r.status = Status::SKIPPED;
        r.reason = kHypothesisPrefix + e.hypothesis();
    } catch (const ResourceLimit& e) {
        r = detail::make_report(id, p, params);
        r.status = Status::ERROR;
        r.reason = kLimitPrefix + std::string(e.what());
    } catch (const std::exception& e) {
        r = detail::make_report(id, p, params);
        r.status = Status::ERROR;
        r.reason = e.what();
    }
    r.check_id = id;
    r.p = p;
    r.params = params;
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<Task> plan_suite(std::uint64_t pmin, std::uint64_t pmax, const std::vector<std::string>& ids) {
    std::vector<const CheckDef*> defs;
    if (ids.empty()) {
        for (const auto& d : registry()) defs.push_back(&d);
    } else {
        for (const auto& id : ids) {
            const CheckDef* d = find_def(id);
            if (!d) throw InvalidArgument("unknown check id '" + id + "'");
            if (std::find(defs.begin(), defs.end(), d) == defs.end()) defs.push_back(d);
        }
    }
    std::vector<Task> tasks;
    if (pmax < pmin) return tasks;
    for (std::uint64_t p : ntheory::primes_in_range(std::max<std::uint64_t>(pmin, 3), pmax))
        for (const CheckDef* d : defs)
            for (auto& params : d->sweep(p)) tasks.push_back({d->id, p, std::move(params)});
    return tasks;
}

std::vector<CheckReport> run_tasks(const std::vector<Task>& tasks, unsigned jobs, const RunOptions& opts,
                                   const SuiteHooks& hooks) {
    std::vector<CheckReport> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::size_t done = 0;
    std::mutex mu;
    auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) {
            const Task& t = tasks[k];
            std::optional<CheckReport> cached;
            if (hooks.lookup) cached = hooks.lookup(t);
            if (cached) {
                results[k] = std::move(*cached);
            } else {
                results[k] = run_check(t.check_id, t.p, t.params, opts);
            }
            std::lock_guard<std::mutex> lock(mu);
            if (!cached && hooks.on_fresh) hooks.on_fresh(results[k]);
            ++done;
            if (hooks.progress) hooks.progress(done, tasks.size());
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<CheckReport> out;
    out.reserve(results.size());
    for (auto& r : results) {
        if (r.status == Status::SKIPPED && r.reason.rfind(kHypothesisPrefix, 0) == 0) continue;
        out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const CheckReport& x, const CheckReport& y) {
        return std::tie(x.p, x.check_id, x.params) < std::tie(y.p, y.check_id, y.params);
    });
    return out;
}

std::vector<CheckReport> run_suite(std::uint64_t pmin, std::uint64_t pmax, const std::vector<std::string>& ids,
                                   unsigned jobs, const RunOptions& opts, const SuiteHooks& hooks) {
    return run_tasks(plan_suite(pmin, pmax, ids), jobs, opts, hooks);
}

}  // namespace qrdet::verify
