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

#include "qrdet_cli/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <memory>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrdet/closed_form.hpp"
#include "qrdet/conjectures.hpp"
#include "qrdet/errors.hpp"
#include "qrdet/exactlin.hpp"
#include "qrdet/ntheory.hpp"
#include "qrdet/qmatrix.hpp"
#include "qrdet/realhp.hpp"
#include "qrdet/report.hpp"
#include "qrdet/verify.hpp"

namespace qrdet::cli {

namespace {

using verify::CheckReport;
using verify::Status;

enum class Format { TEXT, JSON, CSV };

struct Config {
    std::vector<std::string> checks;
    std::uint64_t pmin = 5;
    std::uint64_t pmax = 31;
    std::optional<std::uint64_t> p;
    std::optional<std::int64_t> d, a, b, m, n;
    long precision = 0;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    Format format = Format::TEXT;
    std::string cache;
    bool quiet = false;
    bool list = false;

    std::string object;
    std::string x = "0";
    bool mod_p = false;
    std::uint64_t em_pmax = 1000;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void apply_range(Config& c) {
    if (c.p) {
        if (*c.p % 2 == 0 || !ntheory::is_prime(*c.p)) throw UsageError("--p must be an odd prime");
        c.pmin = c.pmax = *c.p;
    }
    if (c.pmin > c.pmax) throw UsageError("--pmin must not exceed --pmax");
}

mpfr_prec_t resolve_precision(const Config& c) {
    long bits = c.precision;
    if (bits == 0) {
        if (const char* env = std::getenv("QRDET_PRECISION_BITS"); env && *env) {
            try {
                bits = std::stol(env);
            } catch (const std::exception&) {
                throw UsageError(std::string("QRDET_PRECISION_BITS is not an integer: ") + env);
            }
        }
    }
    if (bits != 0 && bits < 128) throw UsageError("precision must be at least 128 bits");
    return static_cast<mpfr_prec_t>(bits);
}

verify::Params explicit_params(const Config& c) {
    verify::Params params;
    if (c.d) params["d"] = *c.d;
    if (c.a) params["a"] = *c.a;
    if (c.b) params["b"] = *c.b;
    if (c.m) params["m"] = *c.m;
    if (c.n) params["n"] = *c.n;
    return params;
}

class Progress {
public:
    Progress(std::ostream& err, bool quiet) : err_(err), quiet_(quiet) {}

    void operator()(std::size_t done, std::size_t total) {
        if (quiet_) return;
        const auto now = std::chrono::steady_clock::now();
        if (done != total && now - last_ < std::chrono::seconds(1)) return;
        last_ = now;
        err_ << "[" << done << "/" << total << "]\n" << std::flush;
    }

private:
    std::ostream& err_;
    bool quiet_;
    std::chrono::steady_clock::time_point last_{};
};

std::vector<CheckReport> execute(const std::vector<verify::Task>& tasks, const Config& c, std::ostream& err) {
    std::unique_ptr<report::Cache> cache;
    if (!c.cache.empty()) cache = std::make_unique<report::Cache>(c.cache);
    verify::SuiteHooks hooks;
    if (cache) {
        hooks.lookup = [&](const verify::Task& t) { return cache->find(t); };
        hooks.on_fresh = [&](const CheckReport& r) { cache->append(r); };
    }
    Progress progress(err, c.quiet);
    hooks.progress = [&](std::size_t done, std::size_t total) { progress(done, total); };
    verify::RunOptions opts;
    opts.precision = resolve_precision(c);
    return verify::run_tasks(tasks, c.jobs, opts, hooks);
}

void emit(const std::vector<CheckReport>& reports, Format f, std::ostream& out) {
    if (f == Format::CSV) out << report::csv_header() << '\n';
    for (const auto& r : reports) {
        switch (f) {
            case Format::JSON: out << report::to_json(r) << '\n'; break;
            case Format::CSV: out << report::to_csv(r) << '\n'; break;
            case Format::TEXT: out << report::to_text(r) << '\n'; break;
        }
    }
}

int exit_code(const std::vector<CheckReport>& reports) {
    bool error = false;
    for (const auto& r : reports) {
        if (r.status == Status::FAIL) return kSomeFail;
        error = error || r.status == Status::ERROR;
    }
    return error ? kEngine : kAllPass;
}

void summarize(const std::vector<CheckReport>& reports, const Config& c, std::ostream& err) {
    if (c.quiet) return;
    std::map<Status, std::size_t> counts;
    for (const auto& r : reports) ++counts[r.status];
    err << reports.size() << " reports:";
    for (auto s : {Status::PASS, Status::FAIL, Status::SKIPPED, Status::ERROR})
        err << ' ' << verify::to_string(s) << '=' << counts[s];
    err << '\n';
}

std::vector<std::string> resolve_ids(const std::vector<std::string>& raw) {
    std::vector<std::string> ids;
    for (const auto& id : raw) {
        if (id == "all" || id == "ALL") return {};
        if (!verify::canonical_id(id)) throw UsageError("unknown check id: " + id);
        ids.push_back(id);
    }
    return ids;
}

// Checks in `ids`, or all, evaluated at fixed parameters on every prime in range.
std::vector<verify::Task> explicit_tasks(const Config& c, std::vector<std::string> ids) {
    if (ids.empty()) ids = verify::check_ids();
    std::vector<verify::Task> tasks;
    for (auto p : ntheory::primes_in_range(std::max<std::uint64_t>(c.pmin, 3), c.pmax))
        for (const auto& id : ids) tasks.push_back({id, p, explicit_params(c)});
    return tasks;
}

int cmd_verify(Config& c, std::ostream& out, std::ostream& err) {
    if (c.list) {
        for (const auto& def : verify::registry()) out << def.id << "  " << def.description << '\n';
        return kAllPass;
    }
    apply_range(c);
    const auto ids = resolve_ids(c.checks);
    const auto tasks = explicit_params(c).empty() ? verify::plan_suite(c.pmin, c.pmax, ids) : explicit_tasks(c, ids);
    const auto reports = execute(tasks, c, err);
    emit(reports, c.format, out);
    summarize(reports, c, err);
    return exit_code(reports);
}

bool is_trig_object(const std::string& name) {
    try {
        closed::parse_object(name);
        return true;
    } catch (const InvalidArgument&) {
        return false;
    }
}

std::string upper(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

qmatrix::MatrixSpec integer_object(const Config& c, std::uint64_t p) {
    const std::string name = upper(c.object);
    qmatrix::MatrixSpec s;
    s.p = p;
    s.d = c.d.value_or(1);
    if (name == "S" || name == "T") {
        s.family = qmatrix::Family::LEGENDRE;
        s.range = name == "S" ? qmatrix::Range::POS : qmatrix::Range::FULL;
    } else if (name == "SN" || name == "TN") {
        if (!c.n || *c.n < 0) throw UsageError("--n is required for " + name);
        s.family = qmatrix::Family::POWER;
        s.exponent = static_cast<unsigned>(*c.n);
        s.range = name == "SN" ? qmatrix::Range::POS : qmatrix::Range::FULL;
    } else if (name == "D") {
        if (!c.m || *c.m < 1) throw UsageError("--m is required for D");
        s.family = qmatrix::Family::SKEW_D;
        s.exponent = static_cast<unsigned>(*c.m);
    } else {
        throw UsageError("unknown object: " + c.object + " (T0, T1, TBAR, C1, CBAR, S, T, SN, TN, D)");
    }
    return s;
}

int cmd_eval(Config& c, std::ostream& out) {
    if (!c.p) throw UsageError("--p is required");
    const std::uint64_t p = *c.p;
    nlohmann::ordered_json j{{"object", c.object}, {"p", p}};
    std::string text;
    if (is_trig_object(c.object)) {
        const auto obj = closed::parse_object(c.object);
        mpq_class x;
        if (x.set_str(c.x, 10) != 0) throw UsageError("--x must be an integer or a fraction: " + c.x);
        x.canonicalize();
        const auto spec = closed::object_spec(obj, p, c.a.value_or(1), c.b.value_or(1));
        const auto prec = realhp::working_precision(p, resolve_precision(c));
        const auto v = realhp::trig_det(spec, x, prec);
        j["a"] = spec.a;
        j["b"] = spec.b;
        j["x"] = x.get_str();
        j["value"] = v.value_string();
        j["err"] = v.err_string();
        text = v.value_string() + " +- " + v.err_string();
        // Report the integer when the determinant is certified to equal it.
        const mpz_class k = v.value.round();
        const realhp::HPReal ki(BigFloat(k, prec), BigFloat(0L, 64));
        if (!v.unreliable && realhp::compare(v, ki, prec) == realhp::Agreement::EQUAL) {
            j["integer"] = k.get_str();
            text = k.get_str();
        }
    } else {
        const auto spec = integer_object(c, p);
        j["d"] = spec.d;
        if (spec.family != qmatrix::Family::LEGENDRE) j["exponent"] = spec.exponent;
        if (c.mod_p) {
            text = std::to_string(exactlin::det_mod(qmatrix::build_mod(spec)));
            j["mod_p"] = text;
        } else {
            text = exactlin::det_multimodular(qmatrix::build_int(spec)).get_str();
            j["value"] = text;
        }
    }
    out << (c.format == Format::JSON ? j.dump() : text) << '\n';
    return kAllPass;
}

int cmd_em(Config& c, std::ostream& out) {
    if (!c.m) throw UsageError("--m is required");
    if (*c.m < 1 || *c.m % 2 == 0) throw UsageError("--m must be odd and positive");
    const auto scan = conjectures::scan_Em(static_cast<unsigned>(*c.m), c.em_pmax, c.jobs);
    if (c.format == Format::TEXT) {
        out << "E(" << scan.m << ") up to " << scan.pmax << ":";
        for (auto p : scan.members) out << ' ' << p;
        out << '\n';
    } else {
        out << report::to_json(scan) << '\n';
    }
    return kAllPass;
}

int cmd_tp(Config& c, std::ostream& out, std::ostream& err) {
    apply_range(c);
    int code = kAllPass;
    for (auto p : ntheory::primes_in_range(std::max<std::uint64_t>(c.pmin, 5), c.pmax)) {
        if (p % 4 != 1) continue;
        const auto rec = conjectures::extract_tp(p);
        if (!rec.tp || !rec.symbol_ok) code = kSomeFail;
        if (c.format == Format::TEXT) {
            out << "p=" << p << " t_p=" << (rec.tp ? rec.tp->get_str() : "NONE");
            if (rec.tp) out << " = " << conjectures::factor_string(rec.factorization);
            out << " consistent=" << rec.per_d_consistent << " symbol_ok=" << rec.symbol_ok << '\n';
        } else {
            out << report::to_json(rec) << '\n';
        }
        if (!c.quiet) err << "t_p done for p=" << p << '\n';
    }
    return code;
}

int cmd_conj_reports(Config& c, const std::string& id, std::ostream& out, std::ostream& err) {
    apply_range(c);
    auto tasks = verify::plan_suite(c.pmin, c.pmax, {id});
    const std::string key = id == "conj_p2" ? "d" : "m";
    const auto fixed = id == "conj_p2" ? c.d : c.m;
    if (fixed) std::erase_if(tasks, [&](const verify::Task& t) { return t.params.at(key) != *fixed; });
    const auto reports = execute(tasks, c, err);
    emit(reports, c.format, out);
    summarize(reports, c, err);
    return exit_code(reports);
}

void add_range(CLI::App* cmd, Config& c) {
    cmd->add_option("--pmin", c.pmin, "Smallest prime")->check(CLI::PositiveNumber);
    cmd->add_option("--pmax", c.pmax, "Largest prime")->check(CLI::PositiveNumber);
    cmd->add_option("--p", c.p, "Single prime (overrides the range)")->check(CLI::PositiveNumber);
}

void add_common(CLI::App* cmd, Config& c) {
    cmd->add_option("--precision", c.precision, "Working precision in bits (default max(256, 12p))");
    cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--format", c.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"text", Format::TEXT}, {"json", Format::JSON}, {"csv", Format::CSV}},
            CLI::ignore_case));
    cmd->add_option("--cache", c.cache, "JSON Lines cache file");
    cmd->add_flag("--quiet", c.quiet, "No progress on stderr");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Determinant identities for quadratic residues: verification and exploration"};
    app.set_version_flag("--version", report::version());
    app.require_subcommand(1);
    Config c;

    auto* verify_cmd = app.add_subcommand("verify", "Run registered checks over a prime range");
    add_range(verify_cmd, c);
    add_common(verify_cmd, c);
    verify_cmd->add_option("--check", c.checks, "Check ids, or all")->delimiter(',');
    verify_cmd->add_flag("--list", c.list, "List check ids and exit");
    for (auto [name, slot] : {std::pair{"--d", &c.d}, {"--a", &c.a}, {"--b", &c.b}, {"--m", &c.m}, {"--n", &c.n}})
        verify_cmd->add_option(name, *slot, "Fix this parameter instead of sweeping");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate one determinant");
    eval_cmd->add_option("--object", c.object, "T0, T1, TBAR, C1, CBAR, S, T, SN, TN or D")->required();
    eval_cmd->add_option("--p", c.p, "Prime")->required()->check(CLI::PositiveNumber);
    eval_cmd->add_option("--x", c.x, "Shift x for trigonometric objects");
    eval_cmd->add_flag("--mod-p", c.mod_p, "Integer objects: determinant mod p only");
    for (auto [name, slot] : {std::pair{"--d", &c.d}, {"--a", &c.a}, {"--b", &c.b}, {"--m", &c.m}, {"--n", &c.n}})
        eval_cmd->add_option(name, *slot);
    eval_cmd->add_option("--precision", c.precision, "Working precision in bits");
    eval_cmd->add_option("--format", c.format)
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::TEXT}, {"json", Format::JSON}},
                                            CLI::ignore_case));

    auto* explore = app.add_subcommand("explore", "Conjecture exploration");
    explore->require_subcommand(1);
    auto* em = explore->add_subcommand("em", "Scan E(m) = {p : p | D_p^(m)}");
    em->add_option("--m", c.m, "Odd exponent")->required();
    em->add_option("--pmax", c.em_pmax, "Largest prime")->check(CLI::PositiveNumber);
    add_common(em, c);
    auto* tp = explore->add_subcommand("tp", "Extract t_p");
    add_range(tp, c);
    add_common(tp, c);
    auto* p2 = explore->add_subcommand("p2", "p-2 congruence");
    add_range(p2, c);
    add_common(p2, c);
    p2->add_option("--d", c.d, "Nonresidue (default: all)");
    auto* dm = explore->add_subcommand("dm", "Symbols of sqrt(D_p^(m))");
    add_range(dm, c);
    add_common(dm, c);
    dm->add_option("--m", c.m, "1 or 3 (default: both)");
    for (auto* cmd : {em, tp, p2, dm}) {
        // Exploration output is machine-readable unless asked otherwise.
        cmd->preparse_callback([&c](std::size_t) { c.format = Format::JSON; });
    }

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kAllPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kAllPass;
    } catch (const CLI::CallForVersion&) {
        out << report::version() << '\n';
        return kAllPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) err << sub->help();
        return kUsage;
    }

    try {
        if (verify_cmd->parsed()) return cmd_verify(c, out, err);
        if (eval_cmd->parsed()) return cmd_eval(c, out);
        if (em->parsed()) return cmd_em(c, out);
        if (tp->parsed()) return cmd_tp(c, out, err);
        if (p2->parsed()) return cmd_conj_reports(c, "conj_p2", out, err);
        if (dm->parsed()) return cmd_conj_reports(c, "conj_dm", out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "engine error: " << e.what() << '\n';
        return kEngine;
    }
    return kUsage;
}

}  // namespace qrdet::cli
