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

#include "qrdet/report.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qrdet/errors.hpp"

#ifndef QRDET_VERSION
#define QRDET_VERSION "0.0.0"
#endif

namespace qrdet::report {

using nlohmann::json;
using verify::CheckReport;
using verify::Quantity;

namespace {

json quantity_json(const Quantity& q) {
    if (!q.err) return q.value;
    return json{{"value", q.value}, {"err", *q.err}};
}

Quantity parse_quantity(const json& j) {
    if (j.is_string()) return {j.get<std::string>(), std::nullopt};
    return {j.at("value").get<std::string>(), j.at("err").get<std::string>()};
}

json report_json(const CheckReport& r) {
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    return json{{"check_id", r.check_id},
                {"p", r.p},
                {"params", params},
                {"status", verify::to_string(r.status)},
                {"reason", r.reason},
                {"lhs", quantity_json(r.lhs)},
                {"rhs", quantity_json(r.rhs)},
                {"elapsed_ms", r.elapsed_ms}};
}

CheckReport report_from(const json& j) {
    CheckReport r;
    r.check_id = j.at("check_id").get<std::string>();
    r.p = j.at("p").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<std::int64_t>();
    r.status = verify::parse_status(j.at("status").get<std::string>());
    r.reason = j.value("reason", "");
    r.lhs = parse_quantity(j.at("lhs"));
    r.rhs = parse_quantity(j.at("rhs"));
    r.elapsed_ms = j.value("elapsed_ms", std::int64_t{0});
    return r;
}

std::string quantity_text(const Quantity& q) { return q.err ? q.value + " +- " + *q.err : q.value; }

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string version() { return QRDET_VERSION; }

std::string to_json(const CheckReport& r) { return report_json(r).dump(); }

CheckReport parse_json(const std::string& line) {
    try {
        return report_from(json::parse(line));
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("report: ") + e.what());
    }
}

std::string csv_header() { return "check_id,p,params,status,lhs,rhs,elapsed_ms"; }

std::string to_csv(const CheckReport& r) {
    return csv_quote(r.check_id) + ',' + csv_quote(std::to_string(r.p)) + ',' +
           csv_quote(verify::canonical_params(r.params)) + ',' + csv_quote(verify::to_string(r.status)) + ',' +
           csv_quote(quantity_text(r.lhs)) + ',' + csv_quote(quantity_text(r.rhs)) + ',' +
           csv_quote(std::to_string(r.elapsed_ms));
}

std::string to_text(const CheckReport& r) {
    std::ostringstream os;
    os << verify::to_string(r.status) << ' ' << r.check_id << " p=" << r.p;
    if (!r.params.empty()) os << ' ' << verify::canonical_params(r.params);
    os << "  lhs=" << quantity_text(r.lhs) << "  rhs=" << quantity_text(r.rhs);
    if (!r.reason.empty()) os << "  (" << r.reason << ')';
    os << "  " << r.elapsed_ms << "ms";
    return os.str();
}

std::string to_json(const conjectures::TpRecord& r) {
    json samples = json::array();
    for (const auto& s : r.samples) {
        json j{{"d", s.d}, {"jacobsthal", s.jacobsthal}, {"tail", s.tail.get_str()}};
        j["root"] = s.root ? json(s.root->get_str()) : json(nullptr);
        if (s.full_route_ok) j["full_route_ok"] = *s.full_route_ok;
        samples.push_back(std::move(j));
    }
    json out{{"p", r.p},
             {"tp", r.tp ? json(r.tp->get_str()) : json(nullptr)},
             {"per_d_consistent", r.per_d_consistent},
             {"symbol_ok", r.symbol_ok},
             {"factorization", conjectures::factor_string(r.factorization)},
             {"samples", samples}};
    if (!r.tp) out["factorization"] = nullptr;
    return out.dump();
}

std::string to_json(const conjectures::EmScan& s) {
    nlohmann::ordered_json out{{"m", s.m}, {"members", s.members}, {"pmax", s.pmax}};
    if (auto rep = conjectures::reported_Em(s.m); rep && s.pmax >= 1000) {
        std::vector<std::uint64_t> mine;
        for (auto p : s.members)
            if (p < 1000) mine.push_back(p);
        out["reported"] = *rep;
        out["agrees_with_reported"] = mine == *rep;
    }
    return out.dump();
}

Cache::Cache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            if (j.value("version", "") != version()) continue;
            CheckReport r = report_from(j);
            entries_[key(r.check_id, r.p, r.params)] = std::move(r);
        } catch (const std::exception&) {
            // A torn final line from an interrupted run; recomputed on demand.
        }
    }
}

std::string Cache::key(const std::string& id, std::uint64_t p, const verify::Params& params) {
    return id + '|' + std::to_string(p) + '|' + verify::canonical_params(params) + '|' + version();
}

std::optional<CheckReport> Cache::find(const verify::Task& t) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key(t.check_id, t.p, t.params));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void Cache::append(const CheckReport& r) {
    json j = report_json(r);
    j["version"] = version();
    std::lock_guard lock(mu_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw Error("cache: cannot open " + path_.string());
    out << j.dump() << '\n';
    out.flush();
    entries_[key(r.check_id, r.p, r.params)] = r;
}

}  // namespace qrdet::report
