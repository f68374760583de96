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

#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "json.hpp"
#include "qrdet/errors.hpp"
#include "qrdet/report.hpp"

using namespace qrdet;
using namespace qrdet::verify;
using nlohmann::json;

namespace {

CheckReport sample(std::uint64_t p = 7) {
    CheckReport r;
    r.check_id = "thm13_ii";
    r.p = p;
    r.params = {{"a", 1}, {"b", 3}};
    r.status = Status::PASS;
    r.lhs = {"-56.000000000", std::string("1.0e-70")};
    r.rhs = {"-56", std::nullopt};
    r.elapsed_ms = 12;
    return r;
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const char* tag)
        : path(std::filesystem::temp_directory_path() /
               (std::string("qrdet_") + tag + "_" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + ".jsonl")) {
        std::filesystem::remove(path);
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("json round trip") {
    auto r = sample();
    const auto line = report::to_json(r);
    CHECK(line.find('\n') == std::string::npos);
    const auto j = json::parse(line);
    CHECK(j["check_id"] == "thm13_ii");
    CHECK(j["p"] == 7);
    CHECK(j["status"] == "PASS");
    CHECK(j["lhs"]["err"] == "1.0e-70");
    CHECK(j["rhs"] == "-56");
    CHECK(report::parse_json(line) == r);

    r.status = Status::SKIPPED;
    r.reason = "hypothesis: p == 3 (mod 4) \"quoted\"";
    r.params.clear();
    CHECK(report::parse_json(report::to_json(r)) == r);

    CHECK_THROWS_AS(report::parse_json("not json"), InvalidArgument);
    CHECK_THROWS_AS(report::parse_json("{\"p\":7}"), InvalidArgument);
    CHECK_THROWS_AS(report::parse_json("[1,2]"), InvalidArgument);
}

TEST_CASE("csv") {
    CHECK(report::csv_header() == "check_id,p,params,status,lhs,rhs,elapsed_ms");
    auto r = sample();
    r.lhs = {"[1,-1]", std::nullopt};
    r.reason = "x";
    const auto row = report::to_csv(r);
    CHECK(row.rfind("\"thm13_ii\",\"7\",", 0) == 0);
    CHECK(row.find("\"[1,-1]\"") != std::string::npos);
    r.lhs = {"say \"hi\"", std::nullopt};
    CHECK(report::to_csv(r).find("\"say \"\"hi\"\"\"") != std::string::npos);
}

TEST_CASE("text") {
    const auto t = report::to_text(sample());
    CHECK(t.find("thm13_ii") != std::string::npos);
    CHECK(t.find("PASS") != std::string::npos);
}

TEST_CASE("em json") {
    conjectures::EmScan s{5, 1000, {29}};
    auto j = json::parse(report::to_json(s));
    CHECK(j["m"] == 5);
    CHECK(j["members"] == json::array({29}));
    CHECK(j["agrees_with_reported"] == true);
    s.pmax = 100;
    j = json::parse(report::to_json(s));
    CHECK(!j.contains("agrees_with_reported"));
    s = {3, 1000, {}};
    CHECK(!json::parse(report::to_json(s)).contains("reported"));
}

TEST_CASE("tp json") {
    conjectures::TpRecord rec;
    rec.p = 29;
    rec.tp = mpz_class(13);
    rec.per_d_consistent = rec.symbol_ok = true;
    rec.factorization = {{13, 1}};
    const auto j = json::parse(report::to_json(rec));
    CHECK(j["p"] == 29);
    CHECK(j["tp"] == "13");
    CHECK(j["symbol_ok"] == true);
}

TEST_CASE("cache idempotence") {
    TempFile f("cache");
    const Task t{"thm13_ii", 7, {{"a", 1}, {"b", 3}}};
    {
        report::Cache c(f.path);
        CHECK(c.size() == 0);
        CHECK(!c.find(t));
        c.append(sample());
        c.append(sample());
        CHECK(c.size() == 1);
        REQUIRE(c.find(t));
        CHECK(*c.find(t) == sample());
    }
    {
        std::ofstream out(f.path, std::ios::app);
        out << "garbage line\n";
        auto other = json::parse(report::to_json(sample(11)));
        other["version"] = "0.0.0-other";
        out << other.dump() << "\n";
    }
    report::Cache c(f.path);
    CHECK(c.size() == 1);
    CHECK(c.find(t) == sample());
    CHECK(!c.find(Task{"thm13_ii", 11, {{"a", 1}, {"b", 3}}}));
    CHECK(!c.find(Task{"thm13_ii", 7, {{"a", 1}, {"b", 1}}}));
}

TEST_CASE("cache concurrent appends") {
    TempFile f("conc");
    {
        report::Cache c(f.path);
        std::vector<std::thread> pool;
        for (int t = 0; t < 4; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t k = 0; k < 25; ++k) c.append(sample(1000 + 100 * t + k));
            });
        for (auto& th : pool) th.join();
        CHECK(c.size() == 100);
    }
    CHECK(report::Cache(f.path).size() == 100);
}
