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

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qrdet/report.hpp"
#include "qrdet_cli/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run qrdet_run(std::vector<std::string> args) {
    args.insert(args.begin(), "qrdet");
    std::ostringstream out, err;
    const int code = qrdet::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<json> json_lines(const std::string& s) {
    std::vector<json> v;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line.front() == '{') v.push_back(json::parse(line));
    return v;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(qrdet_run({"verify", "--check", "thm11_i", "--pmin", "5", "--pmax", "13", "--quiet"}).code == 0);
    CHECK(qrdet_run({}).code == 2);
    CHECK(qrdet_run({"frobnicate"}).code == 2);
    CHECK(qrdet_run({"verify", "--check", "no_such_check", "--p", "7"}).code == 2);
    CHECK(qrdet_run({"verify", "--check", "thm11_i", "--p", "9"}).code == 2);
    CHECK(qrdet_run({"verify", "--format", "xml", "--p", "7"}).code == 2);
    CHECK(qrdet_run({"verify", "--check", "tan_exact", "--p", "37", "--a", "1", "--b", "1"}).code == 3);
}

TEST_CASE("eval") {
    auto r = qrdet_run({"eval", "--object", "T1", "--p", "7", "--x", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "-56\n");
    r = qrdet_run({"eval", "--object", "S", "--p", "7", "--d", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "-4\n");
    r = qrdet_run({"eval", "--object", "C1", "--p", "5", "--a", "1", "--b", "1"});
    CHECK(r.code == 2);
}

TEST_CASE("explore") {
    auto r = qrdet_run({"explore", "em", "--m", "5", "--pmax", "200"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["members"] == json::array({29}));
    r = qrdet_run({"explore", "tp", "--p", "29"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["tp"] == "13");
    r = qrdet_run({"explore", "dm", "--p", "13", "--m", "1"});
    CHECK(r.code == 0);
}

TEST_CASE("precision from the environment") {
    ::setenv("QRDET_PRECISION_BITS", "64", 1);
    CHECK(qrdet_run({"eval", "--object", "T1", "--p", "7", "--x", "1"}).code == 2);
    ::setenv("QRDET_PRECISION_BITS", "oops", 1);
    CHECK(qrdet_run({"eval", "--object", "T1", "--p", "7", "--x", "1"}).code == 2);
    ::setenv("QRDET_PRECISION_BITS", "512", 1);
    CHECK(qrdet_run({"eval", "--object", "T1", "--p", "7", "--x", "1"}).out == "-56\n");
    ::unsetenv("QRDET_PRECISION_BITS");
}

TEST_CASE("json and csv output") {
    auto r = qrdet_run({"verify", "--check", "thm11_ii", "--pmin", "5", "--pmax", "11", "--format", "json", "--quiet"});
    CHECK(r.code == 0);
    const auto lines = json_lines(r.out);
    CHECK(!lines.empty());
    for (const auto& j : lines) CHECK(j["status"] == "PASS");
    r = qrdet_run({"verify", "--check", "thm11_i", "--p", "7", "--format", "csv", "--quiet"});
    CHECK(r.out.rfind(qrdet::report::csv_header(), 0) == 0);
}

TEST_CASE("cache is reused") {
    const auto path = std::filesystem::temp_directory_path() / "qrdet_cli_cache.jsonl";
    std::filesystem::remove(path);
    const std::vector<std::string> args{"verify", "--check", "thm11_i", "--p", "7", "--format", "json",
                                        "--quiet", "--cache", path.string()};
    const auto first = qrdet_run(args);
    CHECK(first.code == 0);
    CHECK(qrdet::report::Cache(path).size() == 6);
    const auto second = qrdet_run(args);
    CHECK(second.code == 0);
    CHECK(json_lines(second.out).size() == 6);
    CHECK(qrdet::report::Cache(path).size() == 6);

    // A cached FAIL is served as is, so the exit code reflects it.
    {
        qrdet::report::Cache c(path);
        auto rep = *c.find({"thm11_i", 7, {{"d", 1}}});
        rep.status = qrdet::verify::Status::FAIL;
        std::filesystem::remove(path);
        qrdet::report::Cache fresh(path);
        fresh.append(rep);
    }
    CHECK(qrdet_run(args).code == 1);
    std::filesystem::remove(path);
}
