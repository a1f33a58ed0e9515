// Copyright 2026 The Chronobell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chronobell/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "chronobell/report.hpp"

using namespace chronobell;

namespace {

struct RunResult {
    int status;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "chronobell");
    std::ostringstream out, err;
    int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("chronobell_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(cli, chsh_singlet_reaches_tsirelson) {
    auto r = run({"chsh", "--state", "singlet", "--angles", "0/90/45/135"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_NEAR(j["abs_chsh"].get<double>(), 2 * std::numbers::sqrt2, 1e-9);
    EXPECT_TRUE(j["violates_local_bound"].get<bool>());
    EXPECT_EQ(j["local_bound"].get<double>(), 2.0);

    auto canonical = run({"chsh", "--state", "singlet", "--angles", "0/90/45/-45"});
    auto jc = Json::parse(canonical.out);
    EXPECT_NEAR(std::abs(jc["chsh_canonical"].get<double>()), 2 * std::numbers::sqrt2, 1e-9);
}

TEST(cli, chsh_product_state_respects_local_bound) {
    for (const char* angles : {"0/90/45/135", "10/20/30/40", "0:1:0/1:0:0/0:0:1/1:1:1"}) {
        auto r = run({"chsh", "--state", "00", "--angles", angles});
        ASSERT_EQ(r.status, 0) << r.err;
        auto j = Json::parse(r.out);
        EXPECT_LE(j["abs_chsh"].get<double>(), 2.0 + 1e-12);
        EXPECT_FALSE(j["violates_local_bound"].get<bool>());
    }
}

TEST(cli, usage_errors_exit_two) {
    EXPECT_EQ(run({"chsh", "--state", "singlet"}).status, 2);
    EXPECT_EQ(run({"chsh", "--angles", "0/90/45"}).status, 2);
    EXPECT_EQ(run({"chsh", "--angles", "0/90/45/abc"}).status, 2);
    EXPECT_EQ(run({"chsh", "--state", "bogus", "--angles", "0/90/45/135"}).status, 2);
    EXPECT_EQ(run({}).status, 2);
    EXPECT_EQ(run({"frobnicate"}).status, 2);
    EXPECT_EQ(run({"covariance", "--state", "singlet"}).status, 2);  // no lambda source
    EXPECT_EQ(run({"covariance", "--seed", "1", "--lambda-file", "/nonexistent"}).status, 2);
    EXPECT_EQ(run({"nogo", "--L", "6"}).status, 2);
    auto missing = run({"chsh"});
    EXPECT_NE(missing.err.find("--angles"), std::string::npos);
}

TEST(cli, covariance_singlet_passes_and_diverges) {
    auto r = run({"covariance", "--state", "singlet", "--trials", "10000", "--seed", "1"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_TRUE(j["covariance"]["distribution"]["pass"].get<bool>());
    EXPECT_GT(j["covariance"]["realization"]["divergence_fraction"].get<double>(), 0.0);

    auto prod = Json::parse(run({"covariance", "--state", "01", "--trials", "1000", "--seed", "1"}).out);
    EXPECT_EQ(prod["covariance"]["realization"]["divergence_fraction"].get<double>(), 0.0);
}

TEST(cli, covariance_reports_are_replayable_and_worker_independent) {
    auto lam = temp_path("cov.lmda");
    ASSERT_EQ(run({"gen-lambda", "--seed", "3", "--count", "100000", "--out", lam.string()}).status, 0);
    std::vector<std::string> base{"covariance", "--state", "singlet", "--angles", "0/90/45/135",
                                  "--trials", "200", "--lambda-file", lam.string()};
    auto one = run(base);
    ASSERT_EQ(one.status, 0) << one.err;
    auto again = run(base);
    auto with_workers = base;
    with_workers.insert(with_workers.end(), {"--workers", "4"});
    auto four = run(with_workers);
    EXPECT_EQ(one.out, again.out);
    EXPECT_EQ(one.out, four.out);

    auto csv1 = temp_path("a.csv"), csv2 = temp_path("b.csv");
    auto c1 = base, c2 = with_workers;
    c1.insert(c1.end(), {"--csv", csv1.string()});
    c2.insert(c2.end(), {"--csv", csv2.string()});
    ASSERT_EQ(run(c1).status, 0);
    ASSERT_EQ(run(c2).status, 0);
    EXPECT_EQ(slurp(csv1), slurp(csv2));
    EXPECT_EQ(slurp(csv1).rfind("# chronology ab\na_index,b_index,alpha,beta,probability,stderr\n", 0), 0u);
    for (const auto& p : {lam, csv1, csv2}) std::filesystem::remove(p);
}

TEST(cli, lambda_exhaustion_exits_three) {
    auto lam = temp_path("short.lmda");
    ASSERT_EQ(run({"gen-lambda", "--seed", "1", "--count", "100", "--out", lam.string()}).status, 0);
    auto r = run({"covariance", "--state", "singlet", "--trials", "1000", "--lambda-file", lam.string()});
    EXPECT_EQ(r.status, 3) << r.err;
    auto f = run({"flash", "--lambda-file", lam.string(), "--runs", "50", "--out", temp_path("h.txt").string()});
    EXPECT_EQ(f.status, 3) << f.err;
    std::filesystem::remove(lam);
    std::filesystem::remove(temp_path("h.txt"));
}

TEST(cli, gen_lambda_is_byte_identical) {
    auto a = temp_path("g1.lmda"), b = temp_path("g2.lmda");
    auto ra = run({"gen-lambda", "--seed", "42", "--count", "1000", "--out", a.string()});
    auto rb = run({"gen-lambda", "--seed", "42", "--count", "1000", "--out", b.string()});
    ASSERT_EQ(ra.status, 0) << ra.err;
    ASSERT_EQ(rb.status, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(std::filesystem::file_size(a), 21u + 8000u);
    EXPECT_EQ(run({"gen-lambda", "--seed", "42", "--count", "0", "--out", a.string()}).status, 2);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST(cli, nogo_examples) {
    auto r = run({"nogo", "--L", "1,2,3", "--workers", "2"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_TRUE(j["verdicts_agree"].get<bool>());
    for (const auto& s : j["searches"]) {
        EXPECT_FALSE(s["found"].get<bool>());
        EXPECT_LE(s["max_chsh"].get<double>(), 2.0);
    }
    EXPECT_FALSE(j["lp"]["local"].get<bool>());

    auto v = Json::parse(run({"nogo", "--target", "vertex", "--vertex", "5", "--L", "1"}).out);
    EXPECT_TRUE(v["searches"][0]["found"].get<bool>());
    EXPECT_TRUE(v["lp"]["local"].get<bool>());

    auto w1 = run({"nogo", "--L", "3", "--workers", "1"});
    auto w3 = run({"nogo", "--L", "3", "--workers", "3"});
    EXPECT_EQ(w1.out, w3.out);
}

TEST(cli, flash_history_is_replayable) {
    auto h1 = temp_path("h1.txt"), h2 = temp_path("h2.txt");
    auto r1 = run({"flash", "--seed", "1", "--runs", "1000", "--out", h1.string()});
    ASSERT_EQ(r1.status, 0) << r1.err;
    auto r2 = run({"flash", "--seed", "1", "--runs", "1000", "--workers", "3", "--out", h2.string()});
    ASSERT_EQ(r2.status, 0) << r2.err;
    EXPECT_EQ(slurp(h1), slurp(h2));
    EXPECT_EQ(slurp(h1).rfind("run,time,particle,site\n", 0), 0u);

    auto j = Json::parse(r1.out);
    EXPECT_LE(j["ordering_invariance"]["max_diff"].get<double>(), 1e-12);
    EXPECT_TRUE(j["ordering_invariance"]["pass"].get<bool>());
    EXPECT_GT(j["realization_divergence"]["fraction"].get<double>(), 0.0);

    auto r3 = run({"flash", "--seed", "1", "--runs", "1000", "--out", h1.string()});
    EXPECT_EQ(r3.out, r1.out);
    std::filesystem::remove(h1);
    std::filesystem::remove(h2);
}

TEST(cli, flash_parameter_errors) {
    auto h = temp_path("bad.txt");
    EXPECT_EQ(run({"flash", "--seed", "1", "--rate", "0", "--out", h.string()}).status, 2);
    EXPECT_EQ(run({"flash", "--seed", "1", "--duration", "-1", "--out", h.string()}).status, 2);
    EXPECT_EQ(run({"flash", "--seed", "1", "--sigma", "0", "--out", h.string()}).status, 2);
    EXPECT_EQ(run({"flash", "--seed", "1"}).status, 2);
    std::filesystem::remove(h);
}

TEST(cli, chsh_report_file_matches_stdout) {
    auto p = temp_path("chsh.json");
    auto r = run({"chsh", "--state", "singlet", "--angles", "0/90/45/135"});
    ASSERT_EQ(run({"chsh", "--state", "singlet", "--angles", "0/90/45/135", "--out", p.string()}).status, 0);
    EXPECT_EQ(slurp(p), r.out);
    std::filesystem::remove(p);
}
