// Copyright 2026 The snnmap Authors
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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "commands.hpp"
#include "oracles.hpp"
#include "snnmap/io.hpp"

namespace snnmap {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

const std::string kFixtures = SNNMAP_FIXTURES;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "snnmap");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name)
{
    const auto dir = fs::temp_directory_path() / ("snnmap_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string fx(const std::string &name) { return kFixtures + "/" + name; }

TEST(Cli, StatsOnFixture)
{
    const auto r = run({"stats", fx("reference.snn.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    const auto expect = oracle::graph_stats(parse_snn(read_text_file(fx("reference.snn.json"))));
    EXPECT_EQ(j["neurons"], 8);
    EXPECT_EQ(j["inputs"], 5);
    EXPECT_EQ(j["synapses"], 14);
    EXPECT_EQ(j["max_in_degree"], expect.max_in_degree);
    EXPECT_EQ(j["max_out_degree"], expect.max_out_degree);
    EXPECT_DOUBLE_EQ(j["avg_in_degree"].get<double>(), expect.avg_in_degree);
    EXPECT_EQ(j["diameter"], expect.diameter);
}

TEST(Cli, StatsOnEmptyGraph)
{
    const auto r = run({"stats", fx("empty.snn.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["neurons"], 0);
    EXPECT_EQ(j["diameter"], 0);
    EXPECT_EQ(j["avg_out_degree"], 0.0);
}

TEST(Cli, InputErrorsExitTwo)
{
    EXPECT_EQ(run({"stats", fx("missing.snn.json")}).code, 2);
    EXPECT_EQ(run({"stats", fx("bad_ref.snn.json")}).code, 2);
    EXPECT_EQ(run({"stats", fx("quad.hardware.json")}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"partition", "--snn", fx("reference.snn.json"), "--rates-present", "--eta", "0", "-o",
                   scratch("eta0").string()})
                  .code,
              2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, PartitionIsDeterministicAndDescends)
{
    std::string first;
    for (int pass = 0; pass < 2; ++pass) {
        const auto dir = scratch("partition" + std::to_string(pass));
        const auto r = run({"partition", "--snn", fx("reference.snn.json"), "--rates-present", "-M", "3", "--eta", "2",
                            "--seed", "5", "-j", pass == 0 ? "1" : "3", "-o", dir.string()});
        ASSERT_EQ(r.code, 0) << r.err;
        const auto csv = read_text_file(dir / "partition_costs.csv");
        if (pass == 0)
            first = csv;
        else
            EXPECT_EQ(csv, first);
        const auto log = Json::parse(read_text_file(dir / "partition_log.json"));
        ASSERT_EQ(log.size(), 2u);
        for (const auto &round : log) {
            double cost = round["initial_cost"];
            for (const auto &gain : round["sweep_improvements"]) {
                EXPECT_GE(gain.get<double>(), 0.0);
                cost -= gain.get<double>();
            }
            EXPECT_NEAR(cost, round["final_cost"].get<double>(), 1e-9);
            EXPECT_LE(round["final_cost"].get<double>(), round["initial_cost"].get<double>());
            EXPECT_TRUE(fs::exists(dir / round["file"].get<std::string>()));
        }
    }
}

TEST(Cli, PartitionInfeasibleExitsOne)
{
    const auto r = run({"partition", "--snn", fx("reference.snn.json"), "--rates-present", "-M", "1", "-o",
                        scratch("infeasible").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, AnalyzeReportsThroughputAndFailures)
{
    const auto dir = scratch("analyze");
    Sdfg g;
    g.add_actor("fast", 1);
    g.add_actor("slow", 4);
    g.add_channel(0, 1, 1, 1, 0, 1);
    g.add_channel(0, 1, 0, 1, 1);
    g.add_channel(1, 1, 1, 1, 1);
    write_text_file(dir / "ok.json", dump_sdfg(g));
    auto r = run({"analyze", (dir / "ok.json").string(), "--sweep"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_DOUBLE_EQ(j["period"].get<double>(), 5.0);
    EXPECT_DOUBLE_EQ(j["unbounded_throughput"].get<double>(), 0.25);

    Sdfg dl;
    dl.add_actor("a", 1);
    dl.add_actor("b", 1);
    dl.add_channel(0, 1, 1, 1);
    dl.add_channel(1, 1, 0, 1);
    write_text_file(dir / "dl.json", dump_sdfg(dl));
    r = run({"analyze", (dir / "dl.json").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(Json::parse(r.out)["deadlock_free"].get<bool>());

    Sdfg bad;
    bad.add_actor("a", 1);
    bad.add_actor("b", 1);
    bad.add_channel(0, 1, 1, 2);
    bad.add_channel(1, 1, 0, 2);
    write_text_file(dir / "bad.json", dump_sdfg(bad));
    r = run({"analyze", (dir / "bad.json").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(Json::parse(r.out)["consistent"].get<bool>());

    r = run({"analyze", (dir / "ok.json").string(), "--state-budget", "1"});
    EXPECT_EQ(r.code, 3);
}

TEST(Cli, MapClusteredGraph)
{
    const auto dir = scratch("map");
    ASSERT_EQ(run({"partition", "--snn", fx("reference.snn.json"), "--rates-present", "-M", "3", "-o", dir.string()}).code,
              0);
    const auto r = run({"map", "--clustered", (dir / "round0.clustered.json").string(), "--hardware",
                        fx("small.hardware.json"), "--particles", "6", "--iterations", "5", "-o", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_GT(j["throughput"].get<double>(), 0.0);
    const auto g = parse_sdfg(read_text_file(dir / "mapping.sdfg.json"));
    const auto hw = parse_hardware(read_text_file(fx("small.hardware.json")));
    const auto sol = parse_solution(read_text_file(dir / "mapping.solution.json"), g, hw);
    EXPECT_DOUBLE_EQ(sol.result.throughput, j["throughput"].get<double>());
    EXPECT_EQ(run({"map", "--hardware", fx("small.hardware.json"), "-o", dir.string()}).code, 2);
}

Result explore(const fs::path &dir, const std::string &jobs)
{
    return run({"explore", "-c", fx("explore.config.json"), "-j", jobs, "-o", dir.string()});
}

TEST(Cli, ExploreIsReproducible)
{
    const auto a = scratch("explore_a"), b = scratch("explore_b"), c = scratch("explore_c");
    ASSERT_EQ(explore(a, "1").code, 0);
    ASSERT_EQ(explore(b, "1").code, 0);
    ASSERT_EQ(explore(c, "4").code, 0);
    for (const char *file : {"front.csv", "series.csv", "rounds.csv"}) {
        const auto ref = read_text_file(a / file);
        EXPECT_EQ(read_text_file(b / file), ref) << file;
        EXPECT_EQ(read_text_file(c / file), ref) << file;
    }
    const auto front = parse_front_csv(read_text_file(a / "front.csv"));
    ASSERT_FALSE(front.empty());
    EXPECT_EQ(oracle::pareto_brute_force(front), front);
    const auto manifest = Json::parse(read_text_file(a / "manifest.json"));
    EXPECT_EQ(manifest["front"].size(), front.size());
    for (const auto &p : manifest["front"])
        EXPECT_TRUE(fs::exists(a / p["solution"].get<std::string>()));
}

TEST(Cli, ExploreBudgetExceededExitsThree)
{
    const auto r = run({"explore", "-c", fx("explore.config.json"), "--state-budget", "1", "-o",
                        scratch("explore_budget").string()});
    EXPECT_EQ(r.code, 3);
}

TEST(Cli, OutputDirectoryFromEnvironment)
{
    const auto dir = scratch("env");
    ASSERT_EQ(setenv(cli::kOutDirEnv, dir.c_str(), 1), 0);
    const auto r = run({"explore", "-c", fx("explore.config.json"), "-j", "1"});
    unsetenv(cli::kOutDirEnv);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "front.csv"));
    EXPECT_EQ(cli::resolve_output_dir("x"), fs::path("x"));
    EXPECT_EQ(cli::resolve_output_dir({}), fs::path("snnmap-out"));
}

TEST(Cli, BinaryExitCodes)
{
    const std::string bin = SNNMAP_CLI_BINARY;
    auto status = [&](const std::string &args) {
        const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("stats " + fx("reference.snn.json")), 0);
    EXPECT_EQ(status("stats " + fx("missing.snn.json")), 2);
    EXPECT_EQ(status("partition --snn " + fx("reference.snn.json") + " --rates-present -M 1 -o " +
                     scratch("bin").string()),
              1);
}

} // namespace
} // namespace snnmap
