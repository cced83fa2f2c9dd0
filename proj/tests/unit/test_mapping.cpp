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

#include <algorithm>
#include <map>

#include "generators.hpp"
#include "snnmap/error.hpp"
#include "snnmap/execution.hpp"
#include "snnmap/io.hpp"
#include "snnmap/mapping.hpp"
#include "snnmap/partition.hpp"

namespace snnmap {
namespace {

const std::string kFixtures = SNNMAP_FIXTURES;

HardwareGraph uniform_cores(int count, Time latency = 1, int dim = 16)
{
    HardwareGraph hw;
    for (int k = 0; k < count; ++k)
        hw.add_core({.id = "t" + std::to_string(k), .crossbar_dim = dim});
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
            if (a != b)
                hw.add_link("t" + std::to_string(a), "t" + std::to_string(b), latency);
    return hw;
}

Sdfg independent_actors(int count)
{
    Sdfg g;
    for (int a = 0; a < count; ++a) {
        g.add_actor("a" + std::to_string(a), 1);
        g.add_channel(static_cast<ActorId>(a), 1, static_cast<ActorId>(a), 1, 1);
    }
    return g;
}

Sdfg pipeline(int count)
{
    Sdfg g;
    for (int a = 0; a < count; ++a)
        g.add_actor("p" + std::to_string(a), 1);
    for (int a = 0; a + 1 < count; ++a)
        g.add_channel(static_cast<ActorId>(a), 1, static_cast<ActorId>(a + 1), 1, 0, 2);
    g.add_channel(static_cast<ActorId>(count - 1), 1, 0, 1, 2, 2);
    for (int a = 0; a < count; ++a)
        g.add_channel(static_cast<ActorId>(a), 1, static_cast<ActorId>(a), 1, 1);
    return g;
}

MappingProblem reference_problem()
{
    const auto snn = parse_snn(read_text_file(kFixtures + "/reference.snn.json"));
    const auto cg = build_clustered_graph(snn, Partition{{0, 0, 0, 1, 1, 2, 1, 2}, 3});
    MappingProblem p;
    p.sdfg = lift_to_sdfg(cg, {.buffer_frames = 2});
    p.hardware = uniform_cores(2);
    p.footprint = cluster_footprints(cg);
    return p;
}

// Each core repeats its residents a whole number of iterations per cycle.
void expect_schedule_matches_repetitions(const Sdfg &g, const MappingMatrix &m, const StaticOrderSchedule &s)
{
    const auto q = repetition_vector(g).counts;
    for (std::size_t core = 0; core < s.cores.size(); ++core) {
        std::map<ActorId, std::int64_t> seen;
        for (auto a : s.cores[core].cycle) {
            EXPECT_EQ(m.core_of[a], core);
            ++seen[a];
        }
        std::int64_t k = 0;
        for (ActorId a = 0; a < g.actor_count(); ++a) {
            if (m.core_of[a] != core)
                continue;
            ASSERT_GT(seen[a], 0) << "actor " << a << " missing from core " << core;
            ASSERT_EQ(seen[a] % q[a], 0);
            if (k == 0)
                k = seen[a] / q[a];
            EXPECT_EQ(seen[a], k * q[a]) << "actor " << a;
        }
    }
}

TEST(Decode, SingleClusterSingleCore)
{
    MappingProblem p;
    p.sdfg = independent_actors(1);
    p.hardware = uniform_cores(1);
    for (double v : {0.0, 0.4, 1.0})
        EXPECT_EQ(decode_position(p, std::vector<double>{v}).core_of, std::vector<std::size_t>{0});
}

TEST(Decode, ArgmaxPicksCore)
{
    MappingProblem p;
    p.sdfg = independent_actors(1);
    p.hardware = uniform_cores(2);
    EXPECT_EQ(decode_position(p, std::vector<double>{0.2, 0.9}).core_of, std::vector<std::size_t>{1});
    EXPECT_EQ(decode_position(p, std::vector<double>{0.5, 0.5}).core_of, std::vector<std::size_t>{0});
    EXPECT_THROW(decode_position(p, std::vector<double>{0.5}), ValidationError);
}

TEST(Decode, SkipsCoresWhoseCrossbarIsTooSmall)
{
    MappingProblem p;
    p.sdfg = independent_actors(1);
    p.hardware.add_core({.id = "small", .crossbar_dim = 2});
    p.hardware.add_core({.id = "big", .crossbar_dim = 8});
    p.footprint = {{5, 3}};
    EXPECT_EQ(decode_position(p, std::vector<double>{0.9, 0.1}).core_of, std::vector<std::size_t>{1});
    p.footprint = {{9, 3}};
    EXPECT_THROW(decode_position(p, std::vector<double>{0.9, 0.1}), InfeasibleError);
}

TEST(Decode, RepairSatisfiesConnectionCaps)
{
    Rng rng(5);
    int feasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
        MappingProblem p;
        p.sdfg = pipeline(5);
        for (int k = 0; k < 3; ++k)
            p.hardware.add_core({.id = "t" + std::to_string(k), .crossbar_dim = 4, .in_connections = 1,
                                 .out_connections = 1});
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (a != b)
                    p.hardware.add_link("t" + std::to_string(a), "t" + std::to_string(b), 1);
        std::vector<double> theta(15);
        for (auto &x : theta)
            x = uniform_unit(rng);
        try {
            const auto m = decode_position(p, theta);
            EXPECT_EQ(mapping_violation(p, m), "");
            EXPECT_EQ(m.core_of.size(), 5u);
            ++feasible;
        } catch (const InfeasibleError &) {
        }
    }
    EXPECT_GT(feasible, 100);
}

TEST(Violation, ReportsEachLimit)
{
    MappingProblem p;
    p.sdfg = pipeline(2);
    p.hardware.add_core({.id = "a", .crossbar_dim = 4, .out_bandwidth = 0});
    p.hardware.add_core({.id = "b", .crossbar_dim = 4, .in_connections = 0});
    p.hardware.add_link("a", "b", 1);
    p.hardware.add_link("b", "a", 1);
    EXPECT_EQ(mapping_violation(p, {{0, 0}}), "");
    EXPECT_EQ(mapping_violation(p, {{1, 1}}), "");
    EXPECT_NE(mapping_violation(p, {{0, 1}}).find("outgoing tokens"), std::string::npos);
    p.hardware = {};
    p.hardware.add_core({.id = "a", .crossbar_dim = 4});
    p.hardware.add_core({.id = "b", .crossbar_dim = 4, .in_connections = 0});
    p.hardware.add_link("a", "b", 1);
    p.hardware.add_link("b", "a", 1);
    EXPECT_NE(mapping_violation(p, {{1, 0}}).find("incoming connections"), std::string::npos);
    EXPECT_EQ(mapping_fitness(p, {{1, 0}}), 0.0);
    EXPECT_THROW(build_schedules(p, {{1, 0}}), InfeasibleError);
    EXPECT_THROW(mapping_violation(p, {{0, 5}}), ValidationError);
}

TEST(Violation, UnroutablePairHasZeroFitness)
{
    MappingProblem p;
    p.sdfg = pipeline(2);
    p.hardware.add_core({.id = "a", .crossbar_dim = 4});
    p.hardware.add_core({.id = "b", .crossbar_dim = 4});
    p.hardware.add_link("a", "b", 1);
    EXPECT_NE(mapping_violation(p, {{0, 1}}).find("no route"), std::string::npos);
    EXPECT_EQ(mapping_fitness(p, {{0, 1}}), 0.0);
    EXPECT_GT(mapping_fitness(p, {{0, 0}}), 0.0);
}

TEST(Swarm, ZeroAccelerationDriftsAtConstantVelocity)
{
    SwarmConfig cfg;
    cfg.particles = 4;
    cfg.phi1 = cfg.phi2 = 0;
    cfg.v_max = 0.05;
    auto flat = [](const std::vector<std::vector<double>> &x) { return std::vector<double>(x.size(), 1.0); };
    auto s = init_swarm(6, cfg, flat);
    const auto before = s.particles;
    pso_step(s, cfg, flat);
    for (std::size_t i = 0; i < before.size(); ++i)
        for (std::size_t d = 0; d < 6; ++d) {
            EXPECT_EQ(s.particles[i].velocity[d], before[i].velocity[d]);
            EXPECT_DOUBLE_EQ(s.particles[i].position[d],
                             std::clamp(before[i].position[d] + before[i].velocity[d], 0.0, 1.0));
        }
}

TEST(Swarm, ParticleAtGlobalBestWithoutVelocityStaysPut)
{
    SwarmConfig cfg;
    cfg.particles = 1;
    auto flat = [](const std::vector<std::vector<double>> &x) { return std::vector<double>(x.size(), 0.5); };
    auto s = init_swarm(4, cfg, flat);
    std::fill(s.particles[0].velocity.begin(), s.particles[0].velocity.end(), 0.0);
    const auto pos = s.particles[0].position;
    pso_step(s, cfg, flat);
    EXPECT_EQ(s.particles[0].position, pos);
}

TEST(Swarm, UpdateFollowsRule)
{
    SwarmConfig cfg;
    cfg.particles = 3;
    cfg.v_max = 10; // keep the clamp out of the way
    // Fitness favours small first coordinates.
    auto f = [](const std::vector<std::vector<double>> &x) {
        std::vector<double> out;
        for (const auto &p : x)
            out.push_back(1.0 - p[0]);
        return out;
    };
    auto s = init_swarm(2, cfg, f);
    const auto before = s;
    pso_step(s, cfg, f);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t d = 0; d < 2; ++d) {
            const auto &p = before.particles[i];
            const double v = p.velocity[d] + cfg.phi1 * (p.best_position[d] - p.position[d]) +
                             cfg.phi2 * (before.best_position[d] - p.position[d]);
            EXPECT_DOUBLE_EQ(s.particles[i].velocity[d], v);
            EXPECT_DOUBLE_EQ(s.particles[i].position[d], std::clamp(p.position[d] + v, 0.0, 1.0));
        }
}

TEST(Swarm, ConfigValidation)
{
    SwarmConfig cfg;
    cfg.particles = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.iterations = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.phi1 = -1;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.v_max = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Search, GlobalBestIsMonotone)
{
    MappingProblem p;
    p.sdfg = pipeline(4);
    p.hardware = uniform_cores(2);
    SwarmConfig cfg;
    cfg.particles = 10;
    cfg.iterations = 20;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        const auto sol = search_mapping(p, cfg);
        ASSERT_EQ(sol.best_history.size(), cfg.iterations + 1);
        for (std::size_t i = 1; i < sol.best_history.size(); ++i)
            EXPECT_GE(sol.best_history[i], sol.best_history[i - 1]);
        EXPECT_DOUBLE_EQ(sol.result.throughput, sol.best_history.back());
    }
}

TEST(Search, SymmetricPairSplitsAcrossCores)
{
    MappingProblem p;
    p.sdfg = independent_actors(2);
    p.hardware = uniform_cores(2);
    const auto sol = search_mapping(p, {});
    EXPECT_NE(sol.mapping.core_of[0], sol.mapping.core_of[1]);
    EXPECT_DOUBLE_EQ(sol.result.throughput, mapping_fitness(p, {{0, 1}}));
    EXPECT_DOUBLE_EQ(mapping_fitness(p, {{0, 1}}), mapping_fitness(p, {{1, 0}}));
}

TEST(Search, MoreCoresNeverHurtAPipeline)
{
    MappingProblem one, three;
    one.sdfg = three.sdfg = pipeline(3);
    one.hardware = uniform_cores(1);
    three.hardware = uniform_cores(3);
    EXPECT_GE(search_mapping(three, {}).result.throughput, search_mapping(one, {}).result.throughput);
}

TEST(Search, NeverExceedsExhaustiveOptimum)
{
    const auto p = testing::six_by_three();
    const double best = testing::exhaustive_best_fitness(p);
    ASSERT_GT(best, 0);
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SwarmConfig cfg;
        cfg.seed = seed;
        const auto sol = search_mapping(p, cfg);
        EXPECT_LE(sol.best_history.back(), best);
        hits += sol.best_history.back() == best;
    }
    EXPECT_GE(hits, 8);
}

TEST(Search, DeterministicAcrossJobCounts)
{
    const auto p = testing::six_by_three();
    SwarmConfig cfg;
    cfg.seed = 9;
    const auto a = search_mapping(p, cfg, 1), b = search_mapping(p, cfg, 4);
    EXPECT_EQ(a.mapping, b.mapping);
    EXPECT_EQ(a.schedules, b.schedules);
    EXPECT_EQ(a.best_history, b.best_history);
}

TEST(Search, IncumbentIsNeverLost)
{
    const auto p = testing::six_by_three();
    const MappingMatrix inc{{0, 1, 0, 1, 0, 1}};
    SwarmConfig cfg;
    cfg.particles = 2;
    cfg.iterations = 1;
    const auto sol = search_mapping(p, cfg, 1, &inc);
    EXPECT_GE(sol.result.throughput, mapping_fitness(p, inc));
}

TEST(Schedules, SingleClusterRepeats)
{
    MappingProblem p;
    p.sdfg = independent_actors(1);
    p.hardware = uniform_cores(1);
    const auto run = build_schedules(p, {{0}});
    EXPECT_EQ(run.schedules.cores[0].cycle, std::vector<ActorId>{0});
    EXPECT_DOUBLE_EQ(run.result.period, 2.0); // exec 1 with slowdown 2
}

TEST(Schedules, IndependentClustersAlternate)
{
    MappingProblem p;
    p.sdfg = independent_actors(2);
    p.hardware = uniform_cores(1);
    const auto run = build_schedules(p, {{0, 0}});
    EXPECT_EQ(run.schedules.cores[0].cycle, (std::vector<ActorId>{0, 1}));
    EXPECT_DOUBLE_EQ(run.result.period, 4.0);
}

TEST(Schedules, ReferenceClustersOnTwoCores)
{
    const auto p = reference_problem();
    const MappingMatrix m{{0, 1, 1}};
    const auto run = build_schedules(p, m);
    expect_schedule_matches_repetitions(p.sdfg, m, run.schedules);
    EXPECT_DOUBLE_EQ(evaluate_static_order(p, m, run.schedules).throughput, run.result.throughput);
}

TEST(Schedules, StaticOrderNeverBeatsUnboundSelfTimed)
{
    const auto p = testing::six_by_three();
    MappingMatrix m{std::vector<std::size_t>(6, 0)};
    for (int trial = 0; trial < 60; ++trial) {
        for (std::size_t a = 0; a < 6; ++a)
            m.core_of[a] = (static_cast<std::size_t>(trial) * (a + 1) + a / 2) % 3;
        const auto run = build_schedules(p, m);
        expect_schedule_matches_repetitions(p.sdfg, m, run.schedules);
        auto free = mapped_execution(p, m);
        free.actor_core.clear();
        free.core_count = 0;
        EXPECT_LE(run.result.throughput, self_timed_throughput(p.sdfg, free).throughput + 1e-12);
    }
}

TEST(Schedules, DeadlockUnderMappingIsReported)
{
    MappingProblem p;
    Sdfg g;
    g.add_actor("a", 1);
    g.add_actor("b", 1);
    g.add_channel(0, 1, 1, 1, 0, 1);
    g.add_channel(1, 1, 0, 1, 0, 1);
    p.sdfg = g;
    p.hardware = uniform_cores(2);
    EXPECT_THROW(build_schedules(p, {{0, 1}}), DeadlockError);
    EXPECT_EQ(mapping_fitness(p, {{0, 1}}), 0.0);
}

} // namespace
} // namespace snnmap
