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

#include <map>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "snnmap/error.hpp"
#include "snnmap/io.hpp"
#include "snnmap/partition.hpp"

namespace snnmap {
namespace {

const std::string kFixtures = SNNMAP_FIXTURES;

SnnGraph reference_network()
{
    return parse_snn(read_text_file(kFixtures + "/reference.snn.json"));
}

// N1..N3 | N4, N5, N7 | N6, N8
Partition reference_grouping()
{
    return Partition{{0, 0, 0, 1, 1, 2, 1, 2}, 3};
}

void expect_valid(const SnnGraph &g, const Partition &p, const CrossbarLimits &lim)
{
    EXPECT_EQ(partition_violation(g, p, lim), "");
    EXPECT_TRUE(oracle::fits_crossbar(g, p.assignment, p.cluster_count, lim));
    for (auto c : p.assignment)
        EXPECT_LT(c, p.cluster_count);
}

TEST(InitPartition, EverythingFitsOneCluster)
{
    const auto g = testing::random_snn(4, 0, 2, 3);
    const CrossbarLimits lim{4, true};
    const auto p = init_partition(g, lim, 11);
    EXPECT_EQ(p.cluster_count, 1u);
    expect_valid(g, p, lim);
}

TEST(InitPartition, SizeBoundSplits)
{
    SnnGraph g;
    for (int i = 0; i < 8; ++i)
        g.add_neuron("n" + std::to_string(i));
    const CrossbarLimits lim{4, true};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto p = init_partition(g, lim, seed);
        EXPECT_EQ(p.cluster_count, 2u);
        for (auto s : p.cluster_sizes())
            EXPECT_LE(s, 4u);
        expect_valid(g, p, lim);
    }
}

TEST(InitPartition, OversizedFanInIsInfeasible)
{
    SnnGraph g;
    g.add_neuron("t");
    for (int i = 0; i < 5; ++i) {
        g.add_input("i" + std::to_string(i), 1);
        g.add_synapse("i" + std::to_string(i), "t", 1, 1);
    }
    EXPECT_THROW(init_partition(g, {4, true}, 1), InfeasibleError);
    EXPECT_NO_THROW(init_partition(g, {4, false}, 1));
    EXPECT_THROW(init_partition(g, {0, true}, 1), ConfigError);
}

TEST(InitPartition, RepairsFanInOnRandomGraphs)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto g = testing::random_snn(20, 4, 4, seed);
        const CrossbarLimits lim{5, true};
        expect_valid(g, init_partition(g, lim, seed), lim);
    }
}

TEST(CommunicationCost, Basics)
{
    const auto g = reference_network();
    EXPECT_EQ(communication_cost(g, Partition{std::vector<std::size_t>(8, 0), 1}), 0.0);

    SnnGraph two;
    two.add_neuron("a");
    two.add_neuron("b");
    two.add_synapse("a", "b", 1, 7);
    EXPECT_EQ(communication_cost(two, Partition{{0, 1}, 2}), 7.0);
}

TEST(CommunicationCost, ReferenceGroupingCutEdges)
{
    // Cut synapses: N1->N4 (3), N3->N5 (6), N3->N6 (6), N7->N8 (5).
    EXPECT_EQ(communication_cost(reference_network(), reference_grouping()), 20.0);
}

TEST(KlRefine, BarbellSwapRemovesCut)
{
    SnnGraph g;
    for (const char *id : {"a", "b", "c", "d"})
        g.add_neuron(id);
    g.add_synapse("a", "b", 1, 5);
    g.add_synapse("c", "d", 1, 4);
    const CrossbarLimits lim{2, true};
    const Partition start{{0, 1, 0, 1}, 2};
    EXPECT_EQ(communication_cost(g, start), 9.0);
    KlTrace trace;
    const auto out = kl_refine(g, start, lim, 0.0, &trace);
    EXPECT_EQ(communication_cost(g, out), 0.0);
    EXPECT_EQ(trace.initial_cost, 9.0);
    EXPECT_EQ(trace.final_cost, 0.0);
    ASSERT_FALSE(trace.accepted_costs.empty());
}

TEST(KlRefine, ExhaustiveOptimumIsFixedPoint)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = testing::random_snn(6, 2, 3, seed);
        const CrossbarLimits lim{3, true};
        // Enumerate every assignment of 6 neurons to 2 clusters.
        std::vector<std::size_t> best;
        double best_cost = INFINITY;
        for (unsigned mask = 0; mask < 64; ++mask) {
            std::vector<std::size_t> a(6);
            for (int i = 0; i < 6; ++i)
                a[i] = (mask >> i) & 1U;
            if (!oracle::fits_crossbar(g, a, 2, lim))
                continue;
            const double c = oracle::cut_cost(g, a);
            if (c < best_cost) {
                best_cost = c;
                best = a;
            }
        }
        if (best.empty())
            continue;
        const Partition opt{best, 2};
        const auto out = kl_refine(g, opt, lim);
        EXPECT_EQ(out, opt) << "seed " << seed;
    }
}

TEST(KlRefine, RandomGraphsNeverGetWorse)
{
    const auto g = testing::random_snn(10, 3, 3, 99);
    const CrossbarLimits lim{5, true};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto init = init_partition(g, lim, seed);
        KlTrace trace;
        const auto out = kl_refine(g, init, lim, 0.0, &trace);
        EXPECT_EQ(trace.initial_cost, communication_cost(g, init));
        EXPECT_LE(communication_cost(g, out), trace.initial_cost);
        EXPECT_EQ(trace.final_cost, communication_cost(g, out));
        expect_valid(g, out, lim);
    }
}

TEST(KlRefine, AcceptedSwapsDescendStrictly)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = testing::random_snn(18, 4, 4, seed);
        const CrossbarLimits lim{6, true};
        KlTrace trace;
        const auto out = kl_refine(g, init_partition(g, lim, seed), lim, 0.0, &trace);
        double prev = trace.initial_cost;
        for (double c : trace.accepted_costs) {
            EXPECT_LT(c, prev);
            prev = c;
        }
        for (double d : trace.sweep_improvements)
            EXPECT_GE(d, 0.0);
        expect_valid(g, out, lim);
    }
}

TEST(KlRefine, SmallGraphsEndAtSwapLocalOptimum)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto g = testing::random_snn(3 + seed % 6, 2, 3, seed);
        const CrossbarLimits lim{3, seed % 2 == 0};
        const auto out = kl_refine(g, init_partition(g, lim, seed), lim);
        EXPECT_TRUE(oracle::is_swap_local_optimum(g, out, lim)) << "seed " << seed;
    }
}

TEST(KlRefine, LargeDeltaStopsAfterOneSweep)
{
    const auto g = testing::random_snn(24, 4, 4, 5);
    const CrossbarLimits lim{6, true};
    KlTrace trace;
    kl_refine(g, init_partition(g, lim, 5), lim, 1e9, &trace);
    EXPECT_LE(trace.sweep_improvements.size(), 1u);
}

TEST(KlRefine, RejectsInvalidStart)
{
    const auto g = reference_network();
    EXPECT_THROW(kl_refine(g, Partition{std::vector<std::size_t>(8, 0), 1}, {3, true}), ValidationError);
}

TEST(ClusteredGraph, SingleCluster)
{
    const auto g = reference_network();
    const auto cg = build_clustered_graph(g, Partition{std::vector<std::size_t>(8, 0), 1});
    EXPECT_EQ(cg.clusters.size(), 1u);
    EXPECT_TRUE(cg.edges.empty());
}

TEST(ClusteredGraph, ReferenceGrouping)
{
    const auto g = reference_network();
    const auto cg = build_clustered_graph(g, reference_grouping());
    ASSERT_EQ(cg.clusters.size(), 3u);
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> edges;
    for (const auto &e : cg.edges)
        edges[{e.src, e.dst}] = e.tokens;
    const std::map<std::pair<std::size_t, std::size_t>, std::int64_t> expect{
        {{0, 1}, 9}, {{0, 2}, 6}, {{1, 2}, 5}};
    EXPECT_EQ(edges, expect);
    EXPECT_EQ(cg.clusters[0].fan_in, 3u); // A, B and N2 feeding N3
    EXPECT_DOUBLE_EQ(cg.total_spikes(), g.total_spikes());
}

TEST(ClusteredGraph, EdgesMatchCutEnumeration)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto g = testing::random_snn(15, 3, 4, seed);
        const CrossbarLimits lim{4, false};
        const auto p = init_partition(g, lim, seed);
        const auto cg = build_clustered_graph(g, p);

        std::set<std::size_t> used(p.assignment.begin(), p.assignment.end());
        EXPECT_EQ(cg.clusters.size(), used.size());
        std::vector<int> seen(g.neuron_count(), 0);
        for (const auto &c : cg.clusters)
            for (auto n : c.neurons)
                ++seen[n];
        for (int s : seen)
            EXPECT_EQ(s, 1);

        // Brute-force per-pair sum, keyed by the clustered node of neuron 'n'.
        std::vector<std::size_t> node_of(g.neuron_count());
        for (std::size_t c = 0; c < cg.clusters.size(); ++c)
            for (auto n : cg.clusters[c].neurons)
                node_of[n] = c;
        std::map<std::pair<std::size_t, std::size_t>, double> cut;
        for (const auto &s : g.synapses())
            if (!s.src.is_input() && node_of[s.src.index] != node_of[s.dst])
                cut[{node_of[s.src.index], node_of[s.dst]}] += s.spikes_per_frame;
        std::map<std::pair<std::size_t, std::size_t>, double> got;
        for (const auto &e : cg.edges)
            got[{e.src, e.dst}] = e.spikes;
        EXPECT_EQ(got, cut);
        EXPECT_NEAR(cg.total_spikes(), g.total_spikes(), 1e-9);
    }
}

TEST(ClusteredGraph, DropsEmptyClusters)
{
    const auto g = reference_network();
    const auto cg = build_clustered_graph(g, Partition{{0, 0, 0, 2, 2, 2, 2, 2}, 4});
    EXPECT_EQ(cg.clusters.size(), 2u);
}

TEST(IteratePartitions, RoundCountAndDeterminism)
{
    const auto g = testing::random_snn(40, 6, 5, 17);
    const CrossbarLimits lim{8, true};
    EXPECT_EQ(iterate_partitions(g, lim, 1, 0.0, 3).size(), 1u);
    const auto a = iterate_partitions(g, lim, 5, 0.0, 3);
    const auto b = iterate_partitions(g, lim, 5, 0.0, 3, 4);
    ASSERT_EQ(a.size(), 5u);
    for (std::size_t r = 0; r < 5; ++r) {
        EXPECT_EQ(a[r].partition, b[r].partition);
        EXPECT_EQ(a[r].seed, b[r].seed);
        EXPECT_EQ(a[r].trace.accepted_costs, b[r].trace.accepted_costs);
    }
    EXPECT_THROW(iterate_partitions(g, lim, 0, 0.0, 3), ConfigError);
}

TEST(IteratePartitions, RoundsExploreDifferentCuts)
{
    const auto g = testing::random_snn(120, 16, 6, 4);
    const auto rounds = iterate_partitions(g, {16, true}, 10, 0.0, 1);
    ASSERT_EQ(rounds.size(), 10u);
    std::set<double> costs;
    for (const auto &r : rounds)
        costs.insert(r.trace.final_cost);
    EXPECT_GE(costs.size(), 2u);
}

TEST(IteratePartitions, PropagatesInfeasibility)
{
    SnnGraph g;
    g.add_neuron("t");
    for (int i = 0; i < 3; ++i) {
        g.add_input("i" + std::to_string(i), 1);
        g.add_synapse("i" + std::to_string(i), "t", 1, 1);
    }
    EXPECT_THROW(iterate_partitions(g, {2, true}, 2, 0.0, 1), InfeasibleError);
}

} // namespace
} // namespace snnmap
