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

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "snnmap/error.hpp"
#include "snnmap/execution.hpp"
#include "snnmap/sdfg.hpp"

namespace snnmap {
namespace {

double as_double(const oracle::Rational &r)
{
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Sdfg two_actor_cycle(Time ta, Time tb, std::int64_t tokens)
{
    Sdfg g;
    g.add_actor("a", ta);
    g.add_actor("b", tb);
    g.add_channel(0, 1, 1, 1);
    g.add_channel(1, 1, 0, 1, tokens);
    g.add_channel(0, 1, 0, 1, 1);
    g.add_channel(1, 1, 1, 1, 1);
    return g;
}

TEST(SelfTimed, SingleActorFiresEveryStep)
{
    Sdfg g;
    g.add_actor("a", 1);
    g.add_channel(0, 1, 0, 1, 1);
    const auto r = self_timed_throughput(g);
    EXPECT_DOUBLE_EQ(r.throughput, 1.0);
    EXPECT_DOUBLE_EQ(r.period, 1.0);
}

TEST(SelfTimed, TwoActorCycleMatchesCycleMean)
{
    const auto g = two_actor_cycle(2, 3, 1);
    const auto r = self_timed_throughput(g);
    EXPECT_DOUBLE_EQ(r.period, 5.0);
    EXPECT_DOUBLE_EQ(r.throughput, 0.2);
    EXPECT_EQ(*oracle::max_cycle_ratio(g), oracle::Rational(5));
    EXPECT_NEAR(r.throughput * r.period, 1.0, 1e-12);
}

TEST(SelfTimed, MultiRateChainMatchesReferenceSimulator)
{
    Sdfg g;
    g.add_actor("A", 1);
    g.add_actor("B", 1);
    g.add_channel(0, 2, 1, 3, 0, 12);
    g.add_channel(0, 1, 0, 1, 1);
    g.add_channel(1, 1, 1, 1, 1);
    const auto q = repetition_vector(g).counts;
    const auto des = oracle::brute_force_throughput(g, q);
    ASSERT_FALSE(des.deadlock);
    EXPECT_DOUBLE_EQ(self_timed_throughput(g).throughput, as_double(des.throughput));
}

TEST(SelfTimed, HomogeneousGraphsMatchMaxCycleRatio)
{
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 40 && seed < 400; ++seed) {
        const auto g = testing::random_hsdf(2 + seed % 5, seed, seed % 2 == 1);
        const auto mcr = oracle::max_cycle_ratio(g);
        if (!mcr)
            continue;
        ++checked;
        const auto r = self_timed_throughput(g);
        const double expect = 1.0 / as_double(*mcr);
        EXPECT_NEAR(r.throughput, expect, 1e-9 * expect) << "seed " << seed;
    }
    EXPECT_EQ(checked, 40);
}

TEST(SelfTimed, MultiRateGraphsMatchReferenceSimulator)
{
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 30 && seed < 300; ++seed) {
        const auto g = testing::random_multirate(2 + seed % 4, seed, true);
        const auto q = repetition_vector(g).counts;
        const auto des = oracle::brute_force_throughput(g, q);
        if (des.deadlock) {
            EXPECT_THROW(self_timed_throughput(g), DeadlockError) << "seed " << seed;
            continue;
        }
        ++checked;
        EXPECT_DOUBLE_EQ(self_timed_throughput(g).throughput, as_double(des.throughput)) << "seed " << seed;
    }
    EXPECT_EQ(checked, 30);
}

TEST(SelfTimed, DeadlockAgreesWithAbstractExecution)
{
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto g = seed % 2 ? testing::random_multirate(2 + seed % 4, seed, true)
                                : testing::random_hsdf(2 + seed % 4, seed, true);
        const bool dead = check_deadlock(g).deadlocked;
        bool timed_dead = false;
        try {
            self_timed_throughput(g);
        } catch (const DeadlockError &) {
            timed_dead = true;
        }
        EXPECT_EQ(dead, timed_dead) << "seed " << seed;
    }
}

TEST(SelfTimed, ZeroTokenCycleDeadlocks)
{
    EXPECT_THROW(self_timed_throughput(two_actor_cycle(1, 1, 0)), DeadlockError);
}

TEST(SelfTimed, LargerBuffersNeverHurt)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto g = testing::random_multirate(2 + seed % 4, seed, true);
        if (check_deadlock(g).deadlocked)
            continue;
        const double base = self_timed_throughput(g).throughput;
        auto alloc = buffer_allocation(g);
        for (std::size_t c = 0; c < alloc.size(); ++c)
            if (alloc[c])
                *alloc[c] += static_cast<std::int64_t>(1 + c % 3) * capacity_quantum(g.channels()[c]);
        const double more = self_timed_throughput(set_buffer_allocation(g, alloc)).throughput;
        EXPECT_GE(more + 1e-12, base) << "seed " << seed;
        std::fill(alloc.begin(), alloc.end(), std::nullopt);
        const double unbounded = self_timed_throughput(set_buffer_allocation(g, alloc)).throughput;
        EXPECT_GE(unbounded + 1e-12, more) << "seed " << seed;
    }
}

TEST(SelfTimed, Deterministic)
{
    const auto g = testing::random_multirate(5, 77, true);
    const auto a = self_timed_throughput(g), b = self_timed_throughput(g);
    EXPECT_EQ(a.throughput, b.throughput);
    EXPECT_EQ(a.steady_state_hash, b.steady_state_hash);
    EXPECT_EQ(a.transient_length, b.transient_length);
    EXPECT_EQ(a.cycle_firings, b.cycle_firings);
}

TEST(SelfTimed, BudgetGuard)
{
    const auto g = testing::random_multirate(5, 3, true);
    ExecutionOptions opts;
    opts.state_budget = 1;
    EXPECT_THROW(self_timed_throughput(g, opts), BudgetExceededError);
}

TEST(SelfTimed, UnconstrainedSourceDoesNotLimitThroughput)
{
    // The source has no input and no bounded output; the sink's self-loop
    // sets the rate.
    Sdfg g;
    g.add_actor("src", 1);
    g.add_actor("dst", 3);
    g.add_channel(0, 1, 1, 1);
    g.add_channel(1, 1, 1, 1, 1);
    EXPECT_DOUBLE_EQ(self_timed_throughput(g).period, 3.0);

    Sdfg lone;
    lone.add_actor("a", 1);
    EXPECT_THROW(self_timed_throughput(lone), Error);
}

TEST(SelfTimed, LatencyDelaysTokens)
{
    auto g = two_actor_cycle(1, 1, 1);
    ExecutionOptions opts;
    opts.channel_latency = {3, 0, 0, 0};
    EXPECT_DOUBLE_EQ(self_timed_throughput(g, opts).period, 5.0);
    opts.channel_latency = {-1, 0, 0, 0};
    EXPECT_THROW(self_timed_throughput(g, opts), ValidationError);
}

TEST(SelfTimed, BlockingIsChargedToTheFullChannel)
{
    // Fast producer, slow consumer, one-slot buffer: the slot is released
    // only when the consumer finishes, so the two firings serialize and the
    // producer waits on the channel between them.
    Sdfg g;
    g.add_actor("fast", 1);
    g.add_actor("slow", 4);
    g.add_channel(0, 1, 1, 1, 0, 1);
    g.add_channel(0, 1, 0, 1, 1);
    g.add_channel(1, 1, 1, 1, 1);
    const auto r = self_timed_throughput(g);
    EXPECT_DOUBLE_EQ(r.period, 5.0);
    EXPECT_GT(r.space_blocked[0], 0);
    EXPECT_EQ(r.space_blocked[1], 0);
}

TEST(SelfTimed, CycleFiringsAreWholeIterations)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = testing::random_multirate(2 + seed % 4, seed, false);
        const auto q = repetition_vector(g).counts;
        const auto r = self_timed_throughput(g);
        ASSERT_GT(r.cycle_firings[0], 0);
        const auto k = r.cycle_firings[0] / q[0];
        for (std::size_t a = 0; a < q.size(); ++a)
            EXPECT_EQ(r.cycle_firings[a], k * q[a]) << "seed " << seed;
        EXPECT_NEAR(r.period, static_cast<double>(r.cycle_time) / static_cast<double>(k), 1e-12);
    }
}

TEST(StaticOrder, SingleCoreSerializesActors)
{
    auto g = two_actor_cycle(2, 3, 2);
    ExecutionOptions opts;
    opts.actor_core = {0, 0};
    opts.core_count = 1;
    const auto run = execute(g, opts);
    EXPECT_DOUBLE_EQ(run.result.period, 5.0);
    ASSERT_EQ(run.schedules.cores.size(), 1u);
    EXPECT_EQ(run.schedules.cores[0].cycle.size(), 2u);

    // Replaying the recorded order reproduces the list-scheduled result.
    opts.schedules = &run.schedules;
    EXPECT_DOUBLE_EQ(execute(g, opts).result.throughput, run.result.throughput);
}

TEST(StaticOrder, ImposedOrderNeverBeatsSelfTimed)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = testing::random_hsdf(4, seed, false);
        if (!oracle::max_cycle_ratio(g))
            continue;
        ExecutionOptions opts;
        opts.actor_core = {0, 1, 0, 1};
        opts.core_count = 2;
        const auto run = execute(g, opts);
        EXPECT_LE(run.result.throughput, self_timed_throughput(g).throughput + 1e-12) << "seed " << seed;
    }
}

TEST(StaticOrder, ScheduleMustCoverBoundActors)
{
    auto g = two_actor_cycle(1, 1, 1);
    StaticOrderSchedule s;
    s.cores.push_back(CoreSchedule{{}, {0}});
    ExecutionOptions opts;
    opts.actor_core = {0, 0};
    opts.core_count = 1;
    opts.schedules = &s;
    EXPECT_THROW(execute(g, opts), ValidationError);
}

TEST(CompactSchedule, ReducesToPrimitiveCycle)
{
    EXPECT_EQ(compact_schedule({{}, {1, 2, 1, 2, 1, 2}}), (CoreSchedule{{}, {1, 2}}));
    EXPECT_EQ(compact_schedule({{}, {1, 2, 3}}), (CoreSchedule{{}, {1, 2, 3}}));
    EXPECT_EQ(compact_schedule({{0, 2}, {1, 2}}), (CoreSchedule{{0}, {2, 1}}));
    EXPECT_EQ(compact_schedule({{1, 2}, {1, 2, 1, 2}}), (CoreSchedule{{}, {1, 2}}));
}

} // namespace
} // namespace snnmap
