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

#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "snnmap/execution.hpp"
#include "snnmap/mapping.hpp"
#include "snnmap/partition.hpp"
#include "snnmap/sdfg.hpp"

namespace snnmap {

struct SweepConfig {
    std::size_t plateau = 3;      // stop after this many steps without improvement
    std::size_t max_steps = 64;   // hard cap on capacity increments
    bool remap = true;            // re-run the mapping search at every allocation
    bool exhaustive = false;      // enumerate allocations instead (<= 5 channels)
    std::int64_t levels = 4;      // capacities per channel in exhaustive mode

    void validate() const;
};

/// Hardware context for a mapped sweep. Without it the sweep analyzes
/// unmapped self-timed execution.
struct SweepMapping {
    HardwareGraph hardware;
    std::vector<ClusterFootprint> footprint;
    Time slowdown = 2;
    SwarmConfig swarm;
    int jobs = 1;
    /// Keep this binding at every allocation instead of searching.
    std::optional<MappingMatrix> fixed;
};

struct SweepPoint {
    BufferAllocation allocation;
    std::int64_t total_buffer = 0;
    ThroughputResult result;
    std::optional<MappingSolution> solution;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double upper_bound = 0.0;               // throughput with unbounded buffers
    std::optional<std::string> min_deadlock; // why the minimum allocation was abandoned
};

/// Greedy buffer sweep: start from the minimum feasible allocation (or the
/// smallest uniformly enlarged one that does not deadlock) and repeatedly
/// grow the channel whose lack of space stalled its producer longest in the
/// periodic regime by one rate quantum. Stops on reaching the unbounded
/// throughput, when no channel blocks, after `plateau` non-improving steps,
/// or after `max_steps`. Throughputs along the sweep never decrease.
SweepResult sweep_buffers(const Sdfg &g, const SweepConfig &cfg, const SweepMapping *mapping = nullptr,
                          std::size_t state_budget = 1'000'000);

struct DesignPoint {
    double throughput = 0.0;
    std::int64_t total_buffer = 0;
    std::size_t round = 0;
    std::size_t step = 0;

    bool operator==(const DesignPoint &) const = default;
};

struct ParetoFront {
    std::vector<DesignPoint> points; // ascending total_buffer, ascending throughput
};

bool dominates(const DesignPoint &a, const DesignPoint &b);

/// Non-dominated subset (maximize throughput, minimize total buffer). Of
/// points equal on both axes only the first one survives.
ParetoFront pareto_filter(const std::vector<DesignPoint> &points);

/// Smallest-buffer point reaching `fraction` of the front's best throughput.
std::optional<DesignPoint> min_buffer_for_throughput(const ParetoFront &front, double fraction);

struct FlowConfig {
    CrossbarLimits limits;
    int eta = 1;
    double delta_min = 0.0;
    SwarmConfig swarm;
    SweepConfig sweep;
    std::uint64_t seed = 1;
    Time slowdown = 2;
    std::size_t state_budget = 1'000'000;
    int jobs = 1;

    void validate() const;
};

struct RoundOutcome {
    std::size_t round = 0;
    std::uint64_t seed = 0;
    PartitionRound partition;
    Sdfg sdfg;
    std::vector<std::string> warnings;
    SweepResult sweep;
    std::string status = "ok";       // or the reason the round was skipped
    std::exception_ptr error;

    bool ok() const { return !error; }
};

struct FlowResult {
    std::vector<RoundOutcome> rounds;
    std::vector<DesignPoint> points;          // every sweep point, round by round
    ParetoFront front;
    std::vector<ParetoFront> progressive;     // front after each round
    bool budget_exceeded = false;
};

/// Full exploration: eta partition rounds, each lifted to an SDFG and swept
/// over buffer allocations with a mapping search per allocation. Rounds
/// that deadlock, are inconsistent, infeasible, or exceed the state budget
/// are recorded and skipped. Throws the first round's error when every
/// round fails.
FlowResult run_design_flow(const SnnGraph &g, const HardwareGraph &hw, const FlowConfig &cfg);

} // namespace snnmap
