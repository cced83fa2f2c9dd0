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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snnmap/execution.hpp"
#include "snnmap/graph.hpp"
#include "snnmap/partition.hpp"
#include "snnmap/random.hpp"
#include "snnmap/sdfg.hpp"

namespace snnmap {

/// Crossbar demand of one cluster.
struct ClusterFootprint {
    std::size_t neurons = 0;
    std::size_t fan_in = 0;
};

std::vector<ClusterFootprint> cluster_footprints(const ClusteredSnnGraph &cg);

/// Everything needed to evaluate a cluster-to-core binding. The SDFG has
/// one actor per cluster; `footprint` is indexed by actor (empty skips the
/// crossbar check).
struct MappingProblem {
    Sdfg sdfg;
    HardwareGraph hardware;
    std::vector<ClusterFootprint> footprint;
    /// Time-wheel factor: a firing on core k lasts exec_time(k) * slowdown.
    Time slowdown = 2;
    std::size_t state_budget = 1'000'000;
};

/// Cluster-to-core binding; core_of[actor] is a core index.
struct MappingMatrix {
    std::vector<std::size_t> core_of;

    bool operator==(const MappingMatrix &) const = default;
};

/// Empty when the binding respects every core limit, otherwise the first
/// violation found.
std::string mapping_violation(const MappingProblem &p, const MappingMatrix &m);

/// Turns a row-major |actors| x |cores| position into a binding: per row
/// the largest component among cores whose crossbar fits the cluster
/// (ties to the lower core), then greedy repair of connection and
/// bandwidth overruns. Throws InfeasibleError when repair gets stuck.
MappingMatrix decode_position(const MappingProblem &p, std::span<const double> theta);

/// Execution overlay for a binding: per-core firing durations, routed
/// channel latencies, and the core assignment.
ExecutionOptions mapped_execution(const MappingProblem &p, const MappingMatrix &m);

/// List-scheduled execution of the binding; records the static-order
/// schedules together with the throughput they achieve.
TimedRun build_schedules(const MappingProblem &p, const MappingMatrix &m);

/// Throughput when every core follows `schedules`.
ThroughputResult evaluate_static_order(const MappingProblem &p, const MappingMatrix &m,
                                       const StaticOrderSchedule &schedules);

/// Throughput of the list-scheduled binding, or 0 when it violates a limit
/// or deadlocks. BudgetExceededError propagates.
double mapping_fitness(const MappingProblem &p, const MappingMatrix &m);

struct SwarmConfig {
    std::size_t particles = 20;
    double phi1 = 1.5;
    double phi2 = 1.5;
    std::size_t iterations = 50;
    double v_max = 0.5;
    std::uint64_t seed = 1;
    /// Multiplies the previous velocity; unset keeps the plain update.
    std::optional<double> inertia;
    /// Scales both attraction terms by fresh uniform draws.
    bool stochastic = false;

    void validate() const;
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = 0.0;
};

struct SwarmState {
    std::vector<Particle> particles;
    std::vector<double> best_position;
    double best_fitness = 0.0;
    std::vector<double> best_history; // global best after init and after every step
    Rng rng;
};

/// Fitness of a batch of positions, one value per position (larger is better).
using BatchFitness = std::function<std::vector<double>(const std::vector<std::vector<double>> &)>;

/// Random positions in [0,1]^dims and velocities in [-v_max, v_max].
/// `seeds` overwrite the first particles' positions.
SwarmState init_swarm(std::size_t dims, const SwarmConfig &cfg, const BatchFitness &fitness,
                      const std::vector<std::vector<double>> &seeds = {});

/// One velocity/position update of every particle followed by a batch
/// evaluation and personal/global best updates (strict improvement only).
void pso_step(SwarmState &swarm, const SwarmConfig &cfg, const BatchFitness &fitness);

struct MappingSolution {
    MappingMatrix mapping;
    StaticOrderSchedule schedules;
    ThroughputResult result;
    std::vector<double> best_history;
    std::size_t evaluations = 0;
    BufferAllocation allocation;
};

/// PSO over bindings with list-scheduled throughput as fitness. Distinct
/// bindings are evaluated once, in parallel when jobs > 1; the outcome does
/// not depend on `jobs`. `incumbent` joins the initial swarm as a one-hot
/// position.
MappingSolution search_mapping(const MappingProblem &p, const SwarmConfig &cfg, int jobs = 1,
                               const MappingMatrix *incumbent = nullptr);

/// List-scheduled solution for a fixed binding.
MappingSolution solve_fixed_mapping(const MappingProblem &p, const MappingMatrix &m);

} // namespace snnmap
