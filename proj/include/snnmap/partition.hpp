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
#include <string>
#include <vector>

#include "snnmap/graph.hpp"

namespace snnmap {

/// Capacity of one M x M crossbar.
struct CrossbarLimits {
    int dim = 256;
    /// Also bound the number of distinct pre-synaptic sources (neurons and
    /// inputs) feeding a cluster. Disabling leaves only the size bound.
    bool enforce_fan_in = true;
};

/// Neuron-to-cluster assignment (one cluster per neuron).
struct Partition {
    std::vector<std::size_t> assignment;
    std::size_t cluster_count = 0;

    std::vector<std::size_t> cluster_sizes() const;
    bool operator==(const Partition &) const = default;
};

/// Distinct pre-synaptic sources of every cluster.
std::vector<std::size_t> cluster_fan_in(const SnnGraph &g, const Partition &p);

/// Empty string when `p` satisfies both crossbar bounds, otherwise a
/// description of the first violation.
std::string partition_violation(const SnnGraph &g, const Partition &p, const CrossbarLimits &limits);

/// Random neuron-to-cluster allocation that respects the crossbar bounds.
/// Starts with ceil(|N| / M) clusters and opens more when no existing one
/// can take a neuron. Throws InfeasibleError if a single neuron already
/// exceeds the fan-in bound.
Partition init_partition(const SnnGraph &g, const CrossbarLimits &limits, std::uint64_t seed);

/// Spikes per frame carried by neuron-to-neuron synapses that cross
/// clusters. Input synapses always enter from outside and are not counted.
double communication_cost(const SnnGraph &g, const Partition &p);

struct KlTrace {
    double initial_cost = 0;
    double final_cost = 0;
    std::vector<double> sweep_improvements; // total cost reduction per sweep
    std::vector<double> accepted_costs;     // cost after each accepted swap
};

/// Pairwise-swap descent. Each sweep visits every neuron pair (i < j, in
/// declaration order) sitting in different clusters and keeps a swap only
/// if both clusters stay within the crossbar bounds and the cost strictly
/// drops. Stops once a sweep improves the cost by no more than delta_min.
Partition kl_refine(const SnnGraph &g, Partition p, const CrossbarLimits &limits, double delta_min = 0.0,
                    KlTrace *trace = nullptr);

struct Cluster {
    std::string id;
    std::vector<std::size_t> neurons;
    std::size_t fan_in = 0;        // distinct pre-synaptic sources
    double internal_spikes = 0.0;  // absorbed intra-cluster synapses
};

struct ClusterEdge {
    std::size_t src = 0;
    std::size_t dst = 0;
    double spikes = 0.0;      // summed spikes_per_frame of crossing synapses
    std::int64_t tokens = 0;  // spikes rounded to an integer token count
};

/// Spikes entering a cluster from an external input source.
struct InputEdge {
    std::size_t input = 0;
    std::size_t dst = 0;
    double spikes = 0.0;
};

struct ClusteredSnnGraph {
    std::vector<Cluster> clusters;
    std::vector<ClusterEdge> edges;
    std::vector<InputEdge> input_edges;
    std::vector<std::string> neuron_ids;
    std::vector<std::string> input_ids;

    double total_spikes() const;
};

/// Collapses each non-empty cluster into one node. Empty clusters are
/// dropped and the remaining ones renumbered in index order.
ClusteredSnnGraph build_clustered_graph(const SnnGraph &g, const Partition &p);

struct PartitionRound {
    std::uint64_t seed = 0;
    Partition partition;
    KlTrace trace;
    ClusteredSnnGraph clustered;
};

/// `eta` independent rounds of random init + KL refinement. Round r uses
/// derive_seed(master_seed, r).
std::vector<PartitionRound> iterate_partitions(const SnnGraph &g, const CrossbarLimits &limits, int eta,
                                               double delta_min, std::uint64_t master_seed, int jobs = 1);

} // namespace snnmap
