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
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "snnmap/neuron.hpp"

namespace snnmap {

/// Integral time unit used by every timed analysis.
using Time = std::int64_t;

inline constexpr std::int64_t kUnlimited = std::numeric_limits<std::int64_t>::max();

struct Neuron {
    std::string id;
    LifParams lif;
};

/// External spike source with a fixed per-frame spike count.
struct Input {
    std::string id;
    double spikes_per_frame = 0.0;
};

/// Endpoint of a synapse: either a neuron or an input source.
struct NodeRef {
    enum class Kind : std::uint8_t { neuron, input };
    Kind kind = Kind::neuron;
    std::size_t index = 0;

    bool is_input() const { return kind == Kind::input; }
    bool operator==(const NodeRef &) const = default;
};

struct Synapse {
    NodeRef src;
    std::size_t dst = 0; // neuron index
    double weight = 0.0;
    double spikes_per_frame = 0.0;
};

/// Directed neuron/synapse graph with per-synapse spike counts per frame.
///
/// Neurons and inputs share one identifier namespace. Mutators validate as
/// they go, so a graph built through this interface always satisfies the
/// referential and duplicate-pair invariants.
class SnnGraph {
  public:
    std::size_t add_neuron(std::string id, LifParams lif = {});
    std::size_t add_input(std::string id, double spikes_per_frame = 0.0);
    std::size_t add_synapse(std::string_view src, std::string_view dst, double weight,
                            double spikes_per_frame);

    const std::vector<Neuron> &neurons() const { return neurons_; }
    const std::vector<Input> &inputs() const { return inputs_; }
    const std::vector<Synapse> &synapses() const { return synapses_; }

    std::size_t neuron_count() const { return neurons_.size(); }
    std::size_t input_count() const { return inputs_.size(); }

    std::optional<NodeRef> find(std::string_view id) const;
    const std::string &name_of(NodeRef ref) const;

    void set_synapse_spikes(std::size_t synapse, double spikes_per_frame);
    void set_input_spikes(std::size_t input, double spikes_per_frame);
    void set_neuron_params(std::size_t neuron, const LifParams &lif);

    /// Sum of spikes_per_frame over all synapses.
    double total_spikes() const;

  private:
    void check_new_id(const std::string &id) const;

    std::vector<Neuron> neurons_;
    std::vector<Input> inputs_;
    std::vector<Synapse> synapses_;
    std::unordered_map<std::string, NodeRef> index_;
    std::unordered_map<std::string, std::size_t> pairs_; // "src\0dst" -> synapse
};

struct Core {
    std::string id;
    int crossbar_dim = 1;
    Time exec_time = 1;
    std::int64_t in_connections = kUnlimited;
    std::int64_t out_connections = kUnlimited;
    std::int64_t in_bandwidth = kUnlimited;  // tokens per iteration
    std::int64_t out_bandwidth = kUnlimited; // tokens per iteration

    void validate() const;
};

struct Link {
    std::size_t src = 0;
    std::size_t dst = 0;
    Time latency = 0;
};

/// Many-core platform: cores and directed links between them.
class HardwareGraph {
  public:
    std::size_t add_core(Core core);
    void add_link(std::string_view src, std::string_view dst, Time latency);

    const std::vector<Core> &cores() const { return cores_; }
    const std::vector<Link> &links() const { return links_; }
    std::size_t core_count() const { return cores_.size(); }
    std::optional<std::size_t> find(std::string_view id) const;

    /// Shortest-path latency between every ordered core pair; nullopt when
    /// no route exists. Diagonal entries are zero.
    std::vector<std::vector<std::optional<Time>>> route_latencies() const;

  private:
    std::vector<Core> cores_;
    std::vector<Link> links_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct GraphStats {
    double max_in_degree = 0;
    double avg_in_degree = 0;
    double max_out_degree = 0;
    double avg_out_degree = 0;
    int diameter = 0;

    bool operator==(const GraphStats &) const = default;
};

/// Degree statistics over all nodes (neurons and inputs) and the directed
/// diameter of the largest weakly connected component.
GraphStats compute_graph_stats(const SnnGraph &g);

} // namespace snnmap
