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
#include <optional>
#include <string>
#include <vector>

#include "snnmap/graph.hpp"
#include "snnmap/partition.hpp"

namespace snnmap {

using ActorId = std::size_t;

struct Actor {
    std::string id;
    Time exec_time = 1;
};

/// FIFO channel. Capacity bounds tokens stored plus space claimed by
/// running producer firings; nullopt means unbounded. Self-loops model
/// actor state and are never capacity-constrained.
struct Channel {
    ActorId src = 0;
    std::int64_t production = 1;
    ActorId dst = 0;
    std::int64_t consumption = 1;
    std::int64_t initial_tokens = 0;
    std::optional<std::int64_t> capacity;

    bool self_loop() const { return src == dst; }
    bool bounded() const { return capacity.has_value() && !self_loop(); }
};

/// Synchronous dataflow graph.
class Sdfg {
  public:
    ActorId add_actor(std::string id, Time exec_time);
    std::size_t add_channel(ActorId src, std::int64_t production, ActorId dst, std::int64_t consumption,
                            std::int64_t initial_tokens = 0, std::optional<std::int64_t> capacity = std::nullopt);

    const std::vector<Actor> &actors() const { return actors_; }
    const std::vector<Channel> &channels() const { return channels_; }
    std::size_t actor_count() const { return actors_.size(); }
    std::size_t channel_count() const { return channels_.size(); }

    std::optional<ActorId> find(const std::string &id) const;
    void set_capacity(std::size_t channel, std::optional<std::int64_t> capacity);

  private:
    std::vector<Actor> actors_;
    std::vector<Channel> channels_;
};

/// Per-channel capacities; nullopt entries are unbounded.
using BufferAllocation = std::vector<std::optional<std::int64_t>>;

/// max(production, consumption, initial tokens).
std::int64_t min_capacity(const Channel &c);

/// Smallest capacity increment for a channel: gcd(production, consumption).
std::int64_t capacity_quantum(const Channel &c);

BufferAllocation buffer_allocation(const Sdfg &g);
BufferAllocation min_buffer_allocation(const Sdfg &g);

/// Sum of capacities of non-self-loop channels; nullopt if any is unbounded.
std::optional<std::int64_t> total_buffer(const Sdfg &g);

/// Copy of `g` with the given capacities. Throws InfeasibleError when a
/// capacity is below min_capacity for its channel.
Sdfg set_buffer_allocation(const Sdfg &g, const BufferAllocation &alloc);

struct LiftOptions {
    Time exec_time = 1;
    /// Capacity of every lifted channel as a multiple of its token rate;
    /// nullopt leaves channels unbounded.
    std::optional<std::int64_t> buffer_frames;
};

/// One actor per cluster, one channel per clustered edge (production =
/// consumption = tokens per frame, no initial tokens) and a one-token
/// self-loop per actor. Edges carrying zero tokens are dropped and noted
/// in `warnings`.
Sdfg lift_to_sdfg(const ClusteredSnnGraph &cg, const LiftOptions &opts = {},
                  std::vector<std::string> *warnings = nullptr);

struct RepetitionVector {
    std::vector<std::int64_t> counts;
    bool operator==(const RepetitionVector &) const = default;
};

/// Smallest positive solution of the balance equations, normalized per
/// weakly connected component. Throws ConsistencyError naming a channel
/// whose rates contradict the rest of its component.
RepetitionVector repetition_vector(const Sdfg &g);

struct DeadlockReport {
    bool deadlocked = false;
    std::vector<std::int64_t> tokens;         // per channel at the stall
    std::vector<ActorId> starving;            // actors with firings left
    std::vector<std::int64_t> firings_left;   // per actor

    bool ok() const { return !deadlocked; }
};

/// Untimed execution of one iteration honoring buffer capacities.
DeadlockReport check_deadlock(const Sdfg &g);

/// Weakly connected component index of every actor.
std::vector<std::size_t> weak_components(const Sdfg &g);

} // namespace snnmap
