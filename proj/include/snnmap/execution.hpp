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
#include <vector>

#include "snnmap/sdfg.hpp"

namespace snnmap {

/// Firing order of one core: a transient prefix followed by a cycle that
/// repeats forever.
struct CoreSchedule {
    std::vector<ActorId> transient;
    std::vector<ActorId> cycle;

    bool operator==(const CoreSchedule &) const = default;
};

struct StaticOrderSchedule {
    std::vector<CoreSchedule> cores;

    bool operator==(const StaticOrderSchedule &) const = default;
};

/// Timing overlays for a timed execution.
///
/// Without a core binding every actor fires as soon as it is ready
/// (self-timed, auto-concurrent unless a self-loop forbids it). With a
/// binding each core runs one firing at a time: ready actors queue on
/// their core's FIFO ready list (list scheduling), or, when `schedules` is
/// set, each core only fires the actor at its static-order cursor.
struct ExecutionOptions {
    std::vector<Time> exec_time;          // per actor; empty keeps Actor::exec_time
    std::vector<Time> channel_latency;    // per channel; empty means zero
    std::vector<std::size_t> actor_core;  // per actor; empty means unbound
    std::size_t core_count = 0;
    const StaticOrderSchedule *schedules = nullptr;
    std::size_t state_budget = 1'000'000;
};

struct ThroughputResult {
    double period = 0.0;
    double throughput = 0.0;
    std::int64_t transient_length = 0;  // iterations before the periodic regime
    std::uint64_t steady_state_hash = 0;
    Time cycle_time = 0;                 // clock span between the recurrent states
    std::vector<std::int64_t> cycle_firings; // per actor, within that span
    /// Per channel: time its ready producer waited for space while the
    /// consumer was not itself waiting for space downstream.
    std::vector<Time> space_blocked;
};

struct TimedRun {
    ThroughputResult result;
    StaticOrderSchedule schedules; // recorded firing order (list scheduling only)
};

/// Discrete-event execution until a state recurs. Throws DeadlockError
/// when execution stalls or some actor stops firing, BudgetExceededError
/// when no state recurs within `state_budget` recorded states.
///
/// Unbound graphs are split into strongly connected components (channels
/// plus the implicit space edges of bounded channels) and the slowest
/// component sets the throughput, so unbounded feed-forward channels do
/// not prevent recurrence.
TimedRun execute(const Sdfg &g, const ExecutionOptions &opts = {});

ThroughputResult self_timed_throughput(const Sdfg &g, const ExecutionOptions &opts = {});

/// Collapses a recorded (transient, cycle) pair: the cycle shrinks to its
/// primitive root and repeated copies at the end of the transient are
/// folded into the cycle. The infinite firing sequence is unchanged.
CoreSchedule compact_schedule(CoreSchedule s);

} // namespace snnmap
