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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "snnmap/graph.hpp"
#include "snnmap/neuron.hpp"

namespace snnmap {

/// Spike instants of one source within one frame.
struct SpikeTrain {
    std::vector<double> times; // s, strictly increasing, in [0, frame_length)
    double frame_length = 0.0; // s

    void validate() const;
};

/// One frame of stimulus: a spike train per input id.
using FrameStimulus = std::map<std::string, SpikeTrain>;

struct NeuronStep {
    double voltage = 0.0;
    bool fired = false;
};

/// Forward-Euler membrane update followed by the threshold test. A neuron
/// entering the step at or above threshold fires as well; firing resets the
/// membrane to v_rest, so the returned voltage is always below threshold.
NeuronStep step_neuron(double voltage, const LifParams &params, double synaptic_current);

struct WeightedSpikes {
    int count = 0;       // spikes of this source inside [t, t + dt)
    double weight = 0.0; // charge delivered per spike (C)
};

/// Current-based synapse sum over one integration step: each spike injects
/// weight / dt.
double synaptic_current(std::span<const WeightedSpikes> incoming, double dt);

/// Per-neuron spike counts of one simulated frame.
std::vector<int> simulate_frame(const SnnGraph &g, std::span<const LifParams> params,
                                const FrameStimulus &frame);

/// Sets spikes_per_frame on every synapse (and input) to the source's mean
/// spike count across `frames`, rounded to the nearest integer. Neuron
/// spikes reach their targets one integration step after emission.
SnnGraph estimate_rates(const SnnGraph &g, std::span<const LifParams> params,
                        std::span<const FrameStimulus> frames);

/// Same as above using the parameters stored on the graph's neurons.
SnnGraph estimate_rates(const SnnGraph &g, std::span<const FrameStimulus> frames);

} // namespace snnmap
