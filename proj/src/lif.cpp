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

#include "snnmap/lif.hpp"

#include <algorithm>
#include <cmath>

#include "snnmap/error.hpp"

namespace snnmap {

void SpikeTrain::validate() const
{
    if (!(frame_length > 0) || !std::isfinite(frame_length))
        throw ValidationError("spike train frame_length must be > 0");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0) || !(times[i] < frame_length))
            throw ValidationError("spike time " + std::to_string(times[i]) + " outside [0, frame_length)");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw ValidationError("spike times must be strictly increasing");
    }
}

NeuronStep step_neuron(double voltage, const LifParams &p, double synaptic_current)
{
    const double leak = -(p.membrane_capacitance / p.tau_m()) * (voltage - p.v_rest);
    const double next =
        voltage + (p.dt / p.membrane_capacitance) * (leak + synaptic_current + p.injected_current);
    if (voltage >= p.v_threshold || next >= p.v_threshold)
        return {p.v_rest, true};
    return {next, false};
}

double synaptic_current(std::span<const WeightedSpikes> incoming, double dt)
{
    double charge = 0.0;
    for (const auto &in : incoming)
        charge += in.count * in.weight;
    return charge / dt;
}

namespace {

double common_dt(std::span<const LifParams> params)
{
    if (params.empty())
        return LifParams{}.dt;
    const double dt = params.front().dt;
    for (const auto &p : params)
        if (p.dt != dt)
            throw ConfigError("all neurons must share one integration step dt");
    return dt;
}

struct TrainCursor {
    const SpikeTrain *train = nullptr;
    std::size_t next = 0;

    int take_until(double t_end)
    {
        int n = 0;
        while (next < train->times.size() && train->times[next] < t_end) {
            ++next;
            ++n;
        }
        return n;
    }
};

} // namespace

std::vector<int> simulate_frame(const SnnGraph &g, std::span<const LifParams> params,
                                const FrameStimulus &frame)
{
    if (params.size() != g.neuron_count())
        throw ConfigError("expected one LifParams per neuron");
    for (const auto &p : params)
        p.validate();
    const double dt = common_dt(params);

    std::vector<TrainCursor> cursors(g.input_count());
    double frame_length = 0.0;
    for (std::size_t i = 0; i < g.input_count(); ++i) {
        const auto &id = g.inputs()[i].id;
        auto it = frame.find(id);
        if (it == frame.end())
            throw ConfigError("input '" + id + "' has no spike train in this frame");
        it->second.validate();
        if (i > 0 && it->second.frame_length != frame_length)
            throw ConfigError("inputs disagree on frame_length");
        frame_length = it->second.frame_length;
        cursors[i].train = &it->second;
    }
    if (g.input_count() == 0) {
        if (frame.empty())
            return std::vector<int>(g.neuron_count(), 0);
        frame_length = frame.begin()->second.frame_length;
    }

    // Incoming synapses grouped by target neuron.
    std::vector<std::vector<std::size_t>> incoming(g.neuron_count());
    for (std::size_t s = 0; s < g.synapses().size(); ++s)
        incoming[g.synapses()[s].dst].push_back(s);

    const auto steps = static_cast<long long>(std::ceil(frame_length / dt - 1e-9));
    std::vector<double> v(g.neuron_count());
    for (std::size_t n = 0; n < v.size(); ++n)
        v[n] = params[n].v_rest;
    std::vector<char> fired(g.neuron_count(), 0), fired_next(g.neuron_count(), 0);
    std::vector<int> input_spikes(g.input_count(), 0);
    std::vector<int> counts(g.neuron_count(), 0);
    std::vector<WeightedSpikes> drive;

    for (long long k = 0; k < steps; ++k) {
        const double t_end = static_cast<double>(k + 1) * dt;
        for (std::size_t i = 0; i < cursors.size(); ++i)
            input_spikes[i] = cursors[i].take_until(t_end);
        for (std::size_t n = 0; n < v.size(); ++n) {
            drive.clear();
            for (auto s : incoming[n]) {
                const auto &syn = g.synapses()[s];
                const int c = syn.src.is_input() ? input_spikes[syn.src.index] : fired[syn.src.index];
                if (c != 0)
                    drive.push_back({c, syn.weight});
            }
            const auto r = step_neuron(v[n], params[n], synaptic_current(drive, dt));
            v[n] = r.voltage;
            fired_next[n] = r.fired ? 1 : 0;
            counts[n] += r.fired ? 1 : 0;
        }
        std::swap(fired, fired_next);
    }
    return counts;
}

SnnGraph estimate_rates(const SnnGraph &g, std::span<const LifParams> params,
                        std::span<const FrameStimulus> frames)
{
    if (frames.empty())
        throw ConfigError("at least one stimulus frame is required");

    std::vector<double> neuron_total(g.neuron_count(), 0.0);
    std::vector<double> input_total(g.input_count(), 0.0);
    for (const auto &frame : frames) {
        const auto counts = simulate_frame(g, params, frame);
        for (std::size_t n = 0; n < counts.size(); ++n)
            neuron_total[n] += counts[n];
        for (std::size_t i = 0; i < g.input_count(); ++i)
            input_total[i] += static_cast<double>(frame.at(g.inputs()[i].id).times.size());
    }

    const double nf = static_cast<double>(frames.size());
    auto rounded = [nf](double total) { return std::max(0.0, std::round(total / nf)); };

    SnnGraph out = g;
    for (std::size_t n = 0; n < g.neuron_count(); ++n)
        out.set_neuron_params(n, params[n]);
    for (std::size_t i = 0; i < g.input_count(); ++i)
        out.set_input_spikes(i, rounded(input_total[i]));
    for (std::size_t s = 0; s < g.synapses().size(); ++s) {
        const auto &syn = g.synapses()[s];
        const double total = syn.src.is_input() ? input_total[syn.src.index] : neuron_total[syn.src.index];
        out.set_synapse_spikes(s, rounded(total));
    }
    return out;
}

SnnGraph estimate_rates(const SnnGraph &g, std::span<const FrameStimulus> frames)
{
    std::vector<LifParams> params;
    params.reserve(g.neuron_count());
    for (const auto &n : g.neurons())
        params.push_back(n.lif);
    return estimate_rates(g, params, frames);
}

} // namespace snnmap
