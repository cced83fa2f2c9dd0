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

#include "snnmap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "snnmap/error.hpp"

namespace snnmap {

void LifParams::validate() const
{
    if (!(membrane_capacitance > 0) || !std::isfinite(membrane_capacitance))
        throw ValidationError("membrane_capacitance must be > 0");
    if (!(membrane_resistance > 0) || !std::isfinite(membrane_resistance))
        throw ValidationError("membrane_resistance must be > 0");
    if (!(v_threshold > v_rest))
        throw ValidationError("v_threshold must exceed v_rest");
    if (!(dt > 0) || !std::isfinite(dt))
        throw ValidationError("dt must be > 0");
    if (!std::isfinite(injected_current))
        throw ValidationError("injected_current must be finite");
}

void SnnGraph::check_new_id(const std::string &id) const
{
    if (id.empty())
        throw ValidationError("node id must not be empty");
    if (index_.contains(id))
        throw ValidationError("duplicate node id '" + id + "'");
}

std::size_t SnnGraph::add_neuron(std::string id, LifParams lif)
{
    check_new_id(id);
    lif.validate();
    const std::size_t idx = neurons_.size();
    index_.emplace(id, NodeRef{NodeRef::Kind::neuron, idx});
    neurons_.push_back(Neuron{std::move(id), lif});
    return idx;
}

std::size_t SnnGraph::add_input(std::string id, double spikes_per_frame)
{
    check_new_id(id);
    if (!(spikes_per_frame >= 0) || !std::isfinite(spikes_per_frame))
        throw ValidationError("input '" + id + "': spikes_per_frame must be >= 0");
    const std::size_t idx = inputs_.size();
    index_.emplace(id, NodeRef{NodeRef::Kind::input, idx});
    inputs_.push_back(Input{std::move(id), spikes_per_frame});
    return idx;
}

std::size_t SnnGraph::add_synapse(std::string_view src, std::string_view dst, double weight,
                                  double spikes_per_frame)
{
    auto s = find(src);
    if (!s)
        throw ValidationError("synapse source '" + std::string(src) + "' is not a declared neuron or input");
    auto d = find(dst);
    if (!d)
        throw ValidationError("synapse target '" + std::string(dst) + "' is not a declared neuron");
    if (d->is_input())
        throw ValidationError("synapse target '" + std::string(dst) + "' is an input, not a neuron");
    if (!std::isfinite(weight))
        throw ValidationError("synapse " + std::string(src) + "->" + std::string(dst) + ": weight must be finite");
    if (!(spikes_per_frame >= 0) || !std::isfinite(spikes_per_frame))
        throw ValidationError("synapse " + std::string(src) + "->" + std::string(dst) +
                              ": spikes_per_frame must be >= 0");
    std::string key(src);
    key.push_back('\0');
    key.append(dst);
    if (pairs_.contains(key))
        throw ValidationError("duplicate synapse " + std::string(src) + "->" + std::string(dst));
    const std::size_t idx = synapses_.size();
    pairs_.emplace(std::move(key), idx);
    synapses_.push_back(Synapse{*s, d->index, weight, spikes_per_frame});
    return idx;
}

std::optional<NodeRef> SnnGraph::find(std::string_view id) const
{
    auto it = index_.find(std::string(id));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

const std::string &SnnGraph::name_of(NodeRef ref) const
{
    return ref.is_input() ? inputs_.at(ref.index).id : neurons_.at(ref.index).id;
}

void SnnGraph::set_synapse_spikes(std::size_t synapse, double spikes_per_frame)
{
    if (!(spikes_per_frame >= 0) || !std::isfinite(spikes_per_frame))
        throw ValidationError("spikes_per_frame must be >= 0");
    synapses_.at(synapse).spikes_per_frame = spikes_per_frame;
}

void SnnGraph::set_input_spikes(std::size_t input, double spikes_per_frame)
{
    if (!(spikes_per_frame >= 0) || !std::isfinite(spikes_per_frame))
        throw ValidationError("spikes_per_frame must be >= 0");
    inputs_.at(input).spikes_per_frame = spikes_per_frame;
}

void SnnGraph::set_neuron_params(std::size_t neuron, const LifParams &lif)
{
    lif.validate();
    neurons_.at(neuron).lif = lif;
}

double SnnGraph::total_spikes() const
{
    double sum = 0;
    for (const auto &s : synapses_)
        sum += s.spikes_per_frame;
    return sum;
}

void Core::validate() const
{
    if (crossbar_dim < 1)
        throw ValidationError("core '" + id + "': crossbar_dim must be >= 1");
    if (exec_time <= 0)
        throw ValidationError("core '" + id + "': exec_time must be > 0");
    if (in_connections < 0 || out_connections < 0 || in_bandwidth < 0 || out_bandwidth < 0)
        throw ValidationError("core '" + id + "': connection and bandwidth caps must be >= 0");
}

std::size_t HardwareGraph::add_core(Core core)
{
    if (core.id.empty())
        throw ValidationError("core id must not be empty");
    if (index_.contains(core.id))
        throw ValidationError("duplicate core id '" + core.id + "'");
    core.validate();
    const std::size_t idx = cores_.size();
    index_.emplace(core.id, idx);
    cores_.push_back(std::move(core));
    return idx;
}

void HardwareGraph::add_link(std::string_view src, std::string_view dst, Time latency)
{
    auto s = find(src);
    auto d = find(dst);
    if (!s)
        throw ValidationError("link source '" + std::string(src) + "' is not a declared core");
    if (!d)
        throw ValidationError("link target '" + std::string(dst) + "' is not a declared core");
    if (latency < 0)
        throw ValidationError("link " + std::string(src) + "->" + std::string(dst) + ": latency must be >= 0");
    links_.push_back(Link{*s, *d, latency});
}

std::optional<std::size_t> HardwareGraph::find(std::string_view id) const
{
    auto it = index_.find(std::string(id));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::vector<std::optional<Time>>> HardwareGraph::route_latencies() const
{
    const std::size_t n = cores_.size();
    std::vector<std::vector<std::optional<Time>>> d(n, std::vector<std::optional<Time>>(n));
    for (std::size_t i = 0; i < n; ++i)
        d[i][i] = 0;
    for (const auto &l : links_)
        if (l.src != l.dst && (!d[l.src][l.dst] || *d[l.src][l.dst] > l.latency))
            d[l.src][l.dst] = l.latency;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!d[i][k])
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!d[k][j])
                    continue;
                const Time via = *d[i][k] + *d[k][j];
                if (!d[i][j] || *d[i][j] > via)
                    d[i][j] = via;
            }
        }
    return d;
}

GraphStats compute_graph_stats(const SnnGraph &g)
{
    GraphStats st;
    const std::size_t n_neurons = g.neuron_count();
    const std::size_t n = n_neurons + g.input_count();
    if (n == 0)
        return st;

    auto node_of = [&](NodeRef r) { return r.is_input() ? n_neurons + r.index : r.index; };

    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::size_t> in_deg(n, 0);
    for (const auto &s : g.synapses()) {
        out[node_of(s.src)].push_back(s.dst);
        ++in_deg[s.dst];
    }
    std::size_t max_in = 0, max_out = 0;
    for (std::size_t v = 0; v < n; ++v) {
        max_in = std::max(max_in, in_deg[v]);
        max_out = std::max(max_out, out[v].size());
    }
    st.max_in_degree = static_cast<double>(max_in);
    st.max_out_degree = static_cast<double>(max_out);
    st.avg_in_degree = static_cast<double>(g.synapses().size()) / static_cast<double>(n);
    st.avg_out_degree = st.avg_in_degree;

    // Weakly connected components via union-find.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&](std::size_t v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v : out[u]) {
            auto a = root(u), b = root(v);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<std::size_t> size(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        ++size[root(v)];
    std::size_t best = root(0);
    for (std::size_t v = 0; v < n; ++v)
        if (size[root(v)] > size[best])
            best = root(v);

    std::vector<int> dist(n);
    std::deque<std::size_t> queue;
    int diameter = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (root(s) != best)
            continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.assign(1, s);
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            diameter = std::max(diameter, dist[u]);
            for (auto v : out[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
    }
    st.diameter = diameter;
    return st;
}

} // namespace snnmap
