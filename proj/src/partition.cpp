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

#include "snnmap/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "snnmap/error.hpp"
#include "snnmap/parallel.hpp"
#include "snnmap/random.hpp"

namespace snnmap {

namespace {

// Node numbering: neurons first, then inputs.
std::size_t node_of(const SnnGraph &g, NodeRef r)
{
    return r.is_input() ? g.neuron_count() + r.index : r.index;
}

struct Topology {
    std::size_t node_count = 0;
    std::vector<std::vector<std::size_t>> sources;                     // distinct, per neuron
    std::vector<std::vector<std::pair<std::size_t, double>>> neighbors; // neuron-neuron synapses

    explicit Topology(const SnnGraph &g)
        : node_count(g.neuron_count() + g.input_count()), sources(g.neuron_count()), neighbors(g.neuron_count())
    {
        for (const auto &s : g.synapses()) {
            sources[s.dst].push_back(node_of(g, s.src));
            if (!s.src.is_input()) {
                neighbors[s.src.index].emplace_back(s.dst, s.spikes_per_frame);
                neighbors[s.dst].emplace_back(s.src.index, s.spikes_per_frame);
            }
        }
    }
};

// Per-cluster multiset of pre-synaptic sources.
class FanInTracker {
  public:
    FanInTracker(std::size_t clusters, std::size_t nodes) : nodes_(nodes) { resize(clusters); }

    void resize(std::size_t clusters)
    {
        counts_.resize(clusters, std::vector<int>(nodes_, 0));
        distinct_.resize(clusters, 0);
        sizes_.resize(clusters, 0);
    }

    void add(std::size_t c, const std::vector<std::size_t> &sources, int sign)
    {
        auto &cnt = counts_[c];
        for (auto s : sources) {
            if (sign > 0 && cnt[s]++ == 0)
                ++distinct_[c];
            else if (sign < 0 && --cnt[s] == 0)
                --distinct_[c];
        }
        sizes_[c] += static_cast<std::size_t>(sign > 0 ? 1 : 0);
        sizes_[c] -= static_cast<std::size_t>(sign < 0 ? 1 : 0);
    }

    std::size_t distinct(std::size_t c) const { return distinct_[c]; }
    std::size_t size(std::size_t c) const { return sizes_[c]; }
    std::size_t clusters() const { return distinct_.size(); }

  private:
    std::size_t nodes_;
    std::vector<std::vector<int>> counts_;
    std::vector<std::size_t> distinct_;
    std::vector<std::size_t> sizes_;
};

bool fits(const FanInTracker &t, std::size_t c, const CrossbarLimits &limits)
{
    const auto m = static_cast<std::size_t>(limits.dim);
    return t.size(c) <= m && (!limits.enforce_fan_in || t.distinct(c) <= m);
}

void check_limits(const CrossbarLimits &limits)
{
    if (limits.dim < 1)
        throw ConfigError("crossbar dimension M must be >= 1");
}

} // namespace

std::vector<std::size_t> Partition::cluster_sizes() const
{
    std::vector<std::size_t> sizes(cluster_count, 0);
    for (auto c : assignment)
        ++sizes.at(c);
    return sizes;
}

std::vector<std::size_t> cluster_fan_in(const SnnGraph &g, const Partition &p)
{
    const Topology topo(g);
    FanInTracker t(p.cluster_count, topo.node_count);
    for (std::size_t n = 0; n < p.assignment.size(); ++n)
        t.add(p.assignment[n], topo.sources[n], +1);
    std::vector<std::size_t> out(p.cluster_count);
    for (std::size_t c = 0; c < out.size(); ++c)
        out[c] = t.distinct(c);
    return out;
}

std::string partition_violation(const SnnGraph &g, const Partition &p, const CrossbarLimits &limits)
{
    if (p.assignment.size() != g.neuron_count())
        return "assignment covers " + std::to_string(p.assignment.size()) + " neurons, graph has " +
               std::to_string(g.neuron_count());
    for (std::size_t n = 0; n < p.assignment.size(); ++n)
        if (p.assignment[n] >= p.cluster_count)
            return "neuron " + g.neurons()[n].id + " assigned to nonexistent cluster";
    const auto sizes = p.cluster_sizes();
    const auto fan_in = cluster_fan_in(g, p);
    const auto m = static_cast<std::size_t>(limits.dim);
    for (std::size_t c = 0; c < p.cluster_count; ++c) {
        if (sizes[c] > m)
            return "cluster " + std::to_string(c) + " holds " + std::to_string(sizes[c]) + " neurons > M";
        if (limits.enforce_fan_in && fan_in[c] > m)
            return "cluster " + std::to_string(c) + " has " + std::to_string(fan_in[c]) +
                   " pre-synaptic sources > M";
    }
    return {};
}

Partition init_partition(const SnnGraph &g, const CrossbarLimits &limits, std::uint64_t seed)
{
    check_limits(limits);
    const Topology topo(g);
    const std::size_t n = g.neuron_count();
    const auto m = static_cast<std::size_t>(limits.dim);
    if (limits.enforce_fan_in)
        for (std::size_t i = 0; i < n; ++i)
            if (topo.sources[i].size() > m)
                throw InfeasibleError("neuron " + g.neurons()[i].id + " has " +
                                      std::to_string(topo.sources[i].size()) +
                                      " pre-synaptic sources; crossbar dimension is " + std::to_string(m));

    Partition p;
    p.assignment.assign(n, 0);
    p.cluster_count = (n + m - 1) / m;
    if (n == 0)
        return p;

    Rng rng(seed);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    shuffle(order, rng);

    FanInTracker t(p.cluster_count, topo.node_count);
    for (auto neuron : order) {
        const std::size_t k = t.clusters();
        const std::size_t start = uniform_index(rng, k);
        bool placed = false;
        for (std::size_t step = 0; step < k && !placed; ++step) {
            const std::size_t c = (start + step) % k;
            t.add(c, topo.sources[neuron], +1);
            if (fits(t, c, limits)) {
                p.assignment[neuron] = c;
                placed = true;
            } else {
                t.add(c, topo.sources[neuron], -1);
            }
        }
        if (!placed) {
            t.resize(k + 1);
            t.add(k, topo.sources[neuron], +1);
            p.assignment[neuron] = k;
        }
    }
    p.cluster_count = t.clusters();
    return p;
}

double communication_cost(const SnnGraph &g, const Partition &p)
{
    double cost = 0.0;
    for (const auto &s : g.synapses())
        if (!s.src.is_input() && p.assignment.at(s.src.index) != p.assignment.at(s.dst))
            cost += s.spikes_per_frame;
    return cost;
}

Partition kl_refine(const SnnGraph &g, Partition p, const CrossbarLimits &limits, double delta_min, KlTrace *trace)
{
    check_limits(limits);
    if (auto why = partition_violation(g, p, limits); !why.empty())
        throw ValidationError("kl_refine needs a valid partition: " + why);

    const Topology topo(g);
    const std::size_t n = g.neuron_count();
    auto &a = p.assignment;

    FanInTracker t(p.cluster_count, topo.node_count);
    for (std::size_t i = 0; i < n; ++i)
        t.add(a[i], topo.sources[i], +1);

    double cost = communication_cost(g, p);
    if (trace) {
        *trace = KlTrace{};
        trace->initial_cost = cost;
    }

    // Cost change of exchanging i (in cluster k) and j (in cluster l).
    auto swap_delta = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        double delta = 0.0;
        for (const auto &[o, w] : topo.neighbors[i]) {
            if (o == j)
                continue; // stays cut
            delta += w * (static_cast<double>(l != a[o]) - static_cast<double>(k != a[o]));
        }
        for (const auto &[o, w] : topo.neighbors[j]) {
            if (o == i)
                continue;
            delta += w * (static_cast<double>(k != a[o]) - static_cast<double>(l != a[o]));
        }
        return delta;
    };

    auto apply_swap = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        t.add(k, topo.sources[i], -1);
        t.add(k, topo.sources[j], +1);
        t.add(l, topo.sources[j], -1);
        t.add(l, topo.sources[i], +1);
        a[i] = l;
        a[j] = k;
    };

    double delta = std::numeric_limits<double>::infinity();
    while (delta > delta_min) {
        double improvement = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::size_t k = a[i], l = a[j];
                if (k == l)
                    continue;
                const double d = swap_delta(i, j, k, l);
                if (!(d < 0.0))
                    continue;
                apply_swap(i, j, k, l);
                if (!fits(t, k, limits) || !fits(t, l, limits)) {
                    apply_swap(j, i, k, l); // revert: j back to l, i back to k
                    continue;
                }
                cost += d;
                improvement -= d;
                if (trace)
                    trace->accepted_costs.push_back(cost);
            }
        }
        delta = improvement;
        if (trace)
            trace->sweep_improvements.push_back(improvement);
    }

    if (trace)
        trace->final_cost = communication_cost(g, p);
    return p;
}

double ClusteredSnnGraph::total_spikes() const
{
    double sum = 0.0;
    for (const auto &c : clusters)
        sum += c.internal_spikes;
    for (const auto &e : edges)
        sum += e.spikes;
    for (const auto &e : input_edges)
        sum += e.spikes;
    return sum;
}

ClusteredSnnGraph build_clustered_graph(const SnnGraph &g, const Partition &p)
{
    if (p.assignment.size() != g.neuron_count())
        throw ValidationError("partition does not cover the graph");

    const auto sizes = p.cluster_sizes();
    std::vector<std::size_t> remap(p.cluster_count, 0);
    ClusteredSnnGraph cg;
    for (std::size_t c = 0; c < p.cluster_count; ++c) {
        if (sizes[c] == 0)
            continue;
        remap[c] = cg.clusters.size();
        cg.clusters.push_back(Cluster{"c" + std::to_string(cg.clusters.size()), {}, 0, 0.0});
    }
    for (std::size_t n = 0; n < g.neuron_count(); ++n)
        cg.clusters[remap[p.assignment[n]]].neurons.push_back(n);

    Partition compact{std::vector<std::size_t>(g.neuron_count()), cg.clusters.size()};
    for (std::size_t n = 0; n < g.neuron_count(); ++n)
        compact.assignment[n] = remap[p.assignment[n]];
    const auto fan_in = cluster_fan_in(g, compact);
    for (std::size_t c = 0; c < cg.clusters.size(); ++c)
        cg.clusters[c].fan_in = fan_in[c];

    std::map<std::pair<std::size_t, std::size_t>, double> cut, from_input;
    for (const auto &s : g.synapses()) {
        const auto dst = compact.assignment[s.dst];
        if (s.src.is_input()) {
            from_input[{s.src.index, dst}] += s.spikes_per_frame;
            continue;
        }
        const auto src = compact.assignment[s.src.index];
        if (src == dst)
            cg.clusters[src].internal_spikes += s.spikes_per_frame;
        else
            cut[{src, dst}] += s.spikes_per_frame;
    }
    for (const auto &[key, spikes] : cut)
        cg.edges.push_back(ClusterEdge{key.first, key.second, spikes, std::llround(spikes)});
    for (const auto &[key, spikes] : from_input)
        cg.input_edges.push_back(InputEdge{key.first, key.second, spikes});

    for (const auto &neuron : g.neurons())
        cg.neuron_ids.push_back(neuron.id);
    for (const auto &input : g.inputs())
        cg.input_ids.push_back(input.id);
    return cg;
}

std::vector<PartitionRound> iterate_partitions(const SnnGraph &g, const CrossbarLimits &limits, int eta,
                                               double delta_min, std::uint64_t master_seed, int jobs)
{
    if (eta < 1)
        throw ConfigError("eta must be >= 1");
    std::vector<PartitionRound> rounds(static_cast<std::size_t>(eta));
    parallel_for(rounds.size(), jobs, [&](std::size_t r) {
        auto &round = rounds[r];
        round.seed = derive_seed(master_seed, r);
        auto init = init_partition(g, limits, round.seed);
        round.partition = kl_refine(g, std::move(init), limits, delta_min, &round.trace);
        round.clustered = build_clustered_graph(g, round.partition);
    });
    return rounds;
}

} // namespace snnmap
