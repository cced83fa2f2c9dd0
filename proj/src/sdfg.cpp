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

#include "snnmap/sdfg.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "snnmap/error.hpp"

namespace snnmap {

ActorId Sdfg::add_actor(std::string id, Time exec_time)
{
    if (id.empty())
        throw ValidationError("actor id must not be empty");
    if (find(id))
        throw ValidationError("duplicate actor id '" + id + "'");
    if (exec_time < 1)
        throw ValidationError("actor '" + id + "': execution time must be >= 1");
    actors_.push_back(Actor{std::move(id), exec_time});
    return actors_.size() - 1;
}

std::size_t Sdfg::add_channel(ActorId src, std::int64_t production, ActorId dst, std::int64_t consumption,
                              std::int64_t initial_tokens, std::optional<std::int64_t> capacity)
{
    if (src >= actors_.size() || dst >= actors_.size())
        throw ValidationError("channel endpoint is not a declared actor");
    if (production < 1 || consumption < 1)
        throw ValidationError("channel " + actors_[src].id + "->" + actors_[dst].id + ": port rates must be >= 1");
    if (initial_tokens < 0)
        throw ValidationError("channel " + actors_[src].id + "->" + actors_[dst].id +
                              ": initial tokens must be >= 0");
    Channel c{src, production, dst, consumption, initial_tokens, std::nullopt};
    channels_.push_back(c);
    try {
        set_capacity(channels_.size() - 1, capacity);
    } catch (...) {
        channels_.pop_back();
        throw;
    }
    return channels_.size() - 1;
}

std::optional<ActorId> Sdfg::find(const std::string &id) const
{
    for (ActorId a = 0; a < actors_.size(); ++a)
        if (actors_[a].id == id)
            return a;
    return std::nullopt;
}

void Sdfg::set_capacity(std::size_t channel, std::optional<std::int64_t> capacity)
{
    auto &c = channels_.at(channel);
    if (capacity && *capacity < min_capacity(c))
        throw InfeasibleError("channel " + actors_[c.src].id + "->" + actors_[c.dst].id + ": capacity " +
                              std::to_string(*capacity) + " below minimum " + std::to_string(min_capacity(c)));
    c.capacity = capacity;
}

std::int64_t min_capacity(const Channel &c)
{
    return std::max({c.production, c.consumption, c.initial_tokens});
}

std::int64_t capacity_quantum(const Channel &c)
{
    return std::gcd(c.production, c.consumption);
}

BufferAllocation buffer_allocation(const Sdfg &g)
{
    BufferAllocation alloc;
    for (const auto &c : g.channels())
        alloc.push_back(c.capacity);
    return alloc;
}

BufferAllocation min_buffer_allocation(const Sdfg &g)
{
    BufferAllocation alloc;
    for (const auto &c : g.channels())
        alloc.push_back(c.self_loop() ? std::nullopt : std::optional<std::int64_t>(min_capacity(c)));
    return alloc;
}

std::optional<std::int64_t> total_buffer(const Sdfg &g)
{
    std::int64_t sum = 0;
    for (const auto &c : g.channels()) {
        if (c.self_loop())
            continue;
        if (!c.capacity)
            return std::nullopt;
        sum += *c.capacity;
    }
    return sum;
}

Sdfg set_buffer_allocation(const Sdfg &g, const BufferAllocation &alloc)
{
    if (alloc.size() != g.channel_count())
        throw ValidationError("allocation has " + std::to_string(alloc.size()) + " entries for " +
                              std::to_string(g.channel_count()) + " channels");
    Sdfg out = g;
    for (std::size_t c = 0; c < alloc.size(); ++c)
        out.set_capacity(c, g.channels()[c].self_loop() ? std::nullopt : alloc[c]);
    return out;
}

Sdfg lift_to_sdfg(const ClusteredSnnGraph &cg, const LiftOptions &opts, std::vector<std::string> *warnings)
{
    if (opts.buffer_frames && *opts.buffer_frames < 1)
        throw ConfigError("buffer_frames must be >= 1");
    Sdfg g;
    for (const auto &cluster : cg.clusters)
        g.add_actor(cluster.id, opts.exec_time);
    for (const auto &e : cg.edges) {
        if (e.tokens <= 0) {
            if (warnings)
                warnings->push_back("edge " + cg.clusters[e.src].id + "->" + cg.clusters[e.dst].id +
                                    " carries no tokens; dropped");
            continue;
        }
        std::optional<std::int64_t> cap;
        if (opts.buffer_frames)
            cap = *opts.buffer_frames * e.tokens;
        g.add_channel(e.src, e.tokens, e.dst, e.tokens, 0, cap);
    }
    for (ActorId a = 0; a < g.actor_count(); ++a)
        g.add_channel(a, 1, a, 1, 1, std::nullopt);
    return g;
}

std::vector<std::size_t> weak_components(const Sdfg &g)
{
    const std::size_t n = g.actor_count();
    std::vector<std::vector<ActorId>> adj(n);
    for (const auto &c : g.channels()) {
        adj[c.src].push_back(c.dst);
        adj[c.dst].push_back(c.src);
    }
    std::vector<std::size_t> comp(n, n);
    std::size_t next = 0;
    for (ActorId s = 0; s < n; ++s) {
        if (comp[s] != n)
            continue;
        comp[s] = next;
        std::deque<ActorId> queue{s};
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto v : adj[u])
                if (comp[v] == n) {
                    comp[v] = next;
                    queue.push_back(v);
                }
        }
        ++next;
    }
    return comp;
}

namespace {

// Non-negative rational with overflow-checked arithmetic.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Ratio make(__int128 n, __int128 d)
    {
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) {
            auto t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
        if (n > lim || d > lim)
            throw ConsistencyError("repetition vector entries overflow 64-bit integers");
        return {static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
    }

    bool operator==(const Ratio &o) const { return num == o.num && den == o.den; }
};

} // namespace

RepetitionVector repetition_vector(const Sdfg &g)
{
    const std::size_t n = g.actor_count();
    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t c = 0; c < g.channel_count(); ++c) {
        incident[g.channels()[c].src].push_back(c);
        incident[g.channels()[c].dst].push_back(c);
    }

    // Fix one actor per component to 1 and propagate q(dst) = q(src) * p / c.
    std::vector<std::optional<Ratio>> rate(n);
    std::vector<std::vector<ActorId>> members;
    for (ActorId s = 0; s < n; ++s) {
        if (rate[s])
            continue;
        members.emplace_back();
        rate[s] = Ratio{1, 1};
        std::deque<ActorId> queue{s};
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            members.back().push_back(u);
            for (auto ci : incident[u]) {
                const auto &c = g.channels()[ci];
                const bool forward = c.src == u;
                const ActorId v = forward ? c.dst : c.src;
                const Ratio ru = *rate[u];
                const Ratio rv = forward
                                     ? Ratio::make(static_cast<__int128>(ru.num) * c.production,
                                                   static_cast<__int128>(ru.den) * c.consumption)
                                     : Ratio::make(static_cast<__int128>(ru.num) * c.consumption,
                                                   static_cast<__int128>(ru.den) * c.production);
                if (!rate[v]) {
                    rate[v] = rv;
                    queue.push_back(v);
                } else if (!(*rate[v] == rv)) {
                    throw ConsistencyError("inconsistent rates on channel " + g.actors()[c.src].id + " -" +
                                           std::to_string(c.production) + "/" + std::to_string(c.consumption) +
                                           "-> " + g.actors()[c.dst].id);
                }
            }
        }
    }

    RepetitionVector q;
    q.counts.assign(n, 0);
    for (const auto &comp : members) {
        __int128 l = 1;
        for (auto a : comp) {
            const std::int64_t d = rate[a]->den;
            l = (l / std::gcd(static_cast<std::int64_t>(l), d)) * d;
            if (l > std::numeric_limits<std::int64_t>::max())
                throw ConsistencyError("repetition vector entries overflow 64-bit integers");
        }
        std::int64_t common = 0;
        for (auto a : comp) {
            const __int128 v = static_cast<__int128>(rate[a]->num) * (l / rate[a]->den);
            if (v > std::numeric_limits<std::int64_t>::max())
                throw ConsistencyError("repetition vector entries overflow 64-bit integers");
            q.counts[a] = static_cast<std::int64_t>(v);
            common = std::gcd(common, q.counts[a]);
        }
        for (auto a : comp)
            q.counts[a] /= common;
    }
    return q;
}

DeadlockReport check_deadlock(const Sdfg &g)
{
    const auto q = repetition_vector(g);
    const std::size_t n = g.actor_count();
    std::vector<std::vector<std::size_t>> in(n), out(n);
    for (std::size_t c = 0; c < g.channel_count(); ++c) {
        out[g.channels()[c].src].push_back(c);
        in[g.channels()[c].dst].push_back(c);
    }
    std::vector<std::int64_t> tokens(g.channel_count());
    for (std::size_t c = 0; c < g.channel_count(); ++c)
        tokens[c] = g.channels()[c].initial_tokens;

    auto enabled = [&](ActorId a) {
        for (auto c : in[a])
            if (tokens[c] < g.channels()[c].consumption)
                return false;
        for (auto c : out[a]) {
            const auto &ch = g.channels()[c];
            if (ch.bounded() && *ch.capacity - tokens[c] < ch.production)
                return false;
        }
        return true;
    };

    std::vector<std::int64_t> left = q.counts;
    bool progress = true;
    while (progress) {
        progress = false;
        for (ActorId a = 0; a < n; ++a) {
            while (left[a] > 0 && enabled(a)) {
                for (auto c : in[a])
                    tokens[c] -= g.channels()[c].consumption;
                for (auto c : out[a])
                    tokens[c] += g.channels()[c].production;
                --left[a];
                progress = true;
            }
        }
    }

    DeadlockReport report;
    report.tokens = tokens;
    report.firings_left = left;
    for (ActorId a = 0; a < n; ++a)
        if (left[a] > 0)
            report.starving.push_back(a);
    report.deadlocked = !report.starving.empty();
    return report;
}

} // namespace snnmap
