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

#include "snnmap/execution.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "snnmap/error.hpp"

namespace snnmap {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x)
{
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t hash_values(const std::vector<std::int64_t> &v)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : v)
        h = mix(h, static_cast<std::uint64_t>(x));
    return h;
}

struct StateHash {
    std::size_t operator()(const std::vector<std::int64_t> &v) const
    {
        return static_cast<std::size_t>(hash_values(v));
    }
};

enum class Policy { self_timed, list_scheduling, static_order };

/// One discrete-event run of a (sub)graph.
class Engine {
  public:
    Engine(const Sdfg &g, std::vector<Time> exec, std::vector<Time> latency, std::vector<std::int64_t> q,
           std::vector<std::size_t> core, std::size_t core_count, const StaticOrderSchedule *schedules,
           std::size_t budget)
        : g_(g), exec_(std::move(exec)), latency_(std::move(latency)), q_(std::move(q)), core_(std::move(core)),
          core_count_(core_count), schedules_(schedules), budget_(budget)
    {
        policy_ = core_.empty() ? Policy::self_timed
                                : (schedules_ ? Policy::static_order : Policy::list_scheduling);
        const auto n = g_.actor_count();
        in_.resize(n);
        out_.resize(n);
        for (std::size_t c = 0; c < g_.channel_count(); ++c) {
            out_[g_.channels()[c].src].push_back(c);
            in_[g_.channels()[c].dst].push_back(c);
        }
        tokens_.resize(g_.channel_count());
        space_.resize(g_.channel_count(), 0);
        for (std::size_t c = 0; c < g_.channel_count(); ++c) {
            const auto &ch = g_.channels()[c];
            tokens_[c] = ch.initial_tokens;
            if (ch.bounded())
                space_[c] = *ch.capacity - ch.initial_tokens;
        }
        inflight_.resize(g_.channel_count());
        running_.resize(n);
        starts_.assign(n, 0);
        blocked_.assign(g_.channel_count(), 0);
        busy_.assign(core_count_, 0);
        ready_.resize(core_count_);
        queued_.assign(n, 0);
        cursor_.assign(core_count_, 0);
        log_.resize(core_count_);

        if (policy_ == Policy::self_timed) {
            for (ActorId a = 0; a < n; ++a) {
                bool bounded_out = false;
                for (auto c : out_[a])
                    bounded_out = bounded_out || g_.channels()[c].bounded();
                if (in_[a].empty() && !bounded_out)
                    throw Error("actor '" + g_.actors()[a].id +
                                "' has no input and no bounded output; its firing rate is unbounded");
            }
        }
    }

    TimedRun run()
    {
        std::unordered_map<std::vector<std::int64_t>, std::size_t, StateHash> seen;
        for (;;) {
            complete();
            arrive();
            start_phase();

            auto key = encode();
            if (auto it = seen.find(key); it != seen.end())
                return finish(it->second, key);
            if (seen.size() >= budget_)
                throw BudgetExceededError("no recurrent state within " + std::to_string(budget_) +
                                          " states (t = " + std::to_string(now_) + ")");
            seen.emplace(std::move(key), snapshots_.size());
            snapshots_.push_back(Snapshot{now_, starts_, blocked_, log_sizes()});

            const auto next = next_event();
            if (next == kNever)
                throw DeadlockError(describe_stall());
            charge_blocking(next - now_);
            now_ = next;
        }
    }

  private:
    static constexpr Time kNever = std::numeric_limits<Time>::max();

    struct Snapshot {
        Time now;
        std::vector<std::int64_t> starts;
        std::vector<Time> blocked;
        std::vector<std::size_t> log_sizes;
    };

    bool inputs_ready(ActorId a) const
    {
        for (auto c : in_[a])
            if (tokens_[c] < g_.channels()[c].consumption)
                return false;
        return true;
    }

    bool enabled(ActorId a) const
    {
        if (!inputs_ready(a))
            return false;
        for (auto c : out_[a]) {
            const auto &ch = g_.channels()[c];
            if (ch.bounded() && space_[c] < ch.production)
                return false;
        }
        return true;
    }

    bool waiting_on_space(std::size_t c) const
    {
        const auto &ch = g_.channels()[c];
        return ch.bounded() && space_[c] < ch.production && inputs_ready(ch.src);
    }

    // Charges `span` to every channel whose producer waits for space while
    // its consumer is not itself waiting for space further downstream;
    // channels that are only full because of back-pressure are not blamed.
    void charge_blocking(Time span)
    {
        std::vector<char> stuck(g_.actor_count(), 0);
        std::vector<std::size_t> waiting;
        for (std::size_t c = 0; c < g_.channel_count(); ++c)
            if (waiting_on_space(c)) {
                stuck[g_.channels()[c].src] = 1;
                waiting.push_back(c);
            }
        for (auto c : waiting)
            if (!stuck[g_.channels()[c].dst])
                blocked_[c] += span;
    }

    void start(ActorId a)
    {
        for (auto c : in_[a])
            tokens_[c] -= g_.channels()[c].consumption;
        for (auto c : out_[a])
            if (g_.channels()[c].bounded())
                space_[c] -= g_.channels()[c].production;
        running_[a].push_back(now_ + exec_[a]);
        ++starts_[a];
        if (!core_.empty()) {
            busy_[core_[a]] = 1;
            log_[core_[a]].push_back(a);
        }
    }

    void complete()
    {
        for (ActorId a = 0; a < g_.actor_count(); ++a) {
            while (!running_[a].empty() && running_[a].front() == now_) {
                running_[a].pop_front();
                for (auto c : out_[a]) {
                    const auto &ch = g_.channels()[c];
                    if (latency_[c] > 0) {
                        auto &q = inflight_[c];
                        const Time at = now_ + latency_[c];
                        if (!q.empty() && q.back().first == at)
                            q.back().second += ch.production;
                        else
                            q.emplace_back(at, ch.production);
                    } else {
                        tokens_[c] += ch.production;
                    }
                }
                for (auto c : in_[a])
                    if (g_.channels()[c].bounded())
                        space_[c] += g_.channels()[c].consumption;
                if (!core_.empty())
                    busy_[core_[a]] = 0;
            }
        }
    }

    void arrive()
    {
        for (std::size_t c = 0; c < inflight_.size(); ++c) {
            auto &q = inflight_[c];
            while (!q.empty() && q.front().first == now_) {
                tokens_[c] += q.front().second;
                q.pop_front();
            }
        }
    }

    void enqueue_ready()
    {
        for (ActorId a = 0; a < g_.actor_count(); ++a)
            if (!queued_[a] && enabled(a)) {
                ready_[core_[a]].push_back(a);
                queued_[a] = 1;
            }
    }

    void start_phase()
    {
        switch (policy_) {
        case Policy::self_timed:
            for (ActorId a = 0; a < g_.actor_count(); ++a)
                while (enabled(a))
                    start(a);
            break;
        case Policy::list_scheduling:
            enqueue_ready();
            for (std::size_t k = 0; k < core_count_; ++k) {
                if (busy_[k] || ready_[k].empty())
                    continue;
                const ActorId a = ready_[k].front();
                ready_[k].pop_front();
                queued_[a] = 0;
                start(a);
            }
            enqueue_ready();
            break;
        case Policy::static_order:
            for (std::size_t k = 0; k < core_count_; ++k) {
                if (busy_[k])
                    continue;
                const auto &s = schedules_->cores[k];
                const std::size_t t = s.transient.size();
                auto &pos = cursor_[k];
                if (pos >= t && s.cycle.empty())
                    continue;
                const ActorId a = pos < t ? s.transient[pos] : s.cycle[pos - t];
                if (!enabled(a))
                    continue;
                start(a);
                if (++pos >= t + s.cycle.size())
                    pos = t;
            }
            break;
        }
    }

    Time next_event() const
    {
        Time next = kNever;
        for (const auto &r : running_)
            if (!r.empty())
                next = std::min(next, r.front());
        for (const auto &q : inflight_)
            if (!q.empty())
                next = std::min(next, q.front().first);
        return next;
    }

    std::vector<std::int64_t> encode() const
    {
        std::vector<std::int64_t> v;
        v.reserve(2 * g_.channel_count() + 2 * g_.actor_count() + core_count_);
        for (auto t : tokens_)
            v.push_back(t);
        for (std::size_t c = 0; c < space_.size(); ++c)
            if (g_.channels()[c].bounded())
                v.push_back(space_[c]);
        for (const auto &r : running_) {
            v.push_back(static_cast<std::int64_t>(r.size()));
            for (auto end : r)
                v.push_back(end - now_);
        }
        for (std::size_t c = 0; c < inflight_.size(); ++c) {
            if (latency_[c] == 0)
                continue;
            v.push_back(static_cast<std::int64_t>(inflight_[c].size()));
            for (const auto &[at, count] : inflight_[c]) {
                v.push_back(at - now_);
                v.push_back(count);
            }
        }
        if (policy_ == Policy::list_scheduling)
            for (const auto &r : ready_) {
                v.push_back(static_cast<std::int64_t>(r.size()));
                for (auto a : r)
                    v.push_back(static_cast<std::int64_t>(a));
            }
        if (policy_ == Policy::static_order)
            for (auto pos : cursor_)
                v.push_back(static_cast<std::int64_t>(pos));
        return v;
    }

    std::vector<std::size_t> log_sizes() const
    {
        std::vector<std::size_t> s;
        s.reserve(log_.size());
        for (const auto &l : log_)
            s.push_back(l.size());
        return s;
    }

    std::string describe_stall() const
    {
        std::ostringstream os;
        os << "deadlock at t = " << now_ << ":";
        bool any = false;
        for (ActorId a = 0; a < g_.actor_count(); ++a) {
            for (auto c : in_[a]) {
                const auto &ch = g_.channels()[c];
                if (tokens_[c] < ch.consumption) {
                    os << " " << g_.actors()[a].id << " waits on " << g_.actors()[ch.src].id << "->"
                       << g_.actors()[ch.dst].id << " (" << tokens_[c] << "/" << ch.consumption << ")";
                    any = true;
                    break;
                }
            }
        }
        if (!any)
            os << " no actor can start (static-order cursors or buffer space)";
        return os.str();
    }

    TimedRun finish(std::size_t first, const std::vector<std::int64_t> &key)
    {
        const auto &s1 = snapshots_[first];
        const Time span = now_ - s1.now;
        const auto n = g_.actor_count();

        TimedRun run;
        auto &r = run.result;
        r.cycle_time = span;
        r.cycle_firings.resize(n);
        std::size_t best = n;
        for (ActorId a = 0; a < n; ++a) {
            const auto k = starts_[a] - s1.starts[a];
            r.cycle_firings[a] = k;
            if (k == 0)
                throw DeadlockError("actor '" + g_.actors()[a].id + "' never fires in the periodic regime");
            if (best == n || static_cast<__int128>(k) * q_[best] < static_cast<__int128>(r.cycle_firings[best]) * q_[a])
                best = a;
        }
        if (n == 0 || span <= 0)
            throw Error("empty graph has no throughput");
        const double k = static_cast<double>(r.cycle_firings[best]);
        const double qa = static_cast<double>(q_[best]);
        r.period = qa * static_cast<double>(span) / k;
        r.throughput = k / (qa * static_cast<double>(span));
        r.transient_length = std::numeric_limits<std::int64_t>::max();
        for (ActorId a = 0; a < n; ++a)
            r.transient_length = std::min(r.transient_length, s1.starts[a] / q_[a]);
        r.steady_state_hash = hash_values(key);
        r.space_blocked.resize(g_.channel_count());
        for (std::size_t c = 0; c < g_.channel_count(); ++c)
            r.space_blocked[c] = blocked_[c] - s1.blocked[c];

        if (policy_ == Policy::list_scheduling) {
            run.schedules.cores.resize(core_count_);
            for (std::size_t k2 = 0; k2 < core_count_; ++k2) {
                const auto cut = static_cast<std::ptrdiff_t>(s1.log_sizes[k2]);
                CoreSchedule s;
                s.transient.assign(log_[k2].begin(), log_[k2].begin() + cut);
                s.cycle.assign(log_[k2].begin() + cut, log_[k2].end());
                run.schedules.cores[k2] = compact_schedule(std::move(s));
            }
        }
        return run;
    }

    const Sdfg &g_;
    std::vector<Time> exec_;
    std::vector<Time> latency_;
    std::vector<std::int64_t> q_;
    std::vector<std::size_t> core_;
    std::size_t core_count_;
    const StaticOrderSchedule *schedules_;
    std::size_t budget_;
    Policy policy_;

    std::vector<std::vector<std::size_t>> in_, out_;
    Time now_ = 0;
    std::vector<std::int64_t> tokens_, space_;
    std::vector<std::deque<std::pair<Time, std::int64_t>>> inflight_;
    std::vector<std::deque<Time>> running_;
    std::vector<std::int64_t> starts_;
    std::vector<Time> blocked_;
    std::vector<char> busy_;
    std::vector<std::deque<ActorId>> ready_;
    std::vector<char> queued_;
    std::vector<std::size_t> cursor_;
    std::vector<std::vector<ActorId>> log_;
    std::vector<Snapshot> snapshots_;
};

// Strongly connected components over channels plus the reverse (space)
// edge of every bounded channel. Components are listed by smallest actor.
std::vector<std::vector<ActorId>> space_aware_sccs(const Sdfg &g)
{
    const std::size_t n = g.actor_count();
    std::vector<std::vector<ActorId>> fwd(n), rev(n);
    auto edge = [&](ActorId u, ActorId v) {
        fwd[u].push_back(v);
        rev[v].push_back(u);
    };
    for (const auto &c : g.channels()) {
        edge(c.src, c.dst);
        if (c.bounded())
            edge(c.dst, c.src);
    }
    // Kosaraju, iterative.
    std::vector<char> seen(n, 0);
    std::vector<ActorId> order;
    for (ActorId s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::vector<std::pair<ActorId, std::size_t>> stack{{s, 0}};
        seen[s] = 1;
        while (!stack.empty()) {
            auto &[u, i] = stack.back();
            if (i < fwd[u].size()) {
                const ActorId v = fwd[u][i++];
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.emplace_back(v, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    std::vector<std::size_t> comp(n, n);
    std::vector<std::vector<ActorId>> sccs;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] != n)
            continue;
        sccs.emplace_back();
        std::vector<ActorId> stack{*it};
        comp[*it] = sccs.size() - 1;
        while (!stack.empty()) {
            const ActorId u = stack.back();
            stack.pop_back();
            sccs.back().push_back(u);
            for (auto v : rev[u])
                if (comp[v] == n) {
                    comp[v] = sccs.size() - 1;
                    stack.push_back(v);
                }
        }
    }
    for (auto &s : sccs)
        std::sort(s.begin(), s.end());
    std::sort(sccs.begin(), sccs.end());
    return sccs;
}

void validate_schedules(const Sdfg &g, const ExecutionOptions &opts)
{
    const auto &s = *opts.schedules;
    if (s.cores.size() != opts.core_count)
        throw ValidationError("static-order schedule lists " + std::to_string(s.cores.size()) + " cores, expected " +
                              std::to_string(opts.core_count));
    std::vector<char> listed(g.actor_count(), 0);
    for (std::size_t k = 0; k < s.cores.size(); ++k) {
        for (const auto *part : {&s.cores[k].transient, &s.cores[k].cycle})
            for (auto a : *part) {
                if (a >= g.actor_count() || opts.actor_core[a] != k)
                    throw ValidationError("static-order schedule of core " + std::to_string(k) +
                                          " names an actor not bound to it");
            }
        for (auto a : s.cores[k].cycle)
            listed[a] = 1;
    }
    for (ActorId a = 0; a < g.actor_count(); ++a)
        if (!listed[a])
            throw ValidationError("actor '" + g.actors()[a].id + "' missing from its core's steady-state cycle");
}

} // namespace

CoreSchedule compact_schedule(CoreSchedule s)
{
    const std::size_t len = s.cycle.size();
    for (std::size_t p = 1; p < len; ++p) {
        if (len % p != 0)
            continue;
        bool periodic = true;
        for (std::size_t i = p; i < len && periodic; ++i)
            periodic = s.cycle[i] == s.cycle[i - p];
        if (periodic) {
            s.cycle.resize(p);
            break;
        }
    }
    while (!s.transient.empty() && !s.cycle.empty() && s.transient.back() == s.cycle.back()) {
        s.transient.pop_back();
        std::rotate(s.cycle.begin(), s.cycle.end() - 1, s.cycle.end());
    }
    return s;
}

TimedRun execute(const Sdfg &g, const ExecutionOptions &opts)
{
    const std::size_t n = g.actor_count();
    if (n == 0)
        throw ValidationError("cannot execute an empty graph");
    std::vector<Time> exec(n);
    for (ActorId a = 0; a < n; ++a)
        exec[a] = opts.exec_time.empty() ? g.actors()[a].exec_time : opts.exec_time.at(a);
    for (auto t : exec)
        if (t < 1)
            throw ValidationError("execution times must be >= 1");
    std::vector<Time> latency(g.channel_count(), 0);
    if (!opts.channel_latency.empty()) {
        if (opts.channel_latency.size() != g.channel_count())
            throw ValidationError("channel_latency must list every channel");
        for (std::size_t c = 0; c < g.channel_count(); ++c) {
            if (opts.channel_latency[c] < 0)
                throw ValidationError("channel latency must be >= 0");
            latency[c] = g.channels()[c].self_loop() ? 0 : opts.channel_latency[c];
        }
    }
    const auto q = repetition_vector(g).counts;

    if (!opts.actor_core.empty()) {
        if (opts.actor_core.size() != n)
            throw ValidationError("actor_core must bind every actor");
        for (auto k : opts.actor_core)
            if (k >= opts.core_count)
                throw ValidationError("actor bound to a core index out of range");
        if (opts.schedules)
            validate_schedules(g, opts);
        // Bound actors cannot be analyzed component by component (cores are
        // shared), so an unbounded channel between components would let
        // tokens pile up without end.
        std::vector<std::size_t> comp(n);
        const auto sccs = space_aware_sccs(g);
        for (std::size_t i = 0; i < sccs.size(); ++i)
            for (auto a : sccs[i])
                comp[a] = i;
        for (const auto &ch : g.channels())
            if (!ch.capacity && comp[ch.src] != comp[ch.dst])
                throw ValidationError("channel " + g.actors()[ch.src].id + "->" + g.actors()[ch.dst].id +
                                      " needs a capacity for mapped execution");
        Engine engine(g, exec, latency, q, opts.actor_core, opts.core_count, opts.schedules, opts.state_budget);
        return engine.run();
    }
    if (opts.schedules)
        throw ValidationError("static-order schedules need a core binding");

    TimedRun combined;
    auto &r = combined.result;
    r.cycle_firings.assign(n, 0);
    r.space_blocked.assign(g.channel_count(), 0);
    std::uint64_t hash = 0x84222325cbf29ce4ULL;
    bool any = false;
    for (const auto &scc : space_aware_sccs(g)) {
        std::vector<std::size_t> local(n, n);
        Sdfg sub;
        std::vector<Time> sub_exec;
        std::vector<std::int64_t> sub_q;
        for (auto a : scc) {
            local[a] = sub.add_actor(g.actors()[a].id, exec[a]);
            sub_exec.push_back(exec[a]);
            sub_q.push_back(q[a]);
        }
        std::vector<std::size_t> channel_map;
        std::vector<Time> sub_latency;
        for (std::size_t c = 0; c < g.channel_count(); ++c) {
            const auto &ch = g.channels()[c];
            if (local[ch.src] == n || local[ch.dst] == n)
                continue;
            sub.add_channel(local[ch.src], ch.production, local[ch.dst], ch.consumption, ch.initial_tokens,
                            ch.capacity);
            channel_map.push_back(c);
            sub_latency.push_back(latency[c]);
        }
        if (channel_map.empty())
            continue; // unconstrained actor: no bound on its rate
        Engine engine(sub, sub_exec, sub_latency, sub_q, {}, 0, nullptr, opts.state_budget);
        const auto part = engine.run().result;
        if (!any || part.throughput < r.throughput) {
            r.throughput = part.throughput;
            r.period = part.period;
            r.cycle_time = part.cycle_time;
        }
        r.transient_length = any ? std::max(r.transient_length, part.transient_length) : part.transient_length;
        for (std::size_t i = 0; i < scc.size(); ++i)
            r.cycle_firings[scc[i]] = part.cycle_firings[i];
        for (std::size_t i = 0; i < channel_map.size(); ++i)
            r.space_blocked[channel_map[i]] = part.space_blocked[i];
        hash = mix(hash, part.steady_state_hash);
        any = true;
    }
    if (!any)
        throw Error("throughput is unbounded: no actor lies on a cycle or bounded channel");
    r.steady_state_hash = hash;
    return combined;
}

ThroughputResult self_timed_throughput(const Sdfg &g, const ExecutionOptions &opts)
{
    return execute(g, opts).result;
}

} // namespace snnmap
