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

#include "snnmap/dse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "snnmap/error.hpp"
#include "snnmap/parallel.hpp"

namespace snnmap {

namespace {

constexpr double kRelTol = 1e-12;

bool improves(double candidate, double reference) { return candidate > reference * (1.0 + kRelTol); }

std::string describe_stall(const Sdfg &g, const DeadlockReport &r, const std::string &prefix)
{
    std::ostringstream os;
    os << prefix << "; starving:";
    for (auto a : r.starving)
        os << " " << g.actors()[a].id << "(" << r.firings_left[a] << " left)";
    return os.str();
}

class Sweeper {
  public:
    Sweeper(const Sdfg &g, const SweepConfig &cfg, const SweepMapping *mapping, std::size_t budget)
        : g_(g), cfg_(cfg), mapping_(mapping), budget_(budget)
    {
    }

    SweepPoint evaluate(const BufferAllocation &alloc, const SweepPoint *prev) const
    {
        SweepPoint pt;
        pt.allocation = alloc;
        const Sdfg gb = set_buffer_allocation(g_, alloc);
        pt.total_buffer = total_buffer(gb).value_or(0);
        if (!mapping_) {
            ExecutionOptions opts;
            opts.state_budget = budget_;
            pt.result = self_timed_throughput(gb, opts);
            return pt;
        }

        MappingProblem problem{gb, mapping_->hardware, mapping_->footprint, mapping_->slowdown, budget_};
        std::optional<MappingSolution> fresh;
        try {
            if (mapping_->fixed)
                fresh = solve_fixed_mapping(problem, *mapping_->fixed);
            else if (cfg_.remap || !prev)
                fresh = search_mapping(problem, mapping_->swarm, mapping_->jobs,
                                       prev ? &prev->solution->mapping : nullptr);
            else
                fresh = solve_fixed_mapping(problem, prev->solution->mapping);
        } catch (const DeadlockError &) {
            if (!prev)
                throw;
        }
        // Replaying the previous static order can only gain from the extra
        // space, which keeps the sweep series non-decreasing even when list
        // scheduling reacts badly to it.
        if (prev) {
            try {
                auto replay = evaluate_static_order(problem, prev->solution->mapping, prev->solution->schedules);
                if (!fresh || replay.throughput > fresh->result.throughput) {
                    MappingSolution kept = *prev->solution;
                    kept.result = replay;
                    kept.allocation = alloc;
                    kept.evaluations = 1;
                    fresh = std::move(kept);
                }
            } catch (const DeadlockError &) {
            }
        }
        if (!fresh)
            throw DeadlockError("no schedulable binding at this allocation");
        fresh->allocation = alloc;
        pt.result = fresh->result;
        pt.solution = std::move(fresh);
        return pt;
    }

    double upper_bound() const
    {
        Sdfg open = set_buffer_allocation(g_, BufferAllocation(g_.channel_count()));
        ExecutionOptions opts;
        opts.state_budget = budget_;
        if (mapping_) {
            Time fastest = std::numeric_limits<Time>::max();
            for (const auto &c : mapping_->hardware.cores())
                fastest = std::min(fastest, c.exec_time);
            opts.exec_time.assign(g_.actor_count(), fastest * mapping_->slowdown);
        }
        try {
            return self_timed_throughput(open, opts).throughput;
        } catch (const DeadlockError &) {
            throw;
        } catch (const BudgetExceededError &) {
            throw;
        } catch (const Error &) {
            return std::numeric_limits<double>::infinity();
        }
    }

    // Smallest allocation min + k * quantum (uniform k) that completes an
    // iteration without deadlock.
    BufferAllocation starting_allocation(std::optional<std::string> &why) const
    {
        auto alloc = min_buffer_allocation(g_);
        auto report = check_deadlock(set_buffer_allocation(g_, alloc));
        if (!report.deadlocked)
            return alloc;
        why = describe_stall(g_, report, "minimum allocation deadlocks");
        const auto open = check_deadlock(set_buffer_allocation(g_, BufferAllocation(g_.channel_count())));
        if (open.deadlocked)
            throw DeadlockError(describe_stall(g_, open, "graph deadlocks even with unbounded buffers"));
        const auto q = repetition_vector(g_).counts;
        for (std::int64_t k = 1;; ++k) {
            bool saturated = true;
            for (std::size_t c = 0; c < g_.channel_count(); ++c) {
                const auto &ch = g_.channels()[c];
                if (ch.self_loop())
                    continue;
                alloc[c] = min_capacity(ch) + k * capacity_quantum(ch);
                saturated = saturated && *alloc[c] >= ch.initial_tokens + q[ch.src] * ch.production + min_capacity(ch);
            }
            if (!check_deadlock(set_buffer_allocation(g_, alloc)).deadlocked)
                return alloc;
            if (saturated)
                throw DeadlockError("no uniform buffer enlargement avoids deadlock");
        }
    }

    SweepResult greedy() const
    {
        SweepResult out;
        out.upper_bound = upper_bound();
        const auto start = starting_allocation(out.min_deadlock);
        out.points.push_back(evaluate(start, nullptr));
        double best = out.points.back().result.throughput;
        std::size_t stale = 0;
        for (std::size_t step = 0; step < cfg_.max_steps; ++step) {
            const SweepPoint &cur = out.points.back();
            if (cur.result.throughput >= out.upper_bound * (1.0 - kRelTol))
                break;
            std::optional<std::size_t> bottleneck;
            for (std::size_t c = 0; c < g_.channel_count(); ++c) {
                if (!g_.channels()[c].bounded() && !cur.allocation[c])
                    continue;
                const Time b = cur.result.space_blocked[c];
                if (b > 0 && (!bottleneck || b > cur.result.space_blocked[*bottleneck]))
                    bottleneck = c;
            }
            if (!bottleneck)
                break;
            auto alloc = cur.allocation;
            *alloc[*bottleneck] += capacity_quantum(g_.channels()[*bottleneck]);
            auto next = evaluate(alloc, &cur);
            const double t = next.result.throughput;
            out.points.push_back(std::move(next));
            if (improves(t, best)) {
                best = t;
                stale = 0;
            } else if (++stale >= cfg_.plateau) {
                break;
            }
        }
        return out;
    }

    SweepResult exhaustive() const
    {
        std::vector<std::size_t> chans;
        for (std::size_t c = 0; c < g_.channel_count(); ++c)
            if (!g_.channels()[c].self_loop())
                chans.push_back(c);
        if (chans.size() > 5)
            throw ConfigError("exhaustive sweep supports at most 5 channels, graph has " +
                              std::to_string(chans.size()));
        SweepResult out;
        out.upper_bound = upper_bound();
        std::vector<std::int64_t> level(chans.size(), 0);
        for (;;) {
            auto alloc = min_buffer_allocation(g_);
            for (std::size_t i = 0; i < chans.size(); ++i) {
                const auto &ch = g_.channels()[chans[i]];
                alloc[chans[i]] = min_capacity(ch) + level[i] * capacity_quantum(ch);
            }
            if (!check_deadlock(set_buffer_allocation(g_, alloc)).deadlocked) {
                try {
                    out.points.push_back(evaluate(alloc, nullptr));
                } catch (const DeadlockError &) {
                }
            }
            std::size_t i = chans.size();
            while (i > 0 && ++level[i - 1] == cfg_.levels)
                level[--i] = 0;
            if (i == 0)
                break;
        }
        std::stable_sort(out.points.begin(), out.points.end(),
                         [](const SweepPoint &a, const SweepPoint &b) { return a.total_buffer < b.total_buffer; });
        return out;
    }

  private:
    const Sdfg &g_;
    const SweepConfig &cfg_;
    const SweepMapping *mapping_;
    std::size_t budget_;
};

} // namespace

void SweepConfig::validate() const
{
    if (plateau < 1)
        throw ConfigError("sweep plateau must be >= 1");
    if (levels < 1)
        throw ConfigError("exhaustive levels must be >= 1");
}

SweepResult sweep_buffers(const Sdfg &g, const SweepConfig &cfg, const SweepMapping *mapping,
                          std::size_t state_budget)
{
    cfg.validate();
    if (g.actor_count() == 0)
        throw ValidationError("cannot sweep an empty graph");
    repetition_vector(g);
    Sweeper s(g, cfg, mapping, state_budget);
    return cfg.exhaustive ? s.exhaustive() : s.greedy();
}

bool dominates(const DesignPoint &a, const DesignPoint &b)
{
    return a.throughput >= b.throughput && a.total_buffer <= b.total_buffer &&
           (a.throughput > b.throughput || a.total_buffer < b.total_buffer);
}

ParetoFront pareto_filter(const std::vector<DesignPoint> &points)
{
    std::vector<DesignPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](const DesignPoint &a, const DesignPoint &b) {
        return std::tuple(a.total_buffer, -a.throughput, a.round, a.step) <
               std::tuple(b.total_buffer, -b.throughput, b.round, b.step);
    });
    ParetoFront front;
    for (const auto &p : sorted)
        if (front.points.empty() || p.throughput > front.points.back().throughput)
            front.points.push_back(p);
    return front;
}

std::optional<DesignPoint> min_buffer_for_throughput(const ParetoFront &front, double fraction)
{
    if (!(fraction > 0.0) || fraction > 1.0)
        throw ConfigError("throughput fraction must lie in (0, 1]");
    if (front.points.empty())
        return std::nullopt;
    double peak = 0.0;
    for (const auto &p : front.points)
        peak = std::max(peak, p.throughput);
    std::optional<DesignPoint> best;
    for (const auto &p : front.points)
        if (p.throughput >= fraction * peak && (!best || p.total_buffer < best->total_buffer))
            best = p;
    return best;
}

void FlowConfig::validate() const
{
    if (eta < 1)
        throw ConfigError("eta must be >= 1");
    if (!(delta_min >= 0))
        throw ConfigError("delta_min must be >= 0");
    if (limits.dim < 1)
        throw ConfigError("crossbar dimension must be >= 1");
    if (slowdown < 1)
        throw ConfigError("slowdown must be >= 1");
    if (jobs < 1)
        throw ConfigError("jobs must be >= 1");
    if (state_budget < 1)
        throw ConfigError("state budget must be >= 1");
    swarm.validate();
    sweep.validate();
}

FlowResult run_design_flow(const SnnGraph &g, const HardwareGraph &hw, const FlowConfig &cfg)
{
    cfg.validate();
    if (hw.core_count() == 0)
        throw InfeasibleError("hardware has no cores");
    if (g.neuron_count() == 0)
        throw ValidationError("network has no neurons");

    auto partitions = iterate_partitions(g, cfg.limits, cfg.eta, cfg.delta_min, cfg.seed, cfg.jobs);
    Time fastest = std::numeric_limits<Time>::max();
    for (const auto &c : hw.cores())
        fastest = std::min(fastest, c.exec_time);

    FlowResult out;
    out.rounds.resize(partitions.size());
    const int inner_jobs = partitions.size() > 1 ? 1 : cfg.jobs;
    parallel_for(partitions.size(), cfg.jobs, [&](std::size_t r) {
        auto &o = out.rounds[r];
        o.round = r;
        o.seed = partitions[r].seed;
        o.partition = std::move(partitions[r]);
        try {
            LiftOptions lift;
            lift.exec_time = fastest;
            o.sdfg = lift_to_sdfg(o.partition.clustered, lift, &o.warnings);
            SweepMapping sm;
            sm.hardware = hw;
            sm.footprint = cluster_footprints(o.partition.clustered);
            sm.slowdown = cfg.slowdown;
            sm.swarm = cfg.swarm;
            sm.swarm.seed = derive_seed(o.seed, 1);
            sm.jobs = inner_jobs;
            o.sweep = sweep_buffers(o.sdfg, cfg.sweep, &sm, cfg.state_budget);
        } catch (const BudgetExceededError &e) {
            o.status = std::string("budget exceeded: ") + e.what();
            o.error = std::current_exception();
        } catch (const Error &e) {
            o.status = e.what();
            o.error = std::current_exception();
        }
    });

    std::vector<DesignPoint> running;
    for (const auto &o : out.rounds) {
        if (o.ok()) {
            for (std::size_t s = 0; s < o.sweep.points.size(); ++s) {
                const DesignPoint p{o.sweep.points[s].result.throughput, o.sweep.points[s].total_buffer, o.round, s};
                out.points.push_back(p);
                running.push_back(p);
            }
        } else {
            try {
                std::rethrow_exception(o.error);
            } catch (const BudgetExceededError &) {
                out.budget_exceeded = true;
            } catch (...) {
            }
        }
        running = pareto_filter(running).points;
        out.progressive.push_back(ParetoFront{running});
    }
    out.front = pareto_filter(out.points);
    if (std::none_of(out.rounds.begin(), out.rounds.end(), [](const RoundOutcome &o) { return o.ok(); }))
        std::rethrow_exception(out.rounds.front().error);
    return out;
}

} // namespace snnmap
