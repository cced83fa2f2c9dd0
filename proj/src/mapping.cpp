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

#include "snnmap/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "snnmap/error.hpp"
#include "snnmap/parallel.hpp"

namespace snnmap {

namespace {

using Routes = std::vector<std::vector<std::optional<Time>>>;

struct CoreLoad {
    std::int64_t in_connections = 0;
    std::int64_t out_connections = 0;
    std::int64_t in_tokens = 0;
    std::int64_t out_tokens = 0;
    std::int64_t unroutable = 0; // inter-core channels touching this core with no route
};

std::int64_t over(std::int64_t used, std::int64_t cap)
{
    return cap == kUnlimited ? 0 : std::max<std::int64_t>(0, used - cap);
}

std::vector<CoreLoad> core_loads(const MappingProblem &p, const MappingMatrix &m, const std::vector<std::int64_t> &q,
                                 const Routes &routes)
{
    std::vector<CoreLoad> load(p.hardware.core_count());
    for (const auto &ch : p.sdfg.channels()) {
        if (ch.self_loop())
            continue;
        const auto cs = m.core_of[ch.src], cd = m.core_of[ch.dst];
        if (cs == cd)
            continue;
        const std::int64_t tokens = q[ch.src] * ch.production;
        load[cs].out_connections += 1;
        load[cd].in_connections += 1;
        load[cs].out_tokens += tokens;
        load[cd].in_tokens += tokens;
        if (!routes[cs][cd]) {
            load[cs].unroutable += 1;
            load[cd].unroutable += 1;
        }
    }
    return load;
}

std::int64_t core_excess(const Core &core, const CoreLoad &l)
{
    return over(l.in_connections, core.in_connections) + over(l.out_connections, core.out_connections) +
           over(l.in_tokens, core.in_bandwidth) + over(l.out_tokens, core.out_bandwidth) + l.unroutable;
}

std::int64_t total_excess(const MappingProblem &p, const std::vector<CoreLoad> &load)
{
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < load.size(); ++k)
        sum += core_excess(p.hardware.cores()[k], load[k]);
    return sum;
}

bool fits(const MappingProblem &p, ActorId a, std::size_t k)
{
    if (p.footprint.empty())
        return true;
    const auto dim = static_cast<std::size_t>(p.hardware.cores()[k].crossbar_dim);
    return p.footprint[a].neurons <= dim && p.footprint[a].fan_in <= dim;
}

void check_shape(const MappingProblem &p, const MappingMatrix &m)
{
    if (m.core_of.size() != p.sdfg.actor_count())
        throw ValidationError("binding lists " + std::to_string(m.core_of.size()) + " clusters, graph has " +
                              std::to_string(p.sdfg.actor_count()));
    for (auto k : m.core_of)
        if (k >= p.hardware.core_count())
            throw ValidationError("binding refers to core index " + std::to_string(k) + " out of range");
    if (!p.footprint.empty() && p.footprint.size() != p.sdfg.actor_count())
        throw ValidationError("footprint must list every cluster");
}

} // namespace

std::vector<ClusterFootprint> cluster_footprints(const ClusteredSnnGraph &cg)
{
    std::vector<ClusterFootprint> out;
    out.reserve(cg.clusters.size());
    for (const auto &c : cg.clusters)
        out.push_back({c.neurons.size(), c.fan_in});
    return out;
}

std::string mapping_violation(const MappingProblem &p, const MappingMatrix &m)
{
    check_shape(p, m);
    for (ActorId a = 0; a < p.sdfg.actor_count(); ++a)
        if (!fits(p, a, m.core_of[a]))
            return "cluster '" + p.sdfg.actors()[a].id + "' exceeds the crossbar of core '" +
                   p.hardware.cores()[m.core_of[a]].id + "'";
    const auto q = repetition_vector(p.sdfg).counts;
    const auto routes = p.hardware.route_latencies();
    const auto load = core_loads(p, m, q, routes);
    for (std::size_t k = 0; k < load.size(); ++k) {
        const auto &core = p.hardware.cores()[k];
        const auto &l = load[k];
        const std::string name = "core '" + core.id + "'";
        if (l.unroutable)
            return name + " exchanges tokens with a core it has no route to";
        if (over(l.in_connections, core.in_connections))
            return name + ": " + std::to_string(l.in_connections) + " incoming connections exceed " +
                   std::to_string(core.in_connections);
        if (over(l.out_connections, core.out_connections))
            return name + ": " + std::to_string(l.out_connections) + " outgoing connections exceed " +
                   std::to_string(core.out_connections);
        if (over(l.in_tokens, core.in_bandwidth))
            return name + ": " + std::to_string(l.in_tokens) + " incoming tokens per iteration exceed " +
                   std::to_string(core.in_bandwidth);
        if (over(l.out_tokens, core.out_bandwidth))
            return name + ": " + std::to_string(l.out_tokens) + " outgoing tokens per iteration exceed " +
                   std::to_string(core.out_bandwidth);
    }
    return {};
}

MappingMatrix decode_position(const MappingProblem &p, std::span<const double> theta)
{
    const std::size_t n = p.sdfg.actor_count(), t = p.hardware.core_count();
    if (t == 0)
        throw InfeasibleError("hardware has no cores");
    if (theta.size() != n * t)
        throw ValidationError("position has " + std::to_string(theta.size()) + " components, expected " +
                              std::to_string(n * t));
    auto score = [&](ActorId a, std::size_t k) { return theta[a * t + k]; };

    MappingMatrix m;
    m.core_of.resize(n);
    for (ActorId a = 0; a < n; ++a) {
        std::optional<std::size_t> best;
        for (std::size_t k = 0; k < t; ++k)
            if (fits(p, a, k) && (!best || score(a, k) > score(a, *best)))
                best = k;
        if (!best)
            throw InfeasibleError("cluster '" + p.sdfg.actors()[a].id + "' fits no core's crossbar");
        m.core_of[a] = *best;
    }

    const auto q = repetition_vector(p.sdfg).counts;
    const auto routes = p.hardware.route_latencies();
    auto excess = [&](const MappingMatrix &mm) { return total_excess(p, core_loads(p, mm, q, routes)); };

    for (std::int64_t current = excess(m); current > 0; current = excess(m)) {
        const auto load = core_loads(p, m, q, routes);
        bool moved = false;
        for (std::size_t c = 0; c < t && !moved; ++c) {
            if (core_excess(p.hardware.cores()[c], load[c]) == 0)
                continue;
            std::vector<ActorId> residents;
            for (ActorId a = 0; a < n; ++a)
                if (m.core_of[a] == c)
                    residents.push_back(a);
            std::stable_sort(residents.begin(), residents.end(),
                             [&](ActorId x, ActorId y) { return score(x, c) < score(y, c); });
            for (auto a : residents) {
                std::vector<std::size_t> targets;
                for (std::size_t k = 0; k < t; ++k)
                    if (k != c && fits(p, a, k))
                        targets.push_back(k);
                std::stable_sort(targets.begin(), targets.end(),
                                 [&](std::size_t x, std::size_t y) { return score(a, x) > score(a, y); });
                for (auto k : targets) {
                    MappingMatrix trial = m;
                    trial.core_of[a] = k;
                    if (excess(trial) < current) {
                        m = std::move(trial);
                        moved = true;
                        break;
                    }
                }
                if (moved)
                    break;
            }
        }
        if (!moved)
            throw InfeasibleError("no single cluster move reduces the core limit overrun (" +
                                  std::to_string(current) + " over)");
    }
    return m;
}

ExecutionOptions mapped_execution(const MappingProblem &p, const MappingMatrix &m)
{
    check_shape(p, m);
    if (p.slowdown < 1)
        throw ConfigError("slowdown must be >= 1");
    const auto routes = p.hardware.route_latencies();
    ExecutionOptions opts;
    opts.actor_core = m.core_of;
    opts.core_count = p.hardware.core_count();
    opts.state_budget = p.state_budget;
    opts.exec_time.resize(p.sdfg.actor_count());
    for (ActorId a = 0; a < p.sdfg.actor_count(); ++a)
        opts.exec_time[a] = p.hardware.cores()[m.core_of[a]].exec_time * p.slowdown;
    opts.channel_latency.resize(p.sdfg.channel_count(), 0);
    for (std::size_t c = 0; c < p.sdfg.channel_count(); ++c) {
        const auto &ch = p.sdfg.channels()[c];
        const auto &route = routes[m.core_of[ch.src]][m.core_of[ch.dst]];
        if (!route)
            throw InfeasibleError("no route from core '" + p.hardware.cores()[m.core_of[ch.src]].id + "' to core '" +
                                  p.hardware.cores()[m.core_of[ch.dst]].id + "'");
        opts.channel_latency[c] = *route;
    }
    return opts;
}

TimedRun build_schedules(const MappingProblem &p, const MappingMatrix &m)
{
    if (auto why = mapping_violation(p, m); !why.empty())
        throw InfeasibleError(why);
    return execute(p.sdfg, mapped_execution(p, m));
}

ThroughputResult evaluate_static_order(const MappingProblem &p, const MappingMatrix &m,
                                       const StaticOrderSchedule &schedules)
{
    if (auto why = mapping_violation(p, m); !why.empty())
        throw InfeasibleError(why);
    auto opts = mapped_execution(p, m);
    opts.schedules = &schedules;
    return execute(p.sdfg, opts).result;
}

double mapping_fitness(const MappingProblem &p, const MappingMatrix &m)
{
    if (!mapping_violation(p, m).empty())
        return 0.0;
    try {
        return execute(p.sdfg, mapped_execution(p, m)).result.throughput;
    } catch (const DeadlockError &) {
        return 0.0;
    } catch (const InfeasibleError &) {
        return 0.0;
    }
}

void SwarmConfig::validate() const
{
    if (particles < 1)
        throw ConfigError("swarm needs at least one particle");
    if (iterations < 1)
        throw ConfigError("swarm needs at least one iteration");
    if (!(phi1 >= 0) || !(phi2 >= 0))
        throw ConfigError("acceleration constants must be >= 0");
    if (!(v_max > 0) || !std::isfinite(v_max))
        throw ConfigError("v_max must be a positive finite number");
    if (inertia && !std::isfinite(*inertia))
        throw ConfigError("inertia must be finite");
}

SwarmState init_swarm(std::size_t dims, const SwarmConfig &cfg, const BatchFitness &fitness,
                      const std::vector<std::vector<double>> &seeds)
{
    cfg.validate();
    SwarmState s;
    s.rng.seed(cfg.seed);
    s.particles.resize(cfg.particles);
    for (std::size_t i = 0; i < cfg.particles; ++i) {
        auto &pt = s.particles[i];
        pt.position.resize(dims);
        pt.velocity.resize(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            pt.position[d] = uniform_unit(s.rng);
            pt.velocity[d] = uniform_real(s.rng, -cfg.v_max, cfg.v_max);
        }
        if (i < seeds.size()) {
            if (seeds[i].size() != dims)
                throw ValidationError("seed position has the wrong dimension");
            for (std::size_t d = 0; d < dims; ++d)
                pt.position[d] = std::clamp(seeds[i][d], 0.0, 1.0);
        }
    }
    std::vector<std::vector<double>> positions;
    for (const auto &pt : s.particles)
        positions.push_back(pt.position);
    const auto f = fitness(positions);
    for (std::size_t i = 0; i < cfg.particles; ++i) {
        auto &pt = s.particles[i];
        pt.best_position = pt.position;
        pt.best_fitness = f[i];
        if (i == 0 || f[i] > s.best_fitness) {
            s.best_fitness = f[i];
            s.best_position = pt.position;
        }
    }
    s.best_history.push_back(s.best_fitness);
    return s;
}

void pso_step(SwarmState &s, const SwarmConfig &cfg, const BatchFitness &fitness)
{
    const double w = cfg.inertia.value_or(1.0);
    for (auto &pt : s.particles) {
        for (std::size_t d = 0; d < pt.position.size(); ++d) {
            const double r1 = cfg.stochastic ? uniform_unit(s.rng) : 1.0;
            const double r2 = cfg.stochastic ? uniform_unit(s.rng) : 1.0;
            double v = w * pt.velocity[d] + cfg.phi1 * r1 * (pt.best_position[d] - pt.position[d]) +
                       cfg.phi2 * r2 * (s.best_position[d] - pt.position[d]);
            v = std::clamp(v, -cfg.v_max, cfg.v_max);
            pt.velocity[d] = v;
            pt.position[d] = std::clamp(pt.position[d] + v, 0.0, 1.0);
        }
    }
    std::vector<std::vector<double>> positions;
    for (const auto &pt : s.particles)
        positions.push_back(pt.position);
    const auto f = fitness(positions);
    for (std::size_t i = 0; i < s.particles.size(); ++i) {
        auto &pt = s.particles[i];
        if (f[i] > pt.best_fitness) {
            pt.best_fitness = f[i];
            pt.best_position = pt.position;
        }
        if (pt.best_fitness > s.best_fitness) {
            s.best_fitness = pt.best_fitness;
            s.best_position = pt.best_position;
        }
    }
    s.best_history.push_back(s.best_fitness);
}

MappingSolution solve_fixed_mapping(const MappingProblem &p, const MappingMatrix &m)
{
    auto run = build_schedules(p, m);
    MappingSolution sol;
    sol.mapping = m;
    sol.schedules = std::move(run.schedules);
    sol.result = std::move(run.result);
    sol.best_history = {sol.result.throughput};
    sol.evaluations = 1;
    sol.allocation = buffer_allocation(p.sdfg);
    return sol;
}

MappingSolution search_mapping(const MappingProblem &p, const SwarmConfig &cfg, int jobs,
                               const MappingMatrix *incumbent)
{
    cfg.validate();
    const std::size_t n = p.sdfg.actor_count(), t = p.hardware.core_count();
    if (n == 0)
        throw ValidationError("cannot map an empty graph");
    if (t == 0)
        throw InfeasibleError("hardware has no cores");
    repetition_vector(p.sdfg); // surface inconsistency before searching

    std::map<std::vector<std::size_t>, double> cache;
    std::size_t evaluations = 0;
    BatchFitness fitness = [&](const std::vector<std::vector<double>> &positions) {
        std::vector<std::optional<MappingMatrix>> decoded(positions.size());
        std::vector<MappingMatrix> todo;
        for (std::size_t i = 0; i < positions.size(); ++i) {
            try {
                decoded[i] = decode_position(p, positions[i]);
            } catch (const InfeasibleError &) {
                continue;
            }
            if (!cache.count(decoded[i]->core_of) &&
                std::find(todo.begin(), todo.end(), *decoded[i]) == todo.end())
                todo.push_back(*decoded[i]);
        }
        std::vector<double> values(todo.size());
        parallel_for(todo.size(), jobs, [&](std::size_t i) { values[i] = mapping_fitness(p, todo[i]); });
        for (std::size_t i = 0; i < todo.size(); ++i)
            cache.emplace(todo[i].core_of, values[i]);
        evaluations += todo.size();
        std::vector<double> out(positions.size(), 0.0);
        for (std::size_t i = 0; i < positions.size(); ++i)
            if (decoded[i])
                out[i] = cache.at(decoded[i]->core_of);
        return out;
    };

    std::vector<std::vector<double>> seeds;
    if (incumbent) {
        check_shape(p, *incumbent);
        std::vector<double> onehot(n * t, 0.0);
        for (ActorId a = 0; a < n; ++a)
            onehot[a * t + incumbent->core_of[a]] = 1.0;
        seeds.push_back(std::move(onehot));
    }

    auto swarm = init_swarm(n * t, cfg, fitness, seeds);
    for (std::size_t it = 0; it < cfg.iterations; ++it)
        pso_step(swarm, cfg, fitness);

    const auto best = decode_position(p, swarm.best_position);
    auto sol = solve_fixed_mapping(p, best); // throws the deadlock/infeasibility if nothing worked
    if (!(sol.result.throughput > 0))
        throw DeadlockError("no binding reaches a positive throughput");
    sol.best_history = std::move(swarm.best_history);
    sol.evaluations = evaluations;
    return sol;
}

} // namespace snnmap
