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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "snnmap/dse.hpp"
#include "snnmap/error.hpp"
#include "snnmap/execution.hpp"
#include "snnmap/io.hpp"
#include "snnmap/partition.hpp"
#include "snnmap/sdfg.hpp"

namespace py = pybind11;
using namespace snnmap;

namespace {

py::dict stats_of(const std::string &snn_json)
{
    const auto g = parse_snn(snn_json);
    const auto st = compute_graph_stats(g);
    py::dict d;
    d["neurons"] = g.neuron_count();
    d["inputs"] = g.input_count();
    d["synapses"] = g.synapses().size();
    d["max_in_degree"] = st.max_in_degree;
    d["avg_in_degree"] = st.avg_in_degree;
    d["max_out_degree"] = st.max_out_degree;
    d["avg_out_degree"] = st.avg_out_degree;
    d["diameter"] = st.diameter;
    return d;
}

py::dict repetitions(const std::string &sdfg_json)
{
    const auto g = parse_sdfg(sdfg_json);
    const auto q = repetition_vector(g).counts;
    py::dict d;
    for (ActorId a = 0; a < g.actor_count(); ++a)
        d[py::str(g.actors()[a].id)] = q[a];
    return d;
}

py::dict deadlock(const std::string &sdfg_json)
{
    const auto g = parse_sdfg(sdfg_json);
    const auto r = check_deadlock(g);
    std::vector<std::string> starving;
    for (auto a : r.starving)
        starving.push_back(g.actors()[a].id);
    py::dict d;
    d["deadlocked"] = r.deadlocked;
    d["starving"] = starving;
    return d;
}

py::dict throughput(const std::string &sdfg_json, std::size_t state_budget)
{
    const auto g = parse_sdfg(sdfg_json);
    ExecutionOptions opts;
    opts.state_budget = state_budget;
    ThroughputResult r;
    {
        py::gil_scoped_release release;
        r = self_timed_throughput(g, opts);
    }
    py::dict d;
    d["throughput"] = r.throughput;
    d["period"] = r.period;
    d["transient_iterations"] = r.transient_length;
    return d;
}

py::list partition(const std::string &snn_json, int crossbar_dim, int eta, std::uint64_t seed, bool enforce_fan_in,
                   double delta_min, int jobs)
{
    const auto g = parse_snn(snn_json);
    std::vector<PartitionRound> rounds;
    {
        py::gil_scoped_release release;
        rounds = iterate_partitions(g, {crossbar_dim, enforce_fan_in}, eta, delta_min, seed, jobs);
    }
    py::list out;
    for (const auto &r : rounds) {
        py::dict d;
        d["seed"] = r.seed;
        d["clusters"] = r.clustered.clusters.size();
        d["assignment"] = r.partition.assignment;
        d["initial_cost"] = r.trace.initial_cost;
        d["final_cost"] = r.trace.final_cost;
        d["clustered"] = dump_clustered(r.clustered);
        out.append(d);
    }
    return out;
}

std::vector<std::tuple<double, std::int64_t>> pareto(const std::vector<std::tuple<double, std::int64_t>> &points)
{
    std::vector<DesignPoint> pts;
    for (std::size_t i = 0; i < points.size(); ++i)
        pts.push_back({std::get<0>(points[i]), std::get<1>(points[i]), 0, i});
    std::vector<std::tuple<double, std::int64_t>> out;
    for (const auto &p : pareto_filter(pts).points)
        out.emplace_back(p.throughput, p.total_buffer);
    return out;
}

py::list explore(const std::string &snn_json, const std::string &hardware_json, int crossbar_dim, int eta,
                 std::uint64_t seed, std::size_t particles, std::size_t iterations, std::size_t plateau,
                 std::size_t max_steps, int slowdown, int jobs)
{
    const auto g = parse_snn(snn_json);
    const auto hw = parse_hardware(hardware_json);
    FlowConfig cfg;
    cfg.limits.dim = crossbar_dim;
    cfg.eta = eta;
    cfg.seed = seed;
    cfg.swarm.particles = particles;
    cfg.swarm.iterations = iterations;
    cfg.sweep.plateau = plateau;
    cfg.sweep.max_steps = max_steps;
    cfg.slowdown = slowdown;
    cfg.jobs = jobs;
    FlowResult flow;
    {
        py::gil_scoped_release release;
        flow = run_design_flow(g, hw, cfg);
    }
    py::list out;
    for (const auto &p : flow.front.points) {
        py::dict d;
        d["throughput"] = p.throughput;
        d["total_buffer"] = p.total_buffer;
        d["round"] = p.round;
        d["step"] = p.step;
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Partitioning, dataflow analysis and mapping of spiking neural networks";
    m.attr("FORMAT_VERSION") = kFormatVersion;

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
    py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
    py::register_exception<DeadlockError>(m, "DeadlockError", base.ptr());
    py::register_exception<BudgetExceededError>(m, "BudgetExceededError", base.ptr());

    m.def("graph_stats", &stats_of, py::arg("snn_json"), "Degree and diameter statistics of an SNN document.");
    m.def("repetition_vector", &repetitions, py::arg("sdfg_json"));
    m.def("check_deadlock", &deadlock, py::arg("sdfg_json"));
    m.def("throughput", &throughput, py::arg("sdfg_json"), py::arg("state_budget") = 1'000'000,
          "Self-timed throughput in iterations per time unit.");
    m.def("partition", &partition, py::arg("snn_json"), py::arg("crossbar_dim"), py::arg("eta") = 1,
          py::arg("seed") = 1, py::arg("enforce_fan_in") = true, py::arg("delta_min") = 0.0, py::arg("jobs") = 1);
    m.def("pareto_filter", &pareto, py::arg("points"),
          "Non-dominated (throughput, total_buffer) pairs, ascending in buffer.");
    m.def("explore", &explore, py::arg("snn_json"), py::arg("hardware_json"), py::arg("crossbar_dim"),
          py::arg("eta") = 1, py::arg("seed") = 1, py::arg("particles") = 20, py::arg("iterations") = 50,
          py::arg("plateau") = 3, py::arg("max_steps") = 64, py::arg("slowdown") = 2, py::arg("jobs") = 1,
          "Full exploration; returns the Pareto front as a list of dicts.");
}
