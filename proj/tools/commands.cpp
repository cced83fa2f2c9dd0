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

#include "commands.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "snnmap/error.hpp"
#include "snnmap/execution.hpp"
#include "snnmap/io.hpp"
#include "snnmap/lif.hpp"
#include "snnmap/parallel.hpp"

namespace snnmap::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

template <typename T>
void read_key(const Json &obj, const char *key, T &slot, const std::string &where)
{
    if (!obj.contains(key) || obj.at(key).is_null())
        return;
    try {
        slot = obj.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw ConfigError(where + key + ": wrong type");
    }
}

void check_keys(const Json &obj, std::initializer_list<const char *> allowed, const std::string &where)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (auto k : allowed)
            known = known || it.key() == k;
        if (!known)
            throw ConfigError(where + it.key() + ": unknown setting");
    }
}

Json config_to_json(const RunConfig &c)
{
    const auto &f = c.flow;
    Json swarm{{"particles", f.swarm.particles}, {"phi1", f.swarm.phi1},         {"phi2", f.swarm.phi2},
               {"iterations", f.swarm.iterations}, {"v_max", f.swarm.v_max}, {"stochastic", f.swarm.stochastic}};
    swarm["inertia"] = f.swarm.inertia ? Json(*f.swarm.inertia) : Json(nullptr);
    return Json{{"snn", c.snn.generic_string()},
                {"hardware", c.hardware.generic_string()},
                {"spikes", c.spikes.generic_string()},
                {"rates_present", c.rates_present},
                {"crossbar_dim", f.limits.dim},
                {"enforce_fan_in", f.limits.enforce_fan_in},
                {"eta", f.eta},
                {"delta_min", f.delta_min},
                {"seed", f.seed},
                {"slowdown", f.slowdown},
                {"state_budget", f.state_budget},
                {"swarm", swarm},
                {"sweep",
                 {{"plateau", f.sweep.plateau},
                  {"max_steps", f.sweep.max_steps},
                  {"remap", f.sweep.remap},
                  {"exhaustive", f.sweep.exhaustive},
                  {"levels", f.sweep.levels}}}};
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

/// Flags that override RunConfig fields.
struct Overrides {
    std::string config, snn, hardware, spikes, out;
    bool rates_present = false;
    std::optional<int> dim, eta, jobs;
    bool no_fan_in = false;
    std::optional<double> delta_min;
    std::optional<std::uint64_t> seed;
    std::optional<Time> slowdown;
    std::optional<std::size_t> state_budget, particles, iterations, plateau, max_steps;
    std::optional<double> phi1, phi2, v_max, inertia;
    bool stochastic = false, no_remap = false, exhaustive = false;

    void attach(CLI::App *app, bool flow)
    {
        app->add_option("-c,--config", config, "JSON run configuration")->check(CLI::ExistingFile);
        app->add_option("--snn", snn, "SNN graph document");
        app->add_option("--spikes", spikes, "Stimulus spike trains for rate estimation");
        app->add_flag("--rates-present", rates_present, "Use spikes_per_frame from the graph; skip estimation");
        app->add_option("-M,--crossbar-dim", dim, "Crossbar dimension M");
        app->add_flag("--no-fan-in", no_fan_in, "Only bound cluster size, not distinct inputs");
        app->add_option("--eta", eta, "Partition rounds");
        app->add_option("--delta-min", delta_min, "Stop KL when a sweep gains no more than this");
        app->add_option("--seed", seed, "Master seed");
        app->add_option("-o,--out", out, "Output directory (default $SNNMAP_OUT_DIR or ./snnmap-out)");
        app->add_option("-j,--jobs", jobs, "Worker threads (default: hardware concurrency)");
        if (!flow)
            return;
        app->add_option("--hardware", hardware, "Hardware graph document");
        app->add_option("--slowdown", slowdown, "Time-wheel factor applied to core execution times");
        app->add_option("--state-budget", state_budget, "Maximum states stored per timed execution");
        app->add_option("--particles", particles, "PSO particle count");
        app->add_option("--iterations", iterations, "PSO iterations");
        app->add_option("--phi1", phi1, "PSO personal-best attraction");
        app->add_option("--phi2", phi2, "PSO global-best attraction");
        app->add_option("--v-max", v_max, "PSO velocity clamp");
        app->add_option("--inertia", inertia, "PSO inertia weight (off by default)");
        app->add_flag("--stochastic", stochastic, "Random PSO attraction coefficients");
        app->add_option("--plateau", plateau, "Sweep stops after this many non-improving steps");
        app->add_option("--max-steps", max_steps, "Sweep step cap");
        app->add_flag("--no-remap", no_remap, "Reuse the first mapping across buffer allocations");
        app->add_flag("--exhaustive", exhaustive, "Enumerate allocations (graphs with <= 5 channels)");
    }

    RunConfig resolve() const
    {
        RunConfig c = config.empty() ? RunConfig{} : load_run_config(config);
        if (!snn.empty())
            c.snn = snn;
        if (!hardware.empty())
            c.hardware = hardware;
        if (!spikes.empty())
            c.spikes = spikes;
        c.rates_present = c.rates_present || rates_present;
        auto &f = c.flow;
        if (dim)
            f.limits.dim = *dim;
        if (no_fan_in)
            f.limits.enforce_fan_in = false;
        if (eta)
            f.eta = *eta;
        if (delta_min)
            f.delta_min = *delta_min;
        if (seed)
            f.seed = *seed;
        if (slowdown)
            f.slowdown = *slowdown;
        if (state_budget)
            f.state_budget = *state_budget;
        if (particles)
            f.swarm.particles = *particles;
        if (iterations)
            f.swarm.iterations = *iterations;
        if (phi1)
            f.swarm.phi1 = *phi1;
        if (phi2)
            f.swarm.phi2 = *phi2;
        if (v_max)
            f.swarm.v_max = *v_max;
        if (inertia)
            f.swarm.inertia = *inertia;
        if (stochastic)
            f.swarm.stochastic = true;
        if (plateau)
            f.sweep.plateau = *plateau;
        if (max_steps)
            f.sweep.max_steps = *max_steps;
        if (no_remap)
            f.sweep.remap = false;
        if (exhaustive)
            f.sweep.exhaustive = true;
        f.jobs = jobs ? *jobs : default_jobs();
        c.output_dir = resolve_output_dir(out.empty() ? c.output_dir : fs::path(out));
        f.validate();
        return c;
    }
};

SnnGraph load_network(const RunConfig &c, std::ostream &err)
{
    if (c.snn.empty())
        throw ConfigError("no SNN graph given (--snn or \"snn\" in the config)");
    SnnGraph g = parse_snn(read_text_file(c.snn));
    if (c.rates_present)
        return g;
    if (c.spikes.empty()) {
        if (g.total_spikes() == 0.0 && !g.synapses().empty())
            err << "warning: no spike trains given and the graph carries no spike rates\n";
        return g;
    }
    const auto frames = parse_spikes(read_text_file(c.spikes));
    return estimate_rates(g, frames);
}

Json trace_json(const PartitionRound &r)
{
    return Json{{"seed", r.seed},
                {"clusters", r.clustered.clusters.size()},
                {"initial_cost", r.trace.initial_cost},
                {"sweep_improvements", r.trace.sweep_improvements},
                {"final_cost", r.trace.final_cost}};
}

int cmd_stats(const std::string &path, std::ostream &out)
{
    const auto g = parse_snn(read_text_file(path));
    const auto st = compute_graph_stats(g);
    Json j{{"neurons", g.neuron_count()},
           {"inputs", g.input_count()},
           {"synapses", g.synapses().size()},
           {"max_in_degree", st.max_in_degree},
           {"avg_in_degree", st.avg_in_degree},
           {"max_out_degree", st.max_out_degree},
           {"avg_out_degree", st.avg_out_degree},
           {"diameter", st.diameter}};
    out << j.dump(2) << "\n";
    return kOk;
}

int cmd_rates(const RunConfig &c, const std::string &output, std::ostream &out, std::ostream &err)
{
    if (c.spikes.empty() && !c.rates_present)
        throw ConfigError("rates needs --spikes");
    const auto g = load_network(c, err);
    const fs::path dest = output.empty() ? c.output_dir / "rates.snn.json" : fs::path(output);
    write_text_file(dest, dump_snn(g));
    out << dest.generic_string() << "\n";
    return kOk;
}

int cmd_partition(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    const auto g = load_network(c, err);
    const auto rounds =
        iterate_partitions(g, c.flow.limits, c.flow.eta, c.flow.delta_min, c.flow.seed, c.flow.jobs);
    Json log = Json::array();
    std::string csv = "round,seed,clusters,initial_cost,final_cost,sweeps\n";
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        const auto name = "round" + std::to_string(r) + ".clustered.json";
        write_text_file(c.output_dir / name, dump_clustered(rounds[r].clustered));
        auto entry = trace_json(rounds[r]);
        entry["round"] = r;
        entry["file"] = name;
        log.push_back(entry);
        csv += std::to_string(r) + "," + std::to_string(rounds[r].seed) + "," +
               std::to_string(rounds[r].clustered.clusters.size()) + "," +
               format_double(rounds[r].trace.initial_cost) + "," + format_double(rounds[r].trace.final_cost) + "," +
               std::to_string(rounds[r].trace.sweep_improvements.size()) + "\n";
    }
    write_text_file(c.output_dir / "partition_log.json", log.dump(2) + "\n");
    write_text_file(c.output_dir / "partition_costs.csv", csv);
    out << csv;
    return kOk;
}

int cmd_analyze(const std::string &path, bool sweep, std::size_t budget, std::ostream &out)
{
    const auto g = parse_sdfg(read_text_file(path));
    Json j;
    j["actors"] = g.actor_count();
    j["channels"] = g.channel_count();
    RepetitionVector q;
    try {
        q = repetition_vector(g);
    } catch (const ConsistencyError &e) {
        j["consistent"] = false;
        j["error"] = e.what();
        out << j.dump(2) << "\n";
        return kAnalysisFailure;
    }
    j["consistent"] = true;
    Json rv = Json::object();
    for (ActorId a = 0; a < g.actor_count(); ++a)
        rv[g.actors()[a].id] = q.counts[a];
    j["repetition_vector"] = rv;
    const auto dl = check_deadlock(g);
    j["deadlock_free"] = dl.ok();
    if (!dl.ok()) {
        Json starving = Json::array();
        for (auto a : dl.starving)
            starving.push_back(g.actors()[a].id);
        j["starving"] = starving;
        out << j.dump(2) << "\n";
        return kAnalysisFailure;
    }
    ExecutionOptions opts;
    opts.state_budget = budget;
    const auto r = self_timed_throughput(g, opts);
    j["throughput"] = r.throughput;
    j["period"] = r.period;
    j["transient_iterations"] = r.transient_length;
    j["cycle_time"] = r.cycle_time;
    if (sweep) {
        SweepConfig sc;
        const auto s = sweep_buffers(g, sc, nullptr, budget);
        Json pts = Json::array();
        for (const auto &p : s.points)
            pts.push_back(Json{{"total_buffer", p.total_buffer}, {"throughput", p.result.throughput}});
        j["sweep"] = pts;
        j["unbounded_throughput"] = s.upper_bound;
    }
    out << j.dump(2) << "\n";
    return kOk;
}

int cmd_map(const RunConfig &c, const std::string &clustered, const std::string &sdfg_path,
            std::int64_t buffer_frames, std::ostream &out, std::ostream &err)
{
    if (c.hardware.empty())
        throw ConfigError("map needs --hardware");
    if (clustered.empty() == sdfg_path.empty())
        throw ConfigError("map needs exactly one of --clustered or --sdfg");
    MappingProblem p;
    p.hardware = parse_hardware(read_text_file(c.hardware));
    p.slowdown = c.flow.slowdown;
    p.state_budget = c.flow.state_budget;
    if (!clustered.empty()) {
        const auto cg = parse_clustered(read_text_file(clustered));
        Time fastest = std::numeric_limits<Time>::max();
        for (const auto &core : p.hardware.cores())
            fastest = std::min(fastest, core.exec_time);
        std::vector<std::string> warnings;
        p.sdfg = lift_to_sdfg(cg, LiftOptions{fastest, buffer_frames}, &warnings);
        for (const auto &w : warnings)
            err << "warning: " << w << "\n";
        p.footprint = cluster_footprints(cg);
    } else {
        p.sdfg = parse_sdfg(read_text_file(sdfg_path));
        auto alloc = buffer_allocation(p.sdfg);
        const auto minimum = min_buffer_allocation(p.sdfg);
        for (std::size_t i = 0; i < alloc.size(); ++i)
            if (!alloc[i] && minimum[i]) {
                alloc[i] = minimum[i];
                err << "warning: unbounded channel " << i << " set to its minimum capacity " << *minimum[i] << "\n";
            }
        p.sdfg = set_buffer_allocation(p.sdfg, alloc);
    }
    auto swarm = c.flow.swarm;
    swarm.seed = c.flow.seed;
    const auto sol = search_mapping(p, swarm, c.flow.jobs);
    write_text_file(c.output_dir / "mapping.sdfg.json", dump_sdfg(p.sdfg));
    write_text_file(c.output_dir / "mapping.solution.json", dump_solution(sol, p.sdfg, p.hardware));
    Json j{{"throughput", sol.result.throughput}, {"period", sol.result.period}, {"evaluations", sol.evaluations}};
    Json m = Json::object();
    for (ActorId a = 0; a < p.sdfg.actor_count(); ++a)
        m[p.sdfg.actors()[a].id] = p.hardware.cores()[sol.mapping.core_of[a]].id;
    j["mapping"] = m;
    out << j.dump(2) << "\n";
    return kOk;
}

} // namespace

RunConfig load_run_config(const fs::path &path)
{
    const auto text = read_text_file(path);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ConfigError(path.generic_string() + ": " + e.what());
    }
    if (!j.is_object())
        throw ConfigError(path.generic_string() + ": expected a JSON object");
    const std::string where = path.filename().generic_string() + ": ";
    check_keys(j,
               {"snn", "hardware", "spikes", "rates_present", "crossbar_dim", "enforce_fan_in", "eta", "delta_min",
                "seed", "slowdown", "state_budget", "swarm", "sweep", "output_dir"},
               where);
    RunConfig c;
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    auto file = [&](const char *key, fs::path &slot) {
        std::string s;
        read_key(j, key, s, where);
        if (!s.empty())
            slot = fs::path(s).is_absolute() ? fs::path(s) : base / s;
    };
    file("snn", c.snn);
    file("hardware", c.hardware);
    file("spikes", c.spikes);
    file("output_dir", c.output_dir);
    read_key(j, "rates_present", c.rates_present, where);
    auto &f = c.flow;
    read_key(j, "crossbar_dim", f.limits.dim, where);
    read_key(j, "enforce_fan_in", f.limits.enforce_fan_in, where);
    read_key(j, "eta", f.eta, where);
    read_key(j, "delta_min", f.delta_min, where);
    read_key(j, "seed", f.seed, where);
    read_key(j, "slowdown", f.slowdown, where);
    read_key(j, "state_budget", f.state_budget, where);
    if (j.contains("swarm")) {
        const auto &s = j.at("swarm");
        const auto w = where + "swarm.";
        check_keys(s, {"particles", "phi1", "phi2", "iterations", "v_max", "inertia", "stochastic"}, w);
        read_key(s, "particles", f.swarm.particles, w);
        read_key(s, "phi1", f.swarm.phi1, w);
        read_key(s, "phi2", f.swarm.phi2, w);
        read_key(s, "iterations", f.swarm.iterations, w);
        read_key(s, "v_max", f.swarm.v_max, w);
        read_key(s, "stochastic", f.swarm.stochastic, w);
        if (s.contains("inertia") && !s.at("inertia").is_null()) {
            double v = 0;
            read_key(s, "inertia", v, w);
            f.swarm.inertia = v;
        }
    }
    if (j.contains("sweep")) {
        const auto &s = j.at("sweep");
        const auto w = where + "sweep.";
        check_keys(s, {"plateau", "max_steps", "remap", "exhaustive", "levels"}, w);
        read_key(s, "plateau", f.sweep.plateau, w);
        read_key(s, "max_steps", f.sweep.max_steps, w);
        read_key(s, "remap", f.sweep.remap, w);
        read_key(s, "exhaustive", f.sweep.exhaustive, w);
        read_key(s, "levels", f.sweep.levels, w);
    }
    return c;
}

fs::path resolve_output_dir(const fs::path &flag)
{
    if (!flag.empty())
        return flag;
    if (const char *env = std::getenv(kOutDirEnv); env && *env)
        return env;
    return "snnmap-out";
}

int exit_code_for(const std::exception &e)
{
    if (dynamic_cast<const BudgetExceededError *>(&e))
        return kBudgetExceeded;
    if (dynamic_cast<const DeadlockError *>(&e) || dynamic_cast<const ConsistencyError *>(&e) ||
        dynamic_cast<const InfeasibleError *>(&e))
        return kAnalysisFailure;
    if (dynamic_cast<const ParseError *>(&e) || dynamic_cast<const ValidationError *>(&e) ||
        dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const fs::filesystem_error *>(&e))
        return kInputError;
    return kAnalysisFailure;
}

int cmd_explore(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    if (c.hardware.empty())
        throw ConfigError("explore needs a hardware graph (--hardware or \"hardware\" in the config)");
    const auto g = load_network(c, err);
    const auto hw = parse_hardware(read_text_file(c.hardware));
    const fs::path dir = c.output_dir;

    Json manifest{{"tool", "snnmap"}, {"format_version", kFormatVersion}, {"config", config_to_json(c)}};
    FlowResult flow;
    try {
        flow = run_design_flow(g, hw, c.flow);
    } catch (const Error &e) {
        manifest["error"] = e.what();
        write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
        throw;
    }

    std::string series = "round,step,total_buffer,throughput,period\n";
    std::string rounds_csv = "round,seed,status,clusters,initial_cost,final_cost,points\n";
    Json rounds = Json::array();
    for (const auto &o : flow.rounds) {
        const auto r = std::to_string(o.round);
        auto entry = trace_json(o.partition);
        entry["round"] = o.round;
        entry["status"] = o.status;
        entry["sweep_points"] = o.sweep.points.size();
        entry["clustered"] = "rounds/round" + r + ".clustered.json";
        write_text_file(dir / "rounds" / ("round" + r + ".clustered.json"), dump_clustered(o.partition.clustered));
        if (o.ok()) {
            entry["sdfg"] = "rounds/round" + r + ".sdfg.json";
            write_text_file(dir / "rounds" / ("round" + r + ".sdfg.json"), dump_sdfg(o.sdfg));
        }
        rounds.push_back(entry);
        rounds_csv += r + "," + std::to_string(o.seed) + "," + csv_field(o.status) + "," +
                      std::to_string(o.partition.clustered.clusters.size()) + "," +
                      format_double(o.partition.trace.initial_cost) + "," +
                      format_double(o.partition.trace.final_cost) + "," + std::to_string(o.sweep.points.size()) +
                      "\n";
        for (std::size_t s = 0; s < o.sweep.points.size(); ++s) {
            const auto &p = o.sweep.points[s];
            series += r + "," + std::to_string(s) + "," + std::to_string(p.total_buffer) + "," +
                      format_double(p.result.throughput) + "," + format_double(p.result.period) + "\n";
        }
    }

    Json solutions = Json::array();
    for (const auto &p : flow.front.points) {
        const auto &o = flow.rounds[p.round];
        const auto &pt = o.sweep.points[p.step];
        const auto name = "solutions/round" + std::to_string(p.round) + "_step" + std::to_string(p.step) +
                          ".solution.json";
        if (pt.solution)
            write_text_file(dir / name, dump_solution(*pt.solution, set_buffer_allocation(o.sdfg, pt.allocation), hw));
        solutions.push_back(Json{{"round", p.round},
                                 {"step", p.step},
                                 {"throughput", p.throughput},
                                 {"total_buffer", p.total_buffer},
                                 {"solution", name}});
    }

    write_text_file(dir / "front.csv", front_csv(flow.front));
    write_text_file(dir / "series.csv", series);
    write_text_file(dir / "rounds.csv", rounds_csv);
    manifest["rounds"] = rounds;
    manifest["front"] = solutions;
    manifest["budget_exceeded"] = flow.budget_exceeded;
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");

    out << "front: " << flow.front.points.size() << " points from " << flow.rounds.size() << " rounds -> "
        << (dir / "front.csv").generic_string() << "\n";
    for (const auto &o : flow.rounds)
        if (!o.ok())
            err << "round " << o.round << " skipped: " << o.status << "\n";
    return flow.budget_exceeded ? kBudgetExceeded : kOk;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"snnmap: map spiking neural networks onto crossbar-based neuromorphic hardware"};
    app.require_subcommand(1);

    std::string stats_path;
    auto *stats = app.add_subcommand("stats", "Degree and diameter statistics of an SNN graph");
    stats->add_option("graph", stats_path, "SNN graph document")->required();

    Overrides rates_o;
    std::string rates_file;
    auto *rates = app.add_subcommand("rates", "Estimate spike rates with the LIF simulator");
    rates_o.attach(rates, false);
    rates->add_option("--output", rates_file, "Output SNN document (default <out>/rates.snn.json)");

    Overrides part_o;
    auto *partition = app.add_subcommand("partition", "Partition the SNN into crossbar-sized clusters");
    part_o.attach(partition, false);

    std::string analyze_path;
    bool analyze_sweep = false;
    std::size_t analyze_budget = 1'000'000;
    auto *analyze = app.add_subcommand("analyze", "Consistency, deadlock and throughput of an SDFG");
    analyze->add_option("sdfg", analyze_path, "SDFG document")->required();
    analyze->add_flag("--sweep", analyze_sweep, "Also run a buffer sweep");
    analyze->add_option("--state-budget", analyze_budget, "Maximum states stored per timed execution");

    Overrides map_o;
    std::string map_clustered, map_sdfg;
    std::int64_t map_frames = 1;
    auto *map = app.add_subcommand("map", "Search a cluster-to-core mapping for a fixed clustered graph");
    map_o.attach(map, true);
    map->add_option("--clustered", map_clustered, "Clustered graph document");
    map->add_option("--sdfg", map_sdfg, "SDFG document (no crossbar check)");
    map->add_option("--buffer-frames", map_frames, "Channel capacity in frames when lifting a clustered graph");

    Overrides explore_o;
    auto *explore = app.add_subcommand("explore", "Full exploration producing the Pareto front");
    explore_o.attach(explore, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*stats)
            return cmd_stats(stats_path, out);
        if (*rates)
            return cmd_rates(rates_o.resolve(), rates_file, out, err);
        if (*partition)
            return cmd_partition(part_o.resolve(), out, err);
        if (*analyze)
            return cmd_analyze(analyze_path, analyze_sweep, analyze_budget, out);
        if (*map)
            return cmd_map(map_o.resolve(), map_clustered, map_sdfg, map_frames, out, err);
        if (*explore)
            return cmd_explore(explore_o.resolve(), out, err);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kInputError;
}

} // namespace snnmap::cli
