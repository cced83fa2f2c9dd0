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

#include "snnmap/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "snnmap/error.hpp"

namespace snnmap {

namespace {

using Json = nlohmann::ordered_json;

int line_of(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    int line = 1;
    for (std::size_t i = 0; i < byte; ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

/// A JSON value together with its path, for error messages.
class Node {
  public:
    Node(const Json &j, std::string path) : j_(j), path_(std::move(path)) {}

    const std::string &path() const { return path_; }
    const Json &json() const { return j_; }

    bool has(const char *key) const { return j_.contains(key) && !j_.at(key).is_null(); }

    Node at(const char *key) const
    {
        if (!j_.is_object())
            fail("expected an object");
        if (!j_.contains(key))
            throw ParseError(child_path(key) + ": missing required field");
        return {j_.at(key), child_path(key)};
    }

    Node operator[](std::size_t i) const { return {j_.at(i), path_ + "[" + std::to_string(i) + "]"}; }

    std::size_t array_size() const
    {
        if (!j_.is_array())
            fail("expected an array");
        return j_.size();
    }

    std::string str() const
    {
        if (!j_.is_string())
            fail("expected a string");
        return j_.get<std::string>();
    }

    double number() const
    {
        if (!j_.is_number())
            fail("expected a number");
        return j_.get<double>();
    }

    std::int64_t integer() const
    {
        if (j_.is_number_integer())
            return j_.get<std::int64_t>();
        if (j_.is_number_float()) {
            const double v = j_.get<double>();
            if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e18)
                return static_cast<std::int64_t>(v);
        }
        fail("expected an integer");
    }

    bool boolean() const
    {
        if (!j_.is_boolean())
            fail("expected true or false");
        return j_.get<bool>();
    }

    [[noreturn]] void fail(const std::string &what) const { throw ParseError(path_ + ": " + what); }

  private:
    std::string child_path(const char *key) const { return path_.empty() ? key : path_ + "." + key; }

    const Json &j_;
    std::string path_;
};

Json parse_document(std::string_view text, const std::string &format)
{
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        std::string what = e.what();
        if (auto pos = what.find("]: "); pos != std::string::npos)
            what = what.substr(pos + 3);
        if (auto pos = what.find(": "); what.rfind("parse error at", 0) == 0 && pos != std::string::npos)
            what = what.substr(pos + 2);
        throw ParseError(what, line_of(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    if (!j.is_object())
        throw ParseError("document must be a JSON object", 1);
    Node root(j, "");
    const auto fmt = root.at("format").str();
    if (fmt != format)
        throw ParseError("format: expected \"" + format + "\", got \"" + fmt + "\"");
    const auto version = root.at("format_version").integer();
    if (version != kFormatVersion)
        throw ParseError("format_version: unsupported version " + std::to_string(version));
    return j;
}

Json header(const std::string &format)
{
    Json j;
    j["format"] = format;
    j["format_version"] = kFormatVersion;
    return j;
}

std::string render(const Json &j) { return j.dump(2) + "\n"; }

// Re-raises a library validation error with the JSON path in front.
template <typename Fn>
auto at_path(const std::string &path, Fn &&fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const ParseError &) {
        throw;
    } catch (const ValidationError &e) {
        throw ValidationError(path + ": " + e.what());
    } catch (const InfeasibleError &e) {
        throw ValidationError(path + ": " + e.what());
    }
}

LifParams parse_lif(const Node &n)
{
    LifParams p;
    auto field = [&](const char *key, double &slot) {
        if (n.has(key))
            slot = n.at(key).number();
    };
    field("membrane_capacitance", p.membrane_capacitance);
    field("membrane_resistance", p.membrane_resistance);
    field("v_rest", p.v_rest);
    field("v_threshold", p.v_threshold);
    field("injected_current", p.injected_current);
    field("dt", p.dt);
    at_path(n.path(), [&] { p.validate(); });
    return p;
}

Json dump_lif(const LifParams &p)
{
    Json j;
    j["membrane_capacitance"] = p.membrane_capacitance;
    j["membrane_resistance"] = p.membrane_resistance;
    j["v_rest"] = p.v_rest;
    j["v_threshold"] = p.v_threshold;
    j["injected_current"] = p.injected_current;
    j["dt"] = p.dt;
    return j;
}

std::int64_t optional_limit(const Node &n, const char *key)
{
    return n.has(key) ? n.at(key).integer() : kUnlimited;
}

std::size_t lookup(const std::map<std::string, std::size_t> &index, const Node &n, const char *what)
{
    const auto id = n.str();
    auto it = index.find(id);
    if (it == index.end())
        n.fail(std::string("unknown ") + what + " '" + id + "'");
    return it->second;
}

} // namespace

std::string read_text_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw ConfigError("write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------- SNN

SnnGraph parse_snn(std::string_view text)
{
    const Json j = parse_document(text, "snnmap.snn");
    Node root(j, "");
    SnnGraph g;
    const auto neurons = root.at("neurons");
    for (std::size_t i = 0; i < neurons.array_size(); ++i) {
        const auto n = neurons[i];
        const LifParams lif = n.has("lif") ? parse_lif(n.at("lif")) : LifParams{};
        at_path(n.path(), [&] { return g.add_neuron(n.at("id").str(), lif); });
    }
    if (root.has("inputs")) {
        const auto inputs = root.at("inputs");
        for (std::size_t i = 0; i < inputs.array_size(); ++i) {
            const auto n = inputs[i];
            const double spikes = n.has("spikes_per_frame") ? n.at("spikes_per_frame").number() : 0.0;
            at_path(n.path(), [&] { return g.add_input(n.at("id").str(), spikes); });
        }
    }
    if (root.has("synapses")) {
        const auto syn = root.at("synapses");
        for (std::size_t i = 0; i < syn.array_size(); ++i) {
            const auto n = syn[i];
            const auto src = n.at("src").str();
            const auto dst = n.at("dst").str();
            const double w = n.at("weight").number();
            const double spikes = n.has("spikes_per_frame") ? n.at("spikes_per_frame").number() : 0.0;
            at_path(n.path(), [&] { return g.add_synapse(src, dst, w, spikes); });
        }
    }
    return g;
}

std::string dump_snn(const SnnGraph &g)
{
    Json j = header("snnmap.snn");
    j["neurons"] = Json::array();
    for (const auto &n : g.neurons()) {
        Json e;
        e["id"] = n.id;
        if (!(n.lif == LifParams{}))
            e["lif"] = dump_lif(n.lif);
        j["neurons"].push_back(std::move(e));
    }
    j["inputs"] = Json::array();
    for (const auto &in : g.inputs())
        j["inputs"].push_back(Json{{"id", in.id}, {"spikes_per_frame", in.spikes_per_frame}});
    j["synapses"] = Json::array();
    for (const auto &s : g.synapses())
        j["synapses"].push_back(Json{{"src", g.name_of(s.src)},
                                     {"dst", g.neurons()[s.dst].id},
                                     {"weight", s.weight},
                                     {"spikes_per_frame", s.spikes_per_frame}});
    return render(j);
}

// ----------------------------------------------------------- hardware

HardwareGraph parse_hardware(std::string_view text)
{
    const Json j = parse_document(text, "snnmap.hardware");
    Node root(j, "");
    HardwareGraph hw;
    const auto cores = root.at("cores");
    for (std::size_t i = 0; i < cores.array_size(); ++i) {
        const auto n = cores[i];
        Core c;
        c.id = n.at("id").str();
        const auto dim = n.at("crossbar_dim").integer();
        if (dim < 1 || dim > std::numeric_limits<int>::max())
            n.at("crossbar_dim").fail("must be a positive integer");
        c.crossbar_dim = static_cast<int>(dim);
        c.exec_time = n.has("exec_time") ? n.at("exec_time").integer() : 1;
        c.in_connections = optional_limit(n, "in_connections");
        c.out_connections = optional_limit(n, "out_connections");
        c.in_bandwidth = optional_limit(n, "in_bandwidth");
        c.out_bandwidth = optional_limit(n, "out_bandwidth");
        at_path(n.path(), [&] { return hw.add_core(c); });
    }
    if (root.has("links")) {
        const auto links = root.at("links");
        for (std::size_t i = 0; i < links.array_size(); ++i) {
            const auto n = links[i];
            const auto src = n.at("src").str(), dst = n.at("dst").str();
            const auto lat = n.has("latency") ? n.at("latency").integer() : 0;
            at_path(n.path(), [&] { hw.add_link(src, dst, lat); });
        }
    }
    return hw;
}

std::string dump_hardware(const HardwareGraph &hw)
{
    Json j = header("snnmap.hardware");
    j["cores"] = Json::array();
    for (const auto &c : hw.cores()) {
        Json e{{"id", c.id}, {"crossbar_dim", c.crossbar_dim}, {"exec_time", c.exec_time}};
        auto limit = [&](const char *key, std::int64_t v) {
            if (v != kUnlimited)
                e[key] = v;
        };
        limit("in_connections", c.in_connections);
        limit("out_connections", c.out_connections);
        limit("in_bandwidth", c.in_bandwidth);
        limit("out_bandwidth", c.out_bandwidth);
        j["cores"].push_back(std::move(e));
    }
    j["links"] = Json::array();
    for (const auto &l : hw.links())
        j["links"].push_back(
            Json{{"src", hw.cores()[l.src].id}, {"dst", hw.cores()[l.dst].id}, {"latency", l.latency}});
    return render(j);
}

// ------------------------------------------------------------- spikes

std::vector<FrameStimulus> parse_spikes(std::string_view text)
{
    const Json j = parse_document(text, "snnmap.spikes");
    Node root(j, "");
    std::vector<FrameStimulus> frames;
    const auto fr = root.at("frames");
    for (std::size_t f = 0; f < fr.array_size(); ++f) {
        const auto frame = fr[f];
        const double length = frame.at("frame_length").number();
        const auto trains = frame.at("trains");
        if (!trains.json().is_object())
            trains.fail("expected an object mapping input ids to spike times");
        FrameStimulus stim;
        for (auto it = trains.json().begin(); it != trains.json().end(); ++it) {
            const Node times(it.value(), trains.path() + "." + it.key());
            SpikeTrain train;
            train.frame_length = length;
            for (std::size_t i = 0; i < times.array_size(); ++i)
                train.times.push_back(times[i].number());
            at_path(times.path(), [&] { train.validate(); });
            stim.emplace(it.key(), std::move(train));
        }
        frames.push_back(std::move(stim));
    }
    return frames;
}

std::string dump_spikes(const std::vector<FrameStimulus> &frames)
{
    Json j = header("snnmap.spikes");
    j["frames"] = Json::array();
    for (const auto &f : frames) {
        double length = 0.0;
        Json trains = Json::object();
        for (const auto &[id, t] : f) {
            length = t.frame_length;
            trains[id] = t.times;
        }
        j["frames"].push_back(Json{{"frame_length", length}, {"trains", std::move(trains)}});
    }
    return render(j);
}

// ---------------------------------------------------------- clustered

ClusteredSnnGraph parse_clustered(std::string_view text)
{
    const Json j = parse_document(text, "snnmap.clustered");
    Node root(j, "");
    ClusteredSnnGraph cg;
    std::map<std::string, std::size_t> neuron_index, input_index, cluster_index;
    const auto nids = root.at("neuron_ids");
    for (std::size_t i = 0; i < nids.array_size(); ++i) {
        cg.neuron_ids.push_back(nids[i].str());
        if (!neuron_index.emplace(cg.neuron_ids.back(), i).second)
            nids[i].fail("duplicate neuron id");
    }
    if (root.has("input_ids")) {
        const auto iids = root.at("input_ids");
        for (std::size_t i = 0; i < iids.array_size(); ++i) {
            cg.input_ids.push_back(iids[i].str());
            if (!input_index.emplace(cg.input_ids.back(), i).second)
                iids[i].fail("duplicate input id");
        }
    }
    const auto clusters = root.at("clusters");
    for (std::size_t i = 0; i < clusters.array_size(); ++i) {
        const auto n = clusters[i];
        Cluster c;
        c.id = n.at("id").str();
        if (!cluster_index.emplace(c.id, i).second)
            n.at("id").fail("duplicate cluster id");
        const auto members = n.at("neurons");
        for (std::size_t k = 0; k < members.array_size(); ++k)
            c.neurons.push_back(lookup(neuron_index, members[k], "neuron"));
        const auto fan_in = n.has("fan_in") ? n.at("fan_in").integer() : 0;
        if (fan_in < 0)
            n.at("fan_in").fail("must be >= 0");
        c.fan_in = static_cast<std::size_t>(fan_in);
        c.internal_spikes = n.has("internal_spikes") ? n.at("internal_spikes").number() : 0.0;
        cg.clusters.push_back(std::move(c));
    }
    if (root.has("edges")) {
        const auto edges = root.at("edges");
        for (std::size_t i = 0; i < edges.array_size(); ++i) {
            const auto n = edges[i];
            ClusterEdge e;
            e.src = lookup(cluster_index, n.at("src"), "cluster");
            e.dst = lookup(cluster_index, n.at("dst"), "cluster");
            e.spikes = n.at("spikes").number();
            e.tokens = n.has("tokens") ? n.at("tokens").integer() : std::llround(e.spikes);
            if (e.tokens < 0)
                n.at("tokens").fail("must be >= 0");
            cg.edges.push_back(e);
        }
    }
    if (root.has("input_edges")) {
        const auto edges = root.at("input_edges");
        for (std::size_t i = 0; i < edges.array_size(); ++i) {
            const auto n = edges[i];
            InputEdge e;
            e.input = lookup(input_index, n.at("input"), "input");
            e.dst = lookup(cluster_index, n.at("dst"), "cluster");
            e.spikes = n.at("spikes").number();
            cg.input_edges.push_back(e);
        }
    }
    return cg;
}

std::string dump_clustered(const ClusteredSnnGraph &cg)
{
    Json j = header("snnmap.clustered");
    j["neuron_ids"] = cg.neuron_ids;
    j["input_ids"] = cg.input_ids;
    j["clusters"] = Json::array();
    for (const auto &c : cg.clusters) {
        Json members = Json::array();
        for (auto n : c.neurons)
            members.push_back(cg.neuron_ids.at(n));
        j["clusters"].push_back(Json{{"id", c.id},
                                     {"neurons", std::move(members)},
                                     {"fan_in", c.fan_in},
                                     {"internal_spikes", c.internal_spikes}});
    }
    j["edges"] = Json::array();
    for (const auto &e : cg.edges)
        j["edges"].push_back(Json{{"src", cg.clusters.at(e.src).id},
                                  {"dst", cg.clusters.at(e.dst).id},
                                  {"spikes", e.spikes},
                                  {"tokens", e.tokens}});
    j["input_edges"] = Json::array();
    for (const auto &e : cg.input_edges)
        j["input_edges"].push_back(
            Json{{"input", cg.input_ids.at(e.input)}, {"dst", cg.clusters.at(e.dst).id}, {"spikes", e.spikes}});
    return render(j);
}

// --------------------------------------------------------------- SDFG

Sdfg parse_sdfg(std::string_view text)
{
    const Json j = parse_document(text, "snnmap.sdfg");
    Node root(j, "");
    Sdfg g;
    std::map<std::string, std::size_t> index;
    const auto actors = root.at("actors");
    for (std::size_t i = 0; i < actors.array_size(); ++i) {
        const auto n = actors[i];
        const auto id = n.at("id").str();
        const Time exec = n.has("exec_time") ? n.at("exec_time").integer() : 1;
        index[id] = at_path(n.path(), [&] { return g.add_actor(id, exec); });
    }
    if (root.has("channels")) {
        const auto chans = root.at("channels");
        for (std::size_t i = 0; i < chans.array_size(); ++i) {
            const auto n = chans[i];
            const auto src = lookup(index, n.at("src"), "actor");
            const auto dst = lookup(index, n.at("dst"), "actor");
            const auto prod = n.has("production") ? n.at("production").integer() : 1;
            const auto cons = n.has("consumption") ? n.at("consumption").integer() : 1;
            const auto init = n.has("initial_tokens") ? n.at("initial_tokens").integer() : 0;
            std::optional<std::int64_t> cap;
            if (n.has("capacity"))
                cap = n.at("capacity").integer();
            at_path(n.path(), [&] { return g.add_channel(src, prod, dst, cons, init, cap); });
        }
    }
    return g;
}

std::string dump_sdfg(const Sdfg &g)
{
    Json j = header("snnmap.sdfg");
    j["actors"] = Json::array();
    for (const auto &a : g.actors())
        j["actors"].push_back(Json{{"id", a.id}, {"exec_time", a.exec_time}});
    j["channels"] = Json::array();
    for (const auto &c : g.channels()) {
        Json e{{"src", g.actors()[c.src].id},
               {"dst", g.actors()[c.dst].id},
               {"production", c.production},
               {"consumption", c.consumption},
               {"initial_tokens", c.initial_tokens}};
        e["capacity"] = c.capacity ? Json(*c.capacity) : Json(nullptr);
        j["channels"].push_back(std::move(e));
    }
    return render(j);
}

// ----------------------------------------------------------- solution

std::string dump_solution(const MappingSolution &sol, const Sdfg &g, const HardwareGraph &hw)
{
    Json j = header("snnmap.solution");
    const auto &r = sol.result;
    j["throughput"] = r.throughput;
    j["period"] = r.period;
    j["transient_length"] = r.transient_length;
    j["cycle_time"] = r.cycle_time;
    std::ostringstream hash;
    hash << std::hex << r.steady_state_hash;
    j["steady_state_hash"] = hash.str();
    j["mapping"] = Json::array();
    for (ActorId a = 0; a < sol.mapping.core_of.size(); ++a)
        j["mapping"].push_back(Json{{"actor", g.actors().at(a).id}, {"core", hw.cores().at(sol.mapping.core_of[a]).id}});
    auto ids = [&](const std::vector<ActorId> &v) {
        Json out = Json::array();
        for (auto a : v)
            out.push_back(g.actors().at(a).id);
        return out;
    };
    j["schedules"] = Json::array();
    for (std::size_t k = 0; k < sol.schedules.cores.size(); ++k)
        j["schedules"].push_back(Json{{"core", hw.cores().at(k).id},
                                      {"transient", ids(sol.schedules.cores[k].transient)},
                                      {"cycle", ids(sol.schedules.cores[k].cycle)}});
    j["channels"] = Json::array();
    for (std::size_t c = 0; c < g.channel_count(); ++c) {
        const auto &ch = g.channels()[c];
        Json e{{"src", g.actors()[ch.src].id}, {"dst", g.actors()[ch.dst].id}};
        e["capacity"] = c < sol.allocation.size() && sol.allocation[c] ? Json(*sol.allocation[c]) : Json(nullptr);
        e["space_blocked"] = c < r.space_blocked.size() ? r.space_blocked[c] : 0;
        j["channels"].push_back(std::move(e));
    }
    j["cycle_firings"] = r.cycle_firings;
    j["evaluations"] = sol.evaluations;
    j["best_history"] = sol.best_history;
    return render(j);
}

MappingSolution parse_solution(std::string_view text, const Sdfg &g, const HardwareGraph &hw)
{
    const Json j = parse_document(text, "snnmap.solution");
    Node root(j, "");
    std::map<std::string, std::size_t> actor_index, core_index;
    for (ActorId a = 0; a < g.actor_count(); ++a)
        actor_index[g.actors()[a].id] = a;
    for (std::size_t k = 0; k < hw.core_count(); ++k)
        core_index[hw.cores()[k].id] = k;

    MappingSolution sol;
    auto &r = sol.result;
    r.throughput = root.at("throughput").number();
    r.period = root.at("period").number();
    r.transient_length = root.at("transient_length").integer();
    r.cycle_time = root.at("cycle_time").integer();
    {
        const auto h = root.at("steady_state_hash");
        const auto s = h.str();
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), r.steady_state_hash, 16);
        if (ec != std::errc() || ptr != s.data() + s.size())
            h.fail("expected a hexadecimal hash");
    }
    sol.mapping.core_of.assign(g.actor_count(), hw.core_count());
    const auto mapping = root.at("mapping");
    for (std::size_t i = 0; i < mapping.array_size(); ++i) {
        const auto a = lookup(actor_index, mapping[i].at("actor"), "actor");
        sol.mapping.core_of[a] = lookup(core_index, mapping[i].at("core"), "core");
    }
    for (ActorId a = 0; a < g.actor_count(); ++a)
        if (sol.mapping.core_of[a] == hw.core_count())
            mapping.fail("actor '" + g.actors()[a].id + "' is not mapped");

    sol.schedules.cores.resize(hw.core_count());
    const auto scheds = root.at("schedules");
    for (std::size_t i = 0; i < scheds.array_size(); ++i) {
        const auto k = lookup(core_index, scheds[i].at("core"), "core");
        for (const char *part : {"transient", "cycle"}) {
            const auto list = scheds[i].at(part);
            auto &dst = std::string(part) == "cycle" ? sol.schedules.cores[k].cycle : sol.schedules.cores[k].transient;
            for (std::size_t x = 0; x < list.array_size(); ++x)
                dst.push_back(lookup(actor_index, list[x], "actor"));
        }
    }
    const auto chans = root.at("channels");
    if (chans.array_size() != g.channel_count())
        chans.fail("expected " + std::to_string(g.channel_count()) + " channels");
    for (std::size_t c = 0; c < g.channel_count(); ++c) {
        const auto n = chans[c];
        sol.allocation.push_back(n.has("capacity") ? std::optional<std::int64_t>(n.at("capacity").integer())
                                                   : std::nullopt);
        r.space_blocked.push_back(n.has("space_blocked") ? n.at("space_blocked").integer() : 0);
    }
    const auto firings = root.at("cycle_firings");
    for (std::size_t i = 0; i < firings.array_size(); ++i)
        r.cycle_firings.push_back(firings[i].integer());
    sol.evaluations = static_cast<std::size_t>(root.at("evaluations").integer());
    const auto hist = root.at("best_history");
    for (std::size_t i = 0; i < hist.array_size(); ++i)
        sol.best_history.push_back(hist[i].number());
    return sol;
}

// ---------------------------------------------------------------- CSV

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string front_csv(const ParetoFront &front)
{
    std::string out = "throughput,period,total_buffer,round,step\n";
    for (const auto &p : front.points)
        out += format_double(p.throughput) + "," + format_double(1.0 / p.throughput) + "," +
               std::to_string(p.total_buffer) + "," + std::to_string(p.round) + "," + std::to_string(p.step) + "\n";
    return out;
}

std::vector<DesignPoint> parse_front_csv(std::string_view text)
{
    std::vector<DesignPoint> points;
    std::size_t pos = 0;
    int line = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view row = text.substr(pos, end - pos);
        pos = end + 1;
        ++line;
        if (!row.empty() && row.back() == '\r')
            row.remove_suffix(1);
        if (line == 1 || row.empty())
            continue;
        std::vector<std::string_view> cells;
        std::size_t start = 0;
        for (;;) {
            auto comma = row.find(',', start);
            cells.push_back(row.substr(start, comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (cells.size() != 5)
            throw ParseError("expected 5 columns", line);
        DesignPoint p;
        auto num = [&](std::string_view s, auto &slot) {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), slot);
            if (ec != std::errc() || ptr != s.data() + s.size())
                throw ParseError("bad number '" + std::string(s) + "'", line);
        };
        double period = 0;
        num(cells[0], p.throughput);
        num(cells[1], period);
        num(cells[2], p.total_buffer);
        num(cells[3], p.round);
        num(cells[4], p.step);
        points.push_back(p);
    }
    return points;
}

} // namespace snnmap
