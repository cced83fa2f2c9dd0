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

#pragma once

// JSON documents carry "format" and "format_version" keys. Parse failures
// raise ParseError with the line of the offending byte; shape errors name
// the JSON path of the field (for example "synapses[3].dst").

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "snnmap/dse.hpp"
#include "snnmap/graph.hpp"
#include "snnmap/lif.hpp"
#include "snnmap/mapping.hpp"
#include "snnmap/partition.hpp"
#include "snnmap/sdfg.hpp"

namespace snnmap {

inline constexpr int kFormatVersion = 1;

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

SnnGraph parse_snn(std::string_view text);
std::string dump_snn(const SnnGraph &g);

HardwareGraph parse_hardware(std::string_view text);
std::string dump_hardware(const HardwareGraph &hw);

std::vector<FrameStimulus> parse_spikes(std::string_view text);
std::string dump_spikes(const std::vector<FrameStimulus> &frames);

ClusteredSnnGraph parse_clustered(std::string_view text);
std::string dump_clustered(const ClusteredSnnGraph &cg);

Sdfg parse_sdfg(std::string_view text);
std::string dump_sdfg(const Sdfg &g);

/// Ids in the solution refer to actors of `g` and cores of `hw`.
std::string dump_solution(const MappingSolution &sol, const Sdfg &g, const HardwareGraph &hw);
MappingSolution parse_solution(std::string_view text, const Sdfg &g, const HardwareGraph &hw);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// "throughput,period,total_buffer,round,step" rows in front order.
std::string front_csv(const ParetoFront &front);
std::vector<DesignPoint> parse_front_csv(std::string_view text);

} // namespace snnmap
