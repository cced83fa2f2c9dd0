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

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "snnmap/dse.hpp"

namespace snnmap::cli {

enum ExitCode : int {
    kOk = 0,
    kAnalysisFailure = 1, // deadlock, inconsistency, infeasibility
    kInputError = 2,      // unreadable or malformed input, bad configuration
    kBudgetExceeded = 3,
};

/// Environment variable naming the default output directory.
inline constexpr const char *kOutDirEnv = "SNNMAP_OUT_DIR";

/// Settings shared by partition, map and explore. Loaded from a JSON
/// config file; command-line flags override individual fields.
struct RunConfig {
    std::filesystem::path snn;
    std::filesystem::path hardware;
    std::filesystem::path spikes;
    bool rates_present = false; // skip the rate estimator
    FlowConfig flow;
    std::filesystem::path output_dir;
};

/// Reads a config document; relative paths resolve against its directory.
RunConfig load_run_config(const std::filesystem::path &path);

/// Output directory from the flag, else the environment, else "snnmap-out".
std::filesystem::path resolve_output_dir(const std::filesystem::path &flag);

int exit_code_for(const std::exception &e);

/// Full exploration; writes front.csv, series.csv, rounds.csv,
/// manifest.json and one solution file per front point.
int cmd_explore(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Entry point shared by the executable and the tests.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace snnmap::cli
