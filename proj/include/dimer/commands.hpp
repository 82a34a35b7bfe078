// Copyright 2026 The dimer-dynamics Authors
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

#include "dimer/config.hpp"

#include <exception>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace dimer {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,      ///< bad arguments or config
    kExitNumerical = 2,  ///< solver or integrator failure
    kExitIo = 3,         ///< unreadable input or unwritable output
};

/// Where a command writes. CSV goes to the config's output path, or to `out`
/// when none is set; human-readable summaries go to `out` when the CSV went
/// to a file and to `err` otherwise.
struct CommandStreams {
    std::ostream& out;
    std::ostream& err;
};

struct CommandOptions {
    int threads = 1;
};

/// Steady-state spectrum over the delta_plus / 2 grid; reports the peaks.
void cmd_spectrum(const RunConfig& config, const CommandOptions& opts, CommandStreams io);

/// One trajectory with concurrence, populations and the two coherences;
/// the JSON sidecar lists ESD / ESB events and, when a closed form applies,
/// the deviation from it.
void cmd_evolve(const RunConfig& config, const CommandOptions& opts, CommandStreams io);

/// Concurrence over (axis value, time) in long format, with per-row events.
void cmd_sweep(const RunConfig& config, const CommandOptions& opts, CommandStreams io);

/// Steady state, its concurrence, fluorescence signal and residual.
void cmd_steady(const RunConfig& config, const CommandOptions& opts, CommandStreams io);

/// Closed-form death times for the X family ("a") or the |00>,|11>
/// superposition ("alpha") at a decay rate quoted in MHz over 2pi.
void cmd_esd_oracle(const std::string& family, const std::vector<double>& values, double gamma_mhz_over_2pi,
                    const std::string& output_path, CommandStreams io);

/// Registered presets with their descriptions.
void cmd_preset_list(std::ostream& out);

/// Config text reproducing a preset.
void cmd_preset_show(const std::string& name, std::ostream& out);

/// Maps an exception to its exit code.
int exit_code_for(const std::exception& e);

/// Runs `body`, printing any error to `err`; returns the exit code.
int run_guarded(std::ostream& err, const std::function<void()>& body);

}  // namespace dimer
