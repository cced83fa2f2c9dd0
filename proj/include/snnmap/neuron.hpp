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

namespace snnmap {

/// Leaky integrate-and-fire parameters (SI units). The membrane time
/// constant is C_m * R_m.
struct LifParams {
    double membrane_capacitance = 1e-9; // F
    double membrane_resistance = 1e7;   // ohm
    double v_rest = -0.065;             // V
    double v_threshold = -0.050;        // V
    double injected_current = 0.0;      // A
    double dt = 1e-4;                   // s

    double tau_m() const { return membrane_capacitance * membrane_resistance; }

    /// Throws ValidationError when a parameter is out of range.
    void validate() const;

    bool operator==(const LifParams &) const = default;
};

} // namespace snnmap
