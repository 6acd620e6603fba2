// SPDX-License-Identifier: Apache-2.0
//
// ris3d - analytical beam model for cube-shaped reconfigurable intelligent surfaces
// Copyright (C) 2026 The ris3d authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// Prints the azimuth-cut peak and beamwidth of every beam state of the single-face reference.

#include <ris3d/ris3d.hpp>

#include <cstdio>

int main()
{
    using namespace ris3d;
    const ReferenceScenario sc = build_single_face_reference();
    const auto phi = make_axis_deg(0.0, 359.5, 0.5);

    std::printf("%-8s %10s %10s %10s\n", "state", "peak_deg", "hpbw_deg", "sll_db");
    for (const auto &[name, state] : sc.states)
    {
        const auto grid = pattern_grid(sc.scene, state, {pi / 2}, phi);
        const auto report = beam_report(grid, Polarization::p2);
        if (!report.has_peak())
        {
            std::printf("%-8s %10s\n", name.c_str(), "no peak");
            continue;
        }
        std::printf("%-8s %10.1f %10.2f %10.2f\n", name.c_str(), rad_to_deg(wrap_pi(report.peak_direction->phi)),
                    report.hpbw_deg.value_or(-1.0), report.sll_db);
    }
    return 0;
}
