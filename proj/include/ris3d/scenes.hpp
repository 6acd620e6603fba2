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


#ifndef RIS3D_SCENES_HPP
#define RIS3D_SCENES_HPP

#include "field.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace ris3d
{
    struct Expectation
    {
        std::string state;
        Direction peak;
        double tolerance_deg = 0.0;
    };

    struct ReferenceScenario
    {
        std::string name;
        Scene scene;
        std::map<std::string, ControlState> states;
        std::vector<Expectation> expected;
        int beam_face = 0; // face whose subarrays carry the beam states
    };

    inline constexpr double reference_frequency_hz = 26.0e9;

    /// Half-wavelength spacing at 26 GHz.
    inline double reference_spacing() { return wavelength(reference_frequency_hz) / 2.0; }

    // Steering azimuth (face-local, degrees) of subarrays p = 0, 1, 2.
    inline constexpr std::array<double, 3> reference_steer_deg = {30.0, 0.0, -30.0};

    namespace detail
    {
        // Three 4 x 4 subarrays stacked along the local z-axis, p = 0 on top.
        inline void add_column(Scene &scene, int face, int first_p, double y_offset, Region region, Polarization pol)
        {
            const double d = reference_spacing();
            const FaceFrame &f = scene.layout.face(face);
            for (int i = 0; i < 3; ++i)
            {
                SubarraySpec s;
                s.face_id = face;
                s.p = first_p + i;
                s.n = 4;
                s.d1 = d;
                s.d2 = d;
                s.center = f.origin + f.rotation * Vec3(0.0, y_offset, (1 - i) * 4.0 * d);
                s.steer = Direction::from_degrees(90.0, reference_steer_deg[i]);
                s.region = region;
                s.pol = pol;
                s.indexing = PhaseIndexing::one_based;
                scene.subarrays.push_back(s);
            }
        }

        struct BeamState
        {
            const char *name;
            std::array<int, 3> gates;
            std::array<double, 3> offsets_deg;
        };

        // Offsets of the +/-15 deg states are the 5 deg grid optimum of the offset search
        // (difference of -135 and +135 deg to the broadside subarray); the wide beam uses
        // the 135 / 0 / 135 deg pattern.
        inline const std::array<BeamState, 7> &beam_states()
        {
            static const std::array<BeamState, 7> s = {{
                {"phi_p30", {1, 0, 0}, {0.0, 0.0, 0.0}},
                {"phi_p15", {1, 1, 0}, {225.0, 0.0, 0.0}},
                {"phi_0", {0, 1, 0}, {0.0, 0.0, 0.0}},
                {"phi_m15", {0, 1, 1}, {0.0, 0.0, 135.0}},
                {"phi_m30", {0, 0, 1}, {0.0, 0.0, 0.0}},
                {"wide", {1, 1, 1}, {135.0, 0.0, 135.0}},
                {"off", {0, 0, 0}, {0.0, 0.0, 0.0}},
            }};
            return s;
        }

        inline ControlState blank_state(const Scene &scene, int illuminated)
        {
            ControlState st;
            st.illuminated_face = illuminated;
            for (const auto &s : scene.subarrays)
            {
                st.gates[key_of(s)] = 0;
                st.offsets[key_of(s)] = 0.0;
            }
            return st;
        }

        inline void add_beam_states(ReferenceScenario &sc, const ControlState &blank, int face, int first_p)
        {
            const FaceFrame &f = sc.scene.layout.face(face);
            for (const auto &b : beam_states())
            {
                ControlState st = blank;
                for (int i = 0; i < 3; ++i)
                {
                    st.gates[{face, first_p + i}] = b.gates[i];
                    st.offsets[{face, first_p + i}] = deg_to_rad(b.offsets_deg[i]);
                }
                sc.states[b.name] = st;
            }
            auto expect = [&](const char *name, double local_phi_deg, double tol) {
                const Vec3 u = f.rotation * Direction::from_degrees(90.0, local_phi_deg).unit_vector();
                sc.expected.push_back({name, Direction::from_vector(u), tol});
            };
            expect("phi_p30", 30.0, 2.0);
            expect("phi_p15", 15.0, 3.0);
            expect("phi_0", 0.0, 2.0);
            expect("phi_m15", -15.0, 3.0);
            expect("phi_m30", -30.0, 2.0);
        }

        // Full cube: each face carries a RECEIVE column (P1) at y_s = -2d and a
        // REFLECT column (P2) at y_s = +2d, an 8 x 12 element aperture per face.
        inline Scene full_cube()
        {
            Scene scene;
            const double d = reference_spacing();
            for (int f = 0; f < cube_face_count; ++f)
            {
                add_column(scene, f, 0, -2.0 * d, Region::receive, Polarization::p1);
                add_column(scene, f, 3, 2.0 * d, Region::reflect, Polarization::p2);
            }
            return scene;
        }
    } // namespace detail

    /// One illuminated face (0, +x) with three REFLECT subarrays steered to +30, 0, -30 deg.
    inline ReferenceScenario build_single_face_reference()
    {
        ReferenceScenario sc;
        sc.name = "reference";
        detail::add_column(sc.scene, 0, 0, 0.0, Region::reflect, Polarization::p2);
        detail::add_beam_states(sc, detail::blank_state(sc.scene, 0), 0, 0);
        sc.beam_face = 0;
        return sc;
    }

    /// Full cube, face 0 illuminated, beam formed by face 0's REFLECT column, no routing.
    inline ReferenceScenario build_reflection_scenario()
    {
        ReferenceScenario sc;
        sc.name = "reflection";
        sc.scene = detail::full_cube();
        ControlState blank = detail::blank_state(sc.scene, 0);
        for (int t : sc.scene.layout.neighbors(0))
            blank.routing[{0, t}] = 0;
        detail::add_beam_states(sc, blank, 0, 3);
        sc.beam_face = 0;
        return sc;
    }

    inline constexpr int transmission_neighbor = 2;

    /// Full cube, face 0 illuminated and routed to face 2 (+y), whose REFLECT column forms the beam.
    inline ReferenceScenario build_transmission_scenario()
    {
        ReferenceScenario sc;
        sc.name = "transmission";
        sc.scene = detail::full_cube();
        ControlState blank = detail::blank_state(sc.scene, 0);
        for (int t : sc.scene.layout.neighbors(0))
            blank.routing[{0, t}] = t == transmission_neighbor ? 1 : 0;
        detail::add_beam_states(sc, blank, transmission_neighbor, 3);
        sc.beam_face = transmission_neighbor;
        return sc;
    }

    inline ReferenceScenario build_scenario(const std::string &name)
    {
        if (name == "reference")
            return build_single_face_reference();
        if (name == "reflection")
            return build_reflection_scenario();
        if (name == "transmission")
            return build_transmission_scenario();
        throw std::invalid_argument("unknown scenario '" + name + "'");
    }

} // namespace ris3d

#endif // RIS3D_SCENES_HPP
