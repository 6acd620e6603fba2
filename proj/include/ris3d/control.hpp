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


#ifndef RIS3D_CONTROL_HPP
#define RIS3D_CONTROL_HPP

#include "geometry.hpp"

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ris3d
{
    enum class Region
    {
        receive,
        reflect
    };

    enum class Polarization
    {
        p1 = 0,
        p2 = 1
    };

    inline constexpr int channel_count = 2;
    constexpr int channel(Polarization p) { return static_cast<int>(p); }

    /*!
     * Element index used when assigning the progressive phase.
     *
     * `centered` references the phase to the subarray center (indices -1.5..+1.5 for a
     * 4 x 4 block). `one_based` numbers the elements 1..N along each axis, which adds a
     * steering-dependent constant phase to every subarray. Element positions are always
     * centered; only the phase reference moves.
     */
    enum class PhaseIndexing
    {
        centered,
        one_based
    };

    struct SubarraySpec
    {
        int face_id = 0;
        int p = 0;
        int n = 4;
        double d1 = 0.0;
        double d2 = 0.0;
        Vec3 center = Vec3::Zero();
        Direction steer{pi / 2, 0.0}; // in the face-local frame
        Region region = Region::reflect;
        Polarization pol = Polarization::p2;
        PhaseIndexing indexing = PhaseIndexing::centered;

        bool operator==(const SubarraySpec &o) const
        {
            return face_id == o.face_id && p == o.p && n == o.n && d1 == o.d1 && d2 == o.d2 && center == o.center &&
                   steer == o.steer && region == o.region && pol == o.pol && indexing == o.indexing;
        }
    };

    using SubarrayKey = std::pair<int, int>; // (face_id, p)
    using EdgeKey = std::pair<int, int>;     // ordered (s, t)

    inline SubarrayKey key_of(const SubarraySpec &s) { return {s.face_id, s.p}; }

    struct ControlState
    {
        std::map<SubarrayKey, int> gates;
        std::map<SubarrayKey, double> offsets; // radians, [0, 2*pi)
        std::map<EdgeKey, int> routing;
        std::map<EdgeKey, std::complex<double>> transfer; // optional, defaults to 1
        int illuminated_face = 0;

        // Plane-wave incidence taper on RECEIVE elements; disabled when empty.
        std::optional<Direction> incident;

        bool operator==(const ControlState &) const = default;
    };

    class StateIncomplete : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    struct Violation
    {
        std::string key;
        std::string message;

        bool operator==(const Violation &) const = default;
    };

    inline std::string subarray_name(const SubarrayKey &k) { return std::to_string(k.first) + "/" + std::to_string(k.second); }
    inline std::string edge_name(const EdgeKey &k) { return std::to_string(k.first) + "->" + std::to_string(k.second); }

    /// Steering direction projected onto the face's tangential axes (y_s, z_s).
    inline std::pair<double, double> tangential_steering(const Direction &steer)
    {
        const Vec3 u = steer.unit_vector();
        return {u.y(), u.z()};
    }

    /// Index actually used in the phase law for symmetric index `a` of an n-element axis.
    inline double phase_index(const SubarraySpec &sub, double a)
    {
        return sub.indexing == PhaseIndexing::one_based ? a + 0.5 * (sub.n + 1) : a;
    }

    /*!
     * Progressive phase of element (a, b) of a subarray, wrapped to (-pi, pi].
     *
     * psi = -k0 (a d1 u_y + b d2 u_z), where (u_y, u_z) are the tangential components of the
     * subarray's local steering direction. (a, b) are symmetric indices; the subarray's
     * PhaseIndexing decides the reference element.
     */
    inline double progressive_phase(const SubarraySpec &sub, double a, double b, double k0)
    {
        const auto [uy, uz] = tangential_steering(sub.steer);
        const double psi = -k0 * (phase_index(sub, a) * sub.d1 * uy + phase_index(sub, b) * sub.d2 * uz);
        return wrap_pi(psi);
    }

    /// Excitation A * exp(j Phi) * exp(j psi) of element (a, b).
    inline std::complex<double> element_weight(const ControlState &state, const SubarraySpec &sub, double a, double b,
                                               double k0)
    {
        const auto key = key_of(sub);
        const auto g = state.gates.find(key);
        if (g == state.gates.end())
            throw StateIncomplete("element_weight: missing gate for subarray " + subarray_name(key));
        const auto o = state.offsets.find(key);
        if (o == state.offsets.end())
            throw StateIncomplete("element_weight: missing offset for subarray " + subarray_name(key));
        if (g->second == 0)
            return {0.0, 0.0};
        return std::polar(1.0, o->second) * std::polar(1.0, progressive_phase(sub, a, b, k0));
    }

    /// The illuminated face plus every face it routes to.
    inline std::set<int> participating_faces(const ControlState &state)
    {
        std::set<int> out{state.illuminated_face};
        for (const auto &[edge, bit] : state.routing)
            if (edge.first == state.illuminated_face && bit == 1)
                out.insert(edge.second);
        return out;
    }

    /// Complex amplitude delivered to subarrays on `face_id`; zero when the face does not participate.
    inline std::complex<double> face_feed(const ControlState &state, int face_id)
    {
        if (face_id == state.illuminated_face)
            return {1.0, 0.0};
        const EdgeKey edge{state.illuminated_face, face_id};
        const auto r = state.routing.find(edge);
        if (r == state.routing.end() || r->second != 1)
            return {0.0, 0.0};
        const auto t = state.transfer.find(edge);
        return t == state.transfer.end() ? std::complex<double>(1.0, 0.0) : t->second;
    }

    /// Structural checks on a subarray list; independent of any control state.
    inline std::vector<Violation> validate_subarrays(const CubeLayout &layout, const std::vector<SubarraySpec> &subs)
    {
        std::vector<Violation> out;
        std::set<SubarrayKey> seen;
        std::map<std::pair<int, Region>, Polarization> region_pol;
        for (const auto &s : subs)
        {
            const std::string k = "subarrays[" + subarray_name(key_of(s)) + "]";
            if (!CubeLayout::valid_face(s.face_id))
                out.push_back({k, "face does not exist"});
            if (!seen.insert(key_of(s)).second)
                out.push_back({k, "duplicate subarray key"});
            if (s.n < 1)
                out.push_back({k, "element count per side must be >= 1"});
            if (!(s.d1 > 0.0) || !(s.d2 > 0.0))
                out.push_back({k, "element spacing must be positive"});
            if (CubeLayout::valid_face(s.face_id))
            {
                const double off_plane = (s.center - layout.face(s.face_id).origin).dot(layout.face(s.face_id).normal());
                if (std::abs(off_plane) > 1e-12)
                    out.push_back({k, "center not in face plane"});
            }
            const auto [it, inserted] = region_pol.try_emplace({s.face_id, s.region}, s.pol);
            if (!inserted && it->second != s.pol)
                out.push_back({k, "mixed polarization within one region"});
        }
        for (const auto &[fr, pol] : region_pol)
        {
            if (fr.second != Region::receive)
                continue;
            const auto other = region_pol.find({fr.first, Region::reflect});
            if (other != region_pol.end() && other->second == pol)
                out.push_back({"face " + std::to_string(fr.first), "receive and reflect regions share a polarization"});
        }
        return out;
    }

    /// All violations of `state` against the scene; an empty result means valid.
    inline std::vector<Violation> validate_state(const ControlState &state, const CubeLayout &layout,
                                                 const std::vector<SubarraySpec> &subs)
    {
        std::vector<Violation> out;
        std::set<SubarrayKey> keys;
        for (const auto &s : subs)
            keys.insert(key_of(s));

        if (!CubeLayout::valid_face(state.illuminated_face))
            out.push_back({"illuminated_face", "face does not exist"});

        for (const auto &[k, g] : state.gates)
        {
            if (!keys.count(k))
                out.push_back({"gates[" + subarray_name(k) + "]", "no such subarray"});
            if (g != 0 && g != 1)
                out.push_back({"gates[" + subarray_name(k) + "]", "gate not binary"});
        }
        for (const auto &[k, phi] : state.offsets)
        {
            if (!keys.count(k))
                out.push_back({"offsets[" + subarray_name(k) + "]", "no such subarray"});
            if (!(phi >= 0.0 && phi < two_pi))
                out.push_back({"offsets[" + subarray_name(k) + "]", "offset outside [0, 360) deg"});
        }
        for (const auto &k : keys)
        {
            if (!state.gates.count(k))
                out.push_back({"gates[" + subarray_name(k) + "]", "missing gate"});
            if (!state.offsets.count(k))
                out.push_back({"offsets[" + subarray_name(k) + "]", "missing offset"});
        }
        for (const auto &[e, b] : state.routing)
        {
            const std::string k = "routing[" + edge_name(e) + "]";
            if (b != 0 && b != 1)
                out.push_back({k, "routing bit not binary"});
            if (!layout.adjacent(e.first, e.second))
                out.push_back({k, "not adjacent"});
            if (b == 1 && e.first == state.illuminated_face)
            {
                const bool has_reflect = std::any_of(subs.begin(), subs.end(), [&](const SubarraySpec &s) {
                    return s.face_id == e.second && s.region == Region::reflect;
                });
                if (!has_reflect)
                    out.push_back({k, "target face has no reflect subarray"});
            }
        }
        for (const auto &[e, c] : state.transfer)
        {
            if (!state.routing.count(e))
                out.push_back({"transfer[" + edge_name(e) + "]", "transfer without routing entry"});
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                out.push_back({"transfer[" + edge_name(e) + "]", "transfer coefficient not finite"});
        }
        return out;
    }

} // namespace ris3d

#endif // RIS3D_CONTROL_HPP
