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


#include <ris3d/field.hpp>
#include <ris3d/scenes.hpp>

#include <gtest/gtest.h>

#include <algorithm>

using namespace ris3d;

namespace
{
    SubarraySpec sub_at(double phi_deg, PhaseIndexing idx = PhaseIndexing::centered)
    {
        SubarraySpec s;
        s.d1 = s.d2 = reference_spacing();
        s.center = face_frame(0).origin;
        s.steer = Direction::from_degrees(90.0, phi_deg);
        s.indexing = idx;
        return s;
    }

    bool has_violation(const std::vector<Violation> &v, const std::string &msg)
    {
        return std::any_of(v.begin(), v.end(), [&](const Violation &x) { return x.message == msg; });
    }
} // namespace

TEST(ProgressivePhase, HalfWaveSteeredTo30)
{
    // lambda/2 spacing: k0 d = pi, tangential component sin(30 deg) = 1/2
    const auto s = sub_at(30.0);
    const double k0 = two_pi / wavelength(26e9);
    EXPECT_NEAR(progressive_phase(s, 1.0, 0.0, k0), -pi / 2, 1e-12);
    EXPECT_NEAR(progressive_phase(s, -1.0, 0.0, k0), pi / 2, 1e-12);
    EXPECT_EQ(progressive_phase(s, 0.0, 0.0, k0), 0.0);
    // elevation fixed at 90 deg: no phase along z
    EXPECT_NEAR(progressive_phase(s, 0.0, 1.5, k0), 0.0, 1e-12);
}

TEST(ProgressivePhase, Broadside)
{
    const auto s = sub_at(0.0);
    for (double a : {-1.5, -0.5, 0.5, 1.5})
        EXPECT_NEAR(progressive_phase(s, a, a, two_pi / wavelength(26e9)), 0.0, 1e-12);
}

TEST(ProgressivePhase, WrappedIntoHalfOpenInterval)
{
    const double k0 = two_pi / wavelength(26e9);
    for (double phi = -80.0; phi <= 80.0; phi += 7.0)
    {
        auto s = sub_at(phi, PhaseIndexing::one_based);
        s.n = 9;
        for (int i = 0; i < s.n; ++i)
        {
            const double p = progressive_phase(s, symmetric_index(i, s.n), 0.0, k0);
            EXPECT_GT(p, -pi);
            EXPECT_LE(p, pi);
        }
    }
}

TEST(ProgressivePhase, OneBasedAddsConstantPerSubarray)
{
    const double k0 = two_pi / wavelength(26e9);
    const auto c = sub_at(30.0), o = sub_at(30.0, PhaseIndexing::one_based);
    const auto w = [](double x) { return std::polar(1.0, x); };
    const std::complex<double> ref = w(progressive_phase(o, -1.5, 0.0, k0)) / w(progressive_phase(c, -1.5, 0.0, k0));
    for (double a : {-0.5, 0.5, 1.5})
    {
        const auto r = w(progressive_phase(o, a, 0.0, k0)) / w(progressive_phase(c, a, 0.0, k0));
        EXPECT_LT(std::abs(r - ref), 1e-12);
    }
    // shift of (n + 1) / 2 = 2.5 elements, half a wavelength each, sin 30 deg
    EXPECT_LT(std::abs(ref - w(-2.5 * pi / 2)), 1e-12);
}

TEST(ElementWeight, GateAndOffset)
{
    auto s = sub_at(0.0);
    ControlState st;
    st.gates[key_of(s)] = 1;
    st.offsets[key_of(s)] = pi / 3;
    const double k0 = s.d1 > 0 ? two_pi / wavelength(26e9) : 0.0;
    EXPECT_LT(std::abs(element_weight(st, s, 0.5, 0.5, k0) - std::polar(1.0, pi / 3)), 1e-12);
    st.gates[key_of(s)] = 0;
    EXPECT_EQ(element_weight(st, s, 0.5, 0.5, k0), std::complex<double>(0.0, 0.0));
}

TEST(ElementWeight, MissingEntries)
{
    auto s = sub_at(0.0);
    ControlState st;
    EXPECT_THROW(element_weight(st, s, 0, 0, 1.0), StateIncomplete);
    st.gates[key_of(s)] = 1;
    EXPECT_THROW(element_weight(st, s, 0, 0, 1.0), StateIncomplete);
}

TEST(Routing, ParticipatingFaces)
{
    ControlState st;
    st.illuminated_face = 0;
    st.routing[{0, 2}] = 1;
    st.routing[{0, 4}] = 0;
    st.routing[{3, 4}] = 1; // not from the illuminated face
    EXPECT_EQ(participating_faces(st), (std::set<int>{0, 2}));
    EXPECT_EQ(face_feed(st, 0), std::complex<double>(1.0, 0.0));
    EXPECT_EQ(face_feed(st, 2), std::complex<double>(1.0, 0.0));
    EXPECT_EQ(face_feed(st, 4), std::complex<double>(0.0, 0.0));
    st.transfer[{0, 2}] = {0.5, -0.5};
    EXPECT_EQ(face_feed(st, 2), std::complex<double>(0.5, -0.5));
}

TEST(Validate, ReferenceStatesAreValid)
{
    for (const char *name : {"reference", "reflection", "transmission"})
    {
        const auto sc = build_scenario(name);
        for (const auto &[n, st] : sc.states)
            EXPECT_TRUE(validate(sc.scene, st).empty()) << name << " " << n;
    }
}

TEST(Validate, ReportsEveryViolation)
{
    const auto sc = build_reflection_scenario();
    ControlState st = sc.states.at("phi_0");
    st.gates[{0, 3}] = 2;
    st.offsets[{0, 4}] = two_pi;
    st.offsets.erase({0, 5});
    st.routing[{0, 1}] = 1; // opposite face
    st.gates[{9, 0}] = 1;
    const auto v = validate(sc.scene, st);
    EXPECT_TRUE(has_violation(v, "gate not binary"));
    EXPECT_TRUE(has_violation(v, "offset outside [0, 360) deg"));
    EXPECT_TRUE(has_violation(v, "missing offset"));
    EXPECT_TRUE(has_violation(v, "not adjacent"));
    EXPECT_TRUE(has_violation(v, "no such subarray"));
    EXPECT_GE(v.size(), 5u);
    EXPECT_THROW(FarField(sc.scene, st), InvalidState);
}

TEST(Validate, RoutingToFaceWithoutReflect)
{
    auto sc = build_single_face_reference();
    ControlState st = sc.states.at("phi_0");
    st.routing[{0, 2}] = 1;
    EXPECT_TRUE(has_violation(validate(sc.scene, st), "target face has no reflect subarray"));
    st.routing[{0, 2}] = 0;
    EXPECT_TRUE(validate(sc.scene, st).empty());
}

TEST(Validate, TransferNeedsRouting)
{
    auto sc = build_transmission_scenario();
    ControlState st = sc.states.at("phi_0");
    st.transfer[{0, 4}] = 1.0;
    EXPECT_TRUE(validate(sc.scene, st).empty());
    st.transfer[{0, 1}] = 1.0;
    EXPECT_TRUE(has_violation(validate(sc.scene, st), "transfer without routing entry"));
    st.transfer.erase({0, 1});
    st.transfer[{0, 2}] = std::complex<double>(std::nan(""), 0.0);
    EXPECT_TRUE(has_violation(validate(sc.scene, st), "transfer coefficient not finite"));
}

TEST(ValidateSubarrays, StructuralChecks)
{
    const CubeLayout c = CubeLayout::canonical();
    auto a = sub_at(0.0);
    auto b = a;
    EXPECT_TRUE(has_violation(validate_subarrays(c, {a, b}), "duplicate subarray key"));
    b.p = 1;
    b.center = a.center + Vec3(1e-6, 0, 0);
    EXPECT_TRUE(has_violation(validate_subarrays(c, {a, b}), "center not in face plane"));
    b.center = a.center;
    b.pol = Polarization::p1;
    EXPECT_TRUE(has_violation(validate_subarrays(c, {a, b}), "mixed polarization within one region"));
    b.region = Region::receive;
    b.pol = Polarization::p2;
    EXPECT_TRUE(has_violation(validate_subarrays(c, {a, b}), "receive and reflect regions share a polarization"));
    b.pol = Polarization::p1;
    EXPECT_TRUE(validate_subarrays(c, {a, b}).empty());
    b.d2 = 0.0;
    EXPECT_TRUE(has_violation(validate_subarrays(c, {a, b}), "element spacing must be positive"));
}
