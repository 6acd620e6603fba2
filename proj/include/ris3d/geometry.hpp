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

#ifndef RIS3D_GEOMETRY_HPP
#define RIS3D_GEOMETRY_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ris3d
{
    using Vec3 = Eigen::Vector3d;
    using Mat3 = Eigen::Matrix3d;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0; // m/s, exact

    constexpr double deg_to_rad(double deg) { return deg * (pi / 180.0); }
    constexpr double rad_to_deg(double rad) { return rad * (180.0 / pi); }

    /// Free-space wavelength in meters.
    constexpr double wavelength(double frequency_hz) { return speed_of_light / frequency_hz; }

    /// Wraps an angle to [0, 2*pi).
    inline double wrap_two_pi(double a)
    {
        double r = std::fmod(a, two_pi);
        if (r < 0.0)
            r += two_pi;
        if (r >= two_pi)
            r = 0.0;
        return r;
    }

    /// Wraps an angle to (-pi, pi].
    inline double wrap_pi(double a)
    {
        double r = std::remainder(a, two_pi);
        if (r <= -pi)
            r += two_pi;
        return r;
    }

    // Spherical direction: theta from +z, phi from +x in the xy-plane.
    struct Direction
    {
        double theta = 0.0;
        double phi = 0.0;

        Vec3 unit_vector() const
        {
            const double st = std::sin(theta);
            return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
        }

        /// Canonical form with theta in [0, pi] and phi in [0, 2*pi).
        Direction normalized() const { return from_vector(unit_vector()); }

        static Direction from_vector(const Vec3 &v)
        {
            const double len = v.norm();
            if (len == 0.0)
                throw std::invalid_argument("Direction::from_vector: zero-length vector");
            const double z = std::clamp(v.z() / len, -1.0, 1.0);
            return {std::acos(z), wrap_two_pi(std::atan2(v.y(), v.x()))};
        }

        static Direction from_degrees(double theta_deg, double phi_deg)
        {
            return {deg_to_rad(theta_deg), deg_to_rad(phi_deg)};
        }

        bool operator==(const Direction &) const = default;
    };

    /// Great-circle angle between two directions in radians.
    inline double angular_distance(const Direction &a, const Direction &b)
    {
        const Vec3 u = a.unit_vector();
        const Vec3 v = b.unit_vector();
        // atan2 form stays accurate for nearly parallel vectors
        return std::atan2(u.cross(v).norm(), u.dot(v));
    }

    // Face frame: rotation maps local (x_s, y_s, z_s) into global coordinates.
    // Column 0 of the rotation is the outward normal.
    struct FaceFrame
    {
        int face_id = 0;
        Mat3 rotation = Mat3::Identity();
        Vec3 origin = Vec3::Zero();

        Vec3 normal() const { return rotation.col(0); }
        Vec3 tangent_y() const { return rotation.col(1); }
        Vec3 tangent_z() const { return rotation.col(2); }

        bool operator==(const FaceFrame &o) const
        {
            return face_id == o.face_id && rotation == o.rotation && origin == o.origin;
        }
    };

    /// Edge length of a cube whose faces hold 12 x 12 half-wavelength cells at 26 GHz.
    inline double default_edge_length()
    {
        return 12.0 * wavelength(26.0e9) / 2.0;
    }

    inline constexpr int cube_face_count = 6;

    /// Canonical frame of a cube face.
    ///
    /// Faces are enumerated 0:+x, 1:-x, 2:+y, 3:-y, 4:+z, 5:-z. Side faces (0-3) use
    /// global +z as their local z-axis, top and bottom (4, 5) use global +x. The local
    /// y-axis completes a right-handed frame, y_s = z_s x x_s. The origin sits at the
    /// face center of an axis-aligned cube centered on the global origin.
    inline FaceFrame face_frame(int face_id, double edge_length = default_edge_length())
    {
        if (face_id < 0 || face_id >= cube_face_count)
            throw std::invalid_argument("face_frame: face_id " + std::to_string(face_id) + " out of range 0..5");

        static const std::array<Vec3, cube_face_count> normals = {
            Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)};

        const Vec3 x_s = normals[face_id];
        const Vec3 z_s = face_id < 4 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
        const Vec3 y_s = z_s.cross(x_s);

        FaceFrame f;
        f.face_id = face_id;
        f.rotation.col(0) = x_s;
        f.rotation.col(1) = y_s;
        f.rotation.col(2) = z_s;
        f.origin = 0.5 * edge_length * x_s;
        return f;
    }

    class CubeLayout
    {
      public:
        std::array<FaceFrame, cube_face_count> faces;
        double edge_length = default_edge_length();

        static CubeLayout canonical(double edge_length = default_edge_length())
        {
            if (!(edge_length > 0.0))
                throw std::invalid_argument("CubeLayout: edge_length must be positive");
            CubeLayout c;
            c.edge_length = edge_length;
            for (int s = 0; s < cube_face_count; ++s)
                c.faces[s] = face_frame(s, edge_length);
            return c;
        }

        /// Rigid rotation of the whole layout about the global origin.
        CubeLayout rotated(const Mat3 &q) const
        {
            CubeLayout c = *this;
            for (auto &f : c.faces)
            {
                f.rotation = q * f.rotation;
                f.origin = q * f.origin;
            }
            return c;
        }

        const FaceFrame &face(int face_id) const
        {
            if (face_id < 0 || face_id >= cube_face_count)
                throw std::invalid_argument("CubeLayout: face_id " + std::to_string(face_id) + " out of range 0..5");
            return faces[face_id];
        }

        static bool valid_face(int face_id) { return face_id >= 0 && face_id < cube_face_count; }

        // Two faces share an edge iff their normals are orthogonal.
        bool adjacent(int s, int t) const
        {
            if (!valid_face(s) || !valid_face(t) || s == t)
                return false;
            return std::abs(faces[s].normal().dot(faces[t].normal())) < 1e-9;
        }

        std::vector<int> neighbors(int s) const
        {
            std::vector<int> out;
            for (int t = 0; t < cube_face_count; ++t)
                if (adjacent(s, t))
                    out.push_back(t);
            return out;
        }

        bool is_axis_aligned() const
        {
            for (const auto &f : faces)
            {
                const Vec3 n = f.normal();
                const double m = n.cwiseAbs().maxCoeff();
                if (std::abs(m - 1.0) > 1e-12)
                    return false;
            }
            return true;
        }

        bool operator==(const CubeLayout &o) const { return edge_length == o.edge_length && faces == o.faces; }
    };

    // Observation direction expressed in a face's local frame.
    // theta_s is measured from z_s, phi_s from x_s in the x_s-y_s plane, so the
    // face broadside is (90 deg, 0 deg).
    struct LocalDirection
    {
        double theta = 0.0;
        double phi = 0.0;
        bool visible = false;
        Vec3 local = Vec3::Zero();
    };

    inline LocalDirection global_to_local_direction(const FaceFrame &frame, const Vec3 &u)
    {
        LocalDirection d;
        d.local = frame.rotation.transpose() * u;
        const double z = std::clamp(d.local.z(), -1.0, 1.0);
        d.theta = std::acos(z);
        d.phi = wrap_two_pi(std::atan2(d.local.y(), d.local.x()));
        d.visible = d.local.x() >= 0.0;
        return d;
    }

    inline LocalDirection global_to_local_direction(const FaceFrame &frame, const Direction &u)
    {
        return global_to_local_direction(frame, u.unit_vector());
    }

    /// Fractional element index symmetric about the subarray center, e.g. -1.5..+1.5 for n = 4.
    constexpr double symmetric_index(int i, int n) { return static_cast<double>(i) - 0.5 * (n - 1); }

    /// Global positions of an n x n element block centered at `center`.
    ///
    /// Element (i, j) sits at center + R * [0, a*d1, b*d2] with a, b the symmetric indices
    /// of i and j. Row-major order: i walks the local y-axis, j the local z-axis.
    inline std::vector<Vec3> element_positions(const FaceFrame &frame, const Vec3 &center, int n, double d1, double d2)
    {
        if (n < 1)
            throw std::invalid_argument("element_positions: element count per side must be >= 1");
        if (!(d1 > 0.0) || !(d2 > 0.0))
            throw std::invalid_argument("element_positions: element spacings must be positive");

        std::vector<Vec3> out;
        out.reserve(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out.push_back(center + frame.rotation * Vec3(0.0, symmetric_index(i, n) * d1, symmetric_index(j, n) * d2));
        return out;
    }

} // namespace ris3d

#endif // RIS3D_GEOMETRY_HPP
