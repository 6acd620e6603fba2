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


#ifndef RIS3D_FIELD_HPP
#define RIS3D_FIELD_HPP

#include "control.hpp"
#include "element.hpp"
#include "geometry.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ris3d
{
    struct Scene
    {
        CubeLayout layout = CubeLayout::canonical();
        std::vector<SubarraySpec> subarrays;
        ElementModel element;

        const SubarraySpec *find(const SubarrayKey &k) const
        {
            for (const auto &s : subarrays)
                if (key_of(s) == k)
                    return &s;
            return nullptr;
        }

        bool operator==(const Scene &) const = default;
    };

    class InvalidState : public std::invalid_argument
    {
      public:
        explicit InvalidState(std::vector<Violation> v)
            : std::invalid_argument(describe(v)), violations(std::move(v)) {}

        std::vector<Violation> violations;

      private:
        static std::string describe(const std::vector<Violation> &v)
        {
            std::string s = "invalid control state:";
            for (const auto &x : v)
                s += " [" + x.key + ": " + x.message + "]";
            return s;
        }
    };

    /// Scene and state checks combined.
    inline std::vector<Violation> validate(const Scene &scene, const ControlState &state)
    {
        auto out = validate_subarrays(scene.layout, scene.subarrays);
        auto more = validate_state(state, scene.layout, scene.subarrays);
        out.insert(out.end(), more.begin(), more.end());
        return out;
    }

    /// Complex field per polarization channel, indexed by channel(Polarization).
    using FieldValue = std::array<std::complex<double>, channel_count>;

    /*!
     * Far-field evaluator for one (scene, state) pair.
     *
     * Construction validates the state and caches the active elements of every
     * participating face with their excitation. Evaluation is a pure function of the
     * direction, so one instance can be shared by concurrent readers.
     */
    class FarField
    {
      public:
        FarField(const Scene &scene, const ControlState &state) : element_(scene.element), k0_(scene.element.k0())
        {
            scene.element.validate();
            auto v = validate(scene, state);
            if (!v.empty())
                throw InvalidState(std::move(v));

            for (int f : participating_faces(state))
            {
                const std::complex<double> feed = face_feed(state, f);
                FaceTerms terms;
                terms.frame = scene.layout.face(f);
                for (const auto &sub : scene.subarrays)
                {
                    if (sub.face_id != f || state.gates.at(key_of(sub)) == 0 || feed == 0.0)
                        continue;
                    const auto pos = element_positions(terms.frame, sub.center, sub.n, sub.d1, sub.d2);
                    size_t idx = 0;
                    for (int i = 0; i < sub.n; ++i)
                        for (int j = 0; j < sub.n; ++j, ++idx)
                        {
                            std::complex<double> w =
                                feed * element_weight(state, sub, symmetric_index(i, sub.n), symmetric_index(j, sub.n), k0_);
                            if (state.incident && sub.region == Region::receive)
                                w *= std::polar(1.0, k0_ * state.incident->unit_vector().dot(pos[idx]));
                            terms.elements.push_back({pos[idx], w, channel(sub.pol)});
                        }
                }
                if (!terms.elements.empty())
                    faces_.push_back(std::move(terms));
            }
        }

        /// Array factor: excitation-weighted path phases, no element pattern.
        FieldValue array_factor(const Vec3 &u) const
        {
            FieldValue af{};
            for (const auto &face : faces_)
                accumulate(face, u, af, 1.0);
            return af;
        }

        /// Total field: per-face phasor sums weighted by that face's element pattern.
        FieldValue operator()(const Vec3 &u) const
        {
            FieldValue e{};
            for (const auto &face : faces_)
            {
                const LocalDirection loc = global_to_local_direction(face.frame, u);
                if (!loc.visible)
                    continue;
                const double pattern = element_field(element_, loc.theta, loc.phi);
                accumulate(face, u, e, pattern);
            }
            return e;
        }

        FieldValue operator()(const Direction &d) const { return (*this)(d.unit_vector()); }

        size_t active_element_count() const
        {
            size_t n = 0;
            for (const auto &f : faces_)
                n += f.elements.size();
            return n;
        }

      private:
        struct ActiveElement
        {
            Vec3 position;
            std::complex<double> weight;
            int channel;
        };

        struct FaceTerms
        {
            FaceFrame frame;
            std::vector<ActiveElement> elements;
        };

        void accumulate(const FaceTerms &face, const Vec3 &u, FieldValue &acc, double scale) const
        {
            FieldValue sum{};
            for (const auto &el : face.elements)
                sum[el.channel] += el.weight * std::polar(1.0, k0_ * u.dot(el.position));
            for (int c = 0; c < channel_count; ++c)
                acc[c] += scale * sum[c];
        }

        ElementModel element_;
        double k0_;
        std::vector<FaceTerms> faces_;
    };

    inline FieldValue array_factor(const Scene &scene, const ControlState &state, const Direction &u)
    {
        return FarField(scene, state).array_factor(u.unit_vector());
    }

    inline FieldValue far_field(const Scene &scene, const ControlState &state, const Direction &u)
    {
        return FarField(scene, state)(u);
    }

    // Complex field samples over a (theta, phi) lattice, [channel][i_theta][i_phi].
    struct PatternGrid
    {
        std::vector<double> theta_axis;
        std::vector<double> phi_axis;
        std::array<std::vector<std::complex<double>>, channel_count> samples;

        size_t rows() const { return theta_axis.size(); }
        size_t cols() const { return phi_axis.size(); }
        size_t index(size_t i, size_t k) const { return i * phi_axis.size() + k; }

        std::complex<double> at(Polarization pol, size_t i, size_t k) const { return samples[channel(pol)][index(i, k)]; }
        std::complex<double> &at(Polarization pol, size_t i, size_t k) { return samples[channel(pol)][index(i, k)]; }
        double magnitude(Polarization pol, size_t i, size_t k) const { return std::abs(at(pol, i, k)); }

        Direction direction(size_t i, size_t k) const { return {theta_axis[i], phi_axis[k]}; }

        bool same_axes(const PatternGrid &o) const { return theta_axis == o.theta_axis && phi_axis == o.phi_axis; }
    };

    /// Inclusive arithmetic axis start, start+step, ... up to stop (radians).
    inline std::vector<double> make_axis(double start, double stop, double step)
    {
        if (!(step > 0.0) || stop < start)
            throw std::invalid_argument("make_axis: need step > 0 and stop >= start");
        const auto count = static_cast<size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> axis(count);
        for (size_t i = 0; i < count; ++i)
            axis[i] = start + static_cast<double>(i) * step;
        return axis;
    }

    /// Axis built in degrees and converted once per sample, so grid values are exact multiples.
    inline std::vector<double> make_axis_deg(double start_deg, double stop_deg, double step_deg)
    {
        auto axis = make_axis(start_deg, stop_deg, step_deg);
        for (auto &a : axis)
            a = deg_to_rad(a);
        return axis;
    }

    /// theta in [0, 180] and phi in [0, 360) at a uniform step.
    inline std::pair<std::vector<double>, std::vector<double>> sphere_axes_deg(double step_deg)
    {
        auto theta = make_axis_deg(0.0, 180.0, step_deg);
        auto phi = make_axis_deg(0.0, 360.0 - step_deg, step_deg);
        return {std::move(theta), std::move(phi)};
    }

    inline void check_axis(const std::vector<double> &axis, const char *name)
    {
        if (axis.empty())
            throw std::invalid_argument(std::string("pattern_grid: empty ") + name + " axis");
        for (size_t i = 1; i < axis.size(); ++i)
            if (!(axis[i] > axis[i - 1]))
                throw std::invalid_argument(std::string("pattern_grid: ") + name + " axis not strictly ascending");
    }

    /*!
     * Samples the far field over a grid.
     *
     * Rows are split between `workers` threads. Every sample is computed independently
     * and written to its own slot, so the result is bit-identical for any worker count.
     */
    inline PatternGrid pattern_grid(const FarField &field, std::vector<double> theta_axis, std::vector<double> phi_axis,
                                    unsigned workers = 1)
    {
        check_axis(theta_axis, "theta");
        check_axis(phi_axis, "phi");

        PatternGrid g;
        g.theta_axis = std::move(theta_axis);
        g.phi_axis = std::move(phi_axis);
        for (auto &ch : g.samples)
            ch.assign(g.rows() * g.cols(), {0.0, 0.0});

        auto fill_rows = [&](size_t begin, size_t end) {
            for (size_t i = begin; i < end; ++i)
                for (size_t k = 0; k < g.cols(); ++k)
                {
                    const FieldValue v = field(g.direction(i, k));
                    for (int c = 0; c < channel_count; ++c)
                        g.samples[c][g.index(i, k)] = v[c];
                }
        };

        workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(g.rows())));
        if (workers == 1)
        {
            fill_rows(0, g.rows());
            return g;
        }
        std::vector<std::thread> pool;
        const size_t chunk = (g.rows() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w)
        {
            const size_t b = w * chunk, e = std::min(g.rows(), b + chunk);
            if (b < e)
                pool.emplace_back(fill_rows, b, e);
        }
        for (auto &t : pool)
            t.join();
        return g;
    }

    inline PatternGrid pattern_grid(const Scene &scene, const ControlState &state, std::vector<double> theta_axis,
                                    std::vector<double> phi_axis, unsigned workers = 1)
    {
        return pattern_grid(FarField(scene, state), std::move(theta_axis), std::move(phi_axis), workers);
    }

} // namespace ris3d

#endif // RIS3D_FIELD_HPP
