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


#ifndef RIS3D_ANALYSIS_HPP
#define RIS3D_ANALYSIS_HPP

#include "field.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ris3d
{
    inline constexpr double db_floor = -100.0;

    /// 20 log10(ratio), clamped to the -100 dB floor.
    inline double amplitude_db(double ratio)
    {
        if (!(ratio > 0.0))
            return db_floor;
        return std::max(db_floor, 20.0 * std::log10(ratio));
    }

    struct Peak
    {
        Direction direction;
        size_t i_theta = 0;
        size_t i_phi = 0;
        double magnitude = 0.0;
    };

    /// Sample of maximum magnitude, lowest theta index then lowest phi index on ties.
    /// Empty for an all-zero grid.
    inline std::optional<Peak> peak_direction(const PatternGrid &grid, Polarization pol)
    {
        if (grid.rows() == 0 || grid.cols() == 0)
            throw std::invalid_argument("peak_direction: empty grid");
        std::optional<Peak> best;
        for (size_t i = 0; i < grid.rows(); ++i)
            for (size_t k = 0; k < grid.cols(); ++k)
            {
                const double m = grid.magnitude(pol, i, k);
                if (m > 0.0 && (!best || m > best->magnitude))
                    best = Peak{grid.direction(i, k), i, k, m};
            }
        return best;
    }

    enum class CutPlane
    {
        constant_theta, // sweeps phi
        constant_phi    // sweeps theta
    };

    struct Cut
    {
        CutPlane plane = CutPlane::constant_theta;
        double constant = 0.0;
        std::vector<double> angles; // radians, ascending
        std::vector<double> magnitude;
        std::vector<double> mag_db; // normalized to the cut maximum
        bool periodic = false;      // angles cover a full circle uniformly

        size_t size() const { return angles.size(); }
    };

    inline bool covers_full_circle(const std::vector<double> &axis)
    {
        if (axis.size() < 3)
            return false;
        const double step = axis[1] - axis[0];
        for (size_t i = 1; i < axis.size(); ++i)
            if (std::abs(axis[i] - axis[i - 1] - step) > 1e-9)
                return false;
        return std::abs(step * static_cast<double>(axis.size()) - two_pi) < 1e-9;
    }

    /// Builds a cut from raw magnitudes; used by `cut` and for synthetic patterns.
    inline Cut make_cut(std::vector<double> angles, std::vector<double> magnitude, bool periodic = false)
    {
        if (angles.size() != magnitude.size() || angles.empty())
            throw std::invalid_argument("make_cut: angles and magnitudes must be non-empty and equal length");
        Cut c;
        c.angles = std::move(angles);
        c.magnitude = std::move(magnitude);
        c.periodic = periodic;
        const double mx = *std::max_element(c.magnitude.begin(), c.magnitude.end());
        c.mag_db.resize(c.size());
        for (size_t i = 0; i < c.size(); ++i)
        {
            if (mx > 0.0 && c.magnitude[i] == mx)
                c.mag_db[i] = 0.0;
            else
                c.mag_db[i] = mx > 0.0 ? amplitude_db(c.magnitude[i] / mx) : db_floor;
        }
        return c;
    }

    inline size_t axis_index(const std::vector<double> &axis, double value, const char *what)
    {
        for (size_t i = 0; i < axis.size(); ++i)
            if (std::abs(axis[i] - value) < 1e-9)
                return i;
        throw std::invalid_argument(std::string("cut: ") + what + " value is not on a grid line");
    }

    /// One row or column of a grid, normalized so its maximum is 0 dB.
    inline Cut cut(const PatternGrid &grid, Polarization pol, CutPlane plane, double value)
    {
        std::vector<double> angles, mags;
        if (plane == CutPlane::constant_theta)
        {
            const size_t i = axis_index(grid.theta_axis, value, "theta");
            angles = grid.phi_axis;
            for (size_t k = 0; k < grid.cols(); ++k)
                mags.push_back(grid.magnitude(pol, i, k));
        }
        else
        {
            const size_t k = axis_index(grid.phi_axis, value, "phi");
            angles = grid.theta_axis;
            for (size_t i = 0; i < grid.rows(); ++i)
                mags.push_back(grid.magnitude(pol, i, k));
        }
        const bool periodic = plane == CutPlane::constant_theta && covers_full_circle(angles);
        Cut c = make_cut(std::move(angles), std::move(mags), periodic);
        c.plane = plane;
        c.constant = grid.theta_axis.empty() ? 0.0 : value;
        return c;
    }

    namespace detail
    {
        // Index walker over a cut; wraps when periodic.
        struct CutWalker
        {
            const Cut &c;

            long n() const { return static_cast<long>(c.size()); }
            bool valid(long i) const { return c.periodic || (i >= 0 && i < n()); }
            size_t wrap(long i) const { return static_cast<size_t>(((i % n()) + n()) % n()); }
            double mag(long i) const { return c.magnitude[wrap(i)]; }

            // Unwrapped angle for position i.
            double angle(long i) const
            {
                const size_t w = wrap(i);
                const long turns = (i - static_cast<long>(w)) / n();
                return c.angles[w] + static_cast<double>(turns) * two_pi;
            }
        };

        inline long first_peak(const Cut &c)
        {
            long best = 0;
            for (size_t i = 1; i < c.size(); ++i)
                if (c.magnitude[i] > c.magnitude[static_cast<size_t>(best)])
                    best = static_cast<long>(i);
            return best;
        }

        // Angle where the pattern first drops below `level` walking from `peak` in
        // direction `dir`; empty when it never does.
        inline std::optional<double> crossing(const CutWalker &w, long peak, int dir, double level)
        {
            for (long s = 1; s < w.n(); ++s)
            {
                const long j = peak + dir * s;
                if (!w.valid(j))
                    return std::nullopt;
                if (w.mag(j) < level)
                {
                    const long prev = j - dir;
                    const double a = w.mag(prev), b = w.mag(j);
                    const double t = (a - level) / (a - b);
                    return w.angle(prev) + t * (w.angle(j) - w.angle(prev));
                }
            }
            return std::nullopt;
        }

        // Main-lobe boundary on one side: first local minimum below -20 dB, otherwise the
        // first strict local minimum, otherwise the last reachable sample.
        inline long lobe_edge(const CutWalker &w, long peak, int dir, double peak_mag)
        {
            const double deep = peak_mag * std::pow(10.0, -20.0 / 20.0);
            std::optional<long> strict;
            long last = peak;
            for (long s = 1; s < w.n(); ++s)
            {
                const long j = peak + dir * s;
                if (!w.valid(j + dir) || !w.valid(j))
                    break;
                last = j;
                const double m = w.mag(j), a = w.mag(j - dir), b = w.mag(j + dir);
                if (m <= a && m <= b && m < deep)
                    return j;
                if (!strict && m < a && m < b)
                    strict = j;
            }
            if (strict)
                return *strict;
            return w.valid(last + dir) ? last : last + dir;
        }
    } // namespace detail

    /// Half-power beamwidth in degrees; empty when the cut never falls 3 dB below its peak.
    inline std::optional<double> hpbw(const Cut &c)
    {
        const detail::CutWalker w{c};
        const long ip = detail::first_peak(c);
        const double peak = c.magnitude[static_cast<size_t>(ip)];
        if (!(peak > 0.0))
            return std::nullopt;
        const double level = peak / std::sqrt(2.0);
        const auto right = detail::crossing(w, ip, +1, level);
        const auto left = detail::crossing(w, ip, -1, level);
        if (!right || !left)
            return std::nullopt;
        const double width = rad_to_deg(*right - *left);
        if (!(width < 360.0))
            return std::nullopt;
        return width;
    }

    /// Highest lobe outside the main lobe in dB relative to the peak; -inf when there is none.
    inline double sidelobe_level(const Cut &c)
    {
        constexpr double none = -std::numeric_limits<double>::infinity();
        const detail::CutWalker w{c};
        const long ip = detail::first_peak(c);
        const double peak = c.magnitude[static_cast<size_t>(ip)];
        if (!(peak > 0.0))
            return none;

        const long right = detail::lobe_edge(w, ip, +1, peak);
        const long left = detail::lobe_edge(w, ip, -1, peak);

        std::vector<long> outside;
        if (c.periodic)
        {
            for (long j = right + 1; j < left + w.n(); ++j)
                outside.push_back(j);
        }
        else
        {
            for (long j = 0; j < left; ++j)
                outside.push_back(j);
            for (long j = right + 1; j < w.n(); ++j)
                outside.push_back(j);
        }

        double best = 0.0;
        bool found = false;
        for (long j : outside)
        {
            if (!w.valid(j - 1) || !w.valid(j + 1))
                continue;
            const double m = w.mag(j);
            if (m > w.mag(j - 1) && m >= w.mag(j + 1) && m > 0.0)
            {
                best = std::max(best, m);
                found = true;
            }
        }
        if (!found)
            return none;
        return 20.0 * std::log10(best / peak);
    }

    namespace detail
    {
        inline void require_full_sphere(const PatternGrid &g)
        {
            if (g.rows() < 2 || std::abs(g.theta_axis.front()) > 1e-9 || std::abs(g.theta_axis.back() - pi) > 1e-9)
                throw std::invalid_argument("directivity: theta axis must span [0, 180] deg");
            if (!covers_full_circle(g.phi_axis))
                throw std::invalid_argument("directivity: phi axis must cover [0, 360) deg uniformly");
        }

        // Trapezoid in theta with sin(theta) weights.
        inline std::vector<double> theta_weights(const std::vector<double> &t)
        {
            std::vector<double> w(t.size(), 0.0);
            for (size_t i = 0; i + 1 < t.size(); ++i)
            {
                const double h = 0.5 * (t[i + 1] - t[i]);
                w[i] += h;
                w[i + 1] += h;
            }
            for (size_t i = 0; i < t.size(); ++i)
                w[i] *= std::sin(t[i]);
            return w;
        }
    } // namespace detail

    /// Integral of |E|^2 over the sphere: trapezoid in theta, midpoint in phi.
    inline double radiated_power(const PatternGrid &grid, Polarization pol)
    {
        detail::require_full_sphere(grid);
        const auto wt = detail::theta_weights(grid.theta_axis);
        const double wp = two_pi / static_cast<double>(grid.cols());
        double total = 0.0;
        for (size_t i = 0; i < grid.rows(); ++i)
        {
            double row = 0.0;
            for (size_t k = 0; k < grid.cols(); ++k)
                row += std::norm(grid.at(pol, i, k));
            total += wt[i] * wp * row;
        }
        return total;
    }

    /// Directivity in dBi at a grid direction; empty when the pattern radiates no power.
    inline std::optional<double> directivity(const PatternGrid &grid, Polarization pol, const Direction &u)
    {
        const double p = radiated_power(grid, pol);
        if (!(p > 0.0))
            return std::nullopt;
        const size_t i = axis_index(grid.theta_axis, u.theta, "theta");
        const size_t k = axis_index(grid.phi_axis, u.phi, "phi");
        const double d = 4.0 * pi * std::norm(grid.at(pol, i, k)) / p;
        if (d == 0.0)
            return -std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(d);
    }

    /// Sphere integral of D / 4 pi with the grid's own quadrature; 1 by construction.
    inline std::optional<double> directivity_normalization(const PatternGrid &grid, Polarization pol)
    {
        const double p = radiated_power(grid, pol);
        if (!(p > 0.0))
            return std::nullopt;
        const auto wt = detail::theta_weights(grid.theta_axis);
        const double wp = two_pi / static_cast<double>(grid.cols());
        double sum = 0.0;
        for (size_t i = 0; i < grid.rows(); ++i)
            for (size_t k = 0; k < grid.cols(); ++k)
                sum += 4.0 * pi * std::norm(grid.at(pol, i, k)) / p * wt[i] * wp;
        return sum / (4.0 * pi);
    }

    /// 20 log10(|Ea(u)| / |Eb(u)|); +inf when Eb(u) = 0.
    inline double state_contrast(const PatternGrid &a, const PatternGrid &b, Polarization pol, const Direction &u)
    {
        if (!a.same_axes(b))
            throw std::invalid_argument("state_contrast: grids have different axes");
        const size_t i = axis_index(a.theta_axis, u.theta, "theta");
        const size_t k = axis_index(a.phi_axis, u.phi, "phi");
        const double ma = a.magnitude(pol, i, k), mb = b.magnitude(pol, i, k);
        if (mb == 0.0)
            return std::numeric_limits<double>::infinity();
        if (ma == 0.0)
            return -std::numeric_limits<double>::infinity();
        return 20.0 * std::log10(ma / mb);
    }

    struct BeamReport
    {
        std::optional<Direction> peak_direction; // empty: no peak
        double peak_mag_db = db_floor;
        std::optional<double> hpbw_deg; // empty: unbounded
        double sll_db = -std::numeric_limits<double>::infinity();
        std::optional<double> directivity_dbi; // needs a full-sphere grid

        bool has_peak() const { return peak_direction.has_value(); }
    };

    /*!
     * Beam metrics of one channel.
     *
     * Beamwidth and sidelobe level are taken on the constant-theta cut through the peak.
     * Directivity is reported only when the grid spans the full sphere. The peak level is
     * absolute (20 log10 |E|) unless `normalized` is set, in which case it is 0 dB.
     */
    inline BeamReport beam_report(const PatternGrid &grid, Polarization pol, bool normalized = false)
    {
        BeamReport r;
        const auto pk = peak_direction(grid, pol);
        if (!pk)
            return r;
        r.peak_direction = pk->direction;
        r.peak_mag_db = normalized ? 0.0 : 20.0 * std::log10(pk->magnitude);
        const Cut c = cut(grid, pol, CutPlane::constant_theta, pk->direction.theta);
        r.hpbw_deg = hpbw(c);
        r.sll_db = sidelobe_level(c);
        const bool sphere = grid.rows() >= 2 && std::abs(grid.theta_axis.front()) < 1e-9 &&
                            std::abs(grid.theta_axis.back() - pi) < 1e-9 && covers_full_circle(grid.phi_axis);
        if (sphere)
            r.directivity_dbi = directivity(grid, pol, pk->direction);
        return r;
    }

} // namespace ris3d

#endif // RIS3D_ANALYSIS_HPP
