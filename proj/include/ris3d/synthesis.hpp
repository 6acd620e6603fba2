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


#ifndef RIS3D_SYNTHESIS_HPP
#define RIS3D_SYNTHESIS_HPP

#include "analysis.hpp"
#include "field.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ris3d
{
    struct SearchOptions
    {
        double cut_step_deg = 0.5; // phi resolution of the evaluation cut
        // Illuminated face and routing are taken from here; gates and offsets are replaced.
        // When empty, the face of the first enabled subarray is illuminated with no routing.
        std::optional<ControlState> base;
    };

    struct SearchResult
    {
        ControlState state;
        Direction achieved;
        double magnitude = 0.0;
        double error_rad = 0.0; // great-circle distance from achieved peak to target
        bool has_peak = false;
    };

    /// Offset difference a - b wrapped to (-pi, pi].
    inline double offset_difference(double a, double b) { return wrap_pi(a - b); }

    namespace detail
    {
        inline ControlState base_state(const Scene &scene, const std::map<SubarrayKey, int> &gates,
                                       const std::optional<ControlState> &base)
        {
            ControlState s;
            if (base)
            {
                s.illuminated_face = base->illuminated_face;
                s.routing = base->routing;
                s.transfer = base->transfer;
                s.incident = base->incident;
            }
            else
            {
                for (const auto &[k, g] : gates)
                    if (g == 1)
                    {
                        s.illuminated_face = k.first;
                        break;
                    }
            }
            for (const auto &sub : scene.subarrays)
            {
                const auto it = gates.find(key_of(sub));
                s.gates[key_of(sub)] = it == gates.end() ? 0 : it->second;
                s.offsets[key_of(sub)] = 0.0;
            }
            return s;
        }

        // Field of one subarray alone (offset 0) along the constant-theta cut.
        inline std::vector<FieldValue> subarray_cut(const Scene &scene, ControlState state, const SubarrayKey &only,
                                                    const std::vector<double> &phi_axis, double theta)
        {
            for (auto &[k, g] : state.gates)
                g = k == only ? 1 : 0;
            for (auto &[k, o] : state.offsets)
                o = 0.0;
            const FarField field(scene, state);
            std::vector<FieldValue> out;
            out.reserve(phi_axis.size());
            for (double phi : phi_axis)
                out.push_back(field(Direction{theta, phi}));
            return out;
        }

        inline double total_magnitude(const FieldValue &v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

        struct Candidate
        {
            double error = 0.0;
            double magnitude = 0.0;
            size_t peak = 0;
        };

        // Strictly better under (smaller error, then larger magnitude); equal keeps the earlier one.
        inline bool better(const Candidate &a, const Candidate &b)
        {
            if (std::abs(a.error - b.error) > 1e-12)
                return a.error < b.error;
            return a.magnitude > b.magnitude * (1.0 + 1e-12);
        }
    } // namespace detail

    /*!
     * Exhaustive search over per-subarray phase offsets.
     *
     * The first enabled subarray is pinned to 0; every other enabled subarray walks the
     * grid 0, step, 2 step, ... < 2 pi. Each candidate is scored by the great-circle distance
     * between its cut peak (constant theta = target.theta) and the target. Ties go to the
     * larger peak magnitude and then to the lexicographically smallest offsets.
     */
    inline SearchResult phase_offset_search(const Scene &scene, const std::map<SubarrayKey, int> &gates,
                                            const Direction &target, double offset_step,
                                            const SearchOptions &opt = {})
    {
        std::vector<SubarrayKey> enabled;
        for (const auto &[k, g] : gates)
            if (g == 1)
                enabled.push_back(k);
        if (enabled.empty())
            throw std::invalid_argument("phase_offset_search: no enabled gates");
        if (!(offset_step > 0.0))
            throw std::invalid_argument("phase_offset_search: offset step must be positive");
        const auto steps = static_cast<long>(std::llround(two_pi / offset_step));
        if (steps < 1 || std::abs(static_cast<double>(steps) * offset_step - two_pi) > 1e-9)
            throw std::invalid_argument("phase_offset_search: offset step must divide 360 deg");

        const ControlState base = detail::base_state(scene, gates, opt.base);
        const auto phi_axis = make_axis_deg(0.0, 360.0 - opt.cut_step_deg, opt.cut_step_deg);

        std::vector<std::vector<FieldValue>> parts;
        for (const auto &k : enabled)
            parts.push_back(detail::subarray_cut(scene, base, k, phi_axis, target.theta));

        const size_t free = enabled.size() - 1;
        std::vector<long> idx(free, 0), best_idx;
        std::optional<detail::Candidate> best;
        std::vector<std::complex<double>> rot(enabled.size());
        std::vector<FieldValue> sum(phi_axis.size());

        while (true)
        {
            rot[0] = 1.0;
            for (size_t i = 0; i < free; ++i)
                rot[i + 1] = std::polar(1.0, static_cast<double>(idx[i]) * offset_step);

            detail::Candidate c;
            bool any = false;
            for (size_t a = 0; a < phi_axis.size(); ++a)
            {
                FieldValue v{};
                for (size_t p = 0; p < parts.size(); ++p)
                    for (int ch = 0; ch < channel_count; ++ch)
                        v[ch] += rot[p] * parts[p][a][ch];
                const double m = detail::total_magnitude(v);
                if (m > c.magnitude)
                {
                    c.magnitude = m;
                    c.peak = a;
                    any = true;
                }
            }
            if (any)
            {
                c.error = angular_distance(Direction{target.theta, phi_axis[c.peak]}, target);
                if (!best || detail::better(c, *best))
                {
                    best = c;
                    best_idx = idx;
                }
            }

            // odometer, last subarray fastest
            size_t d = free;
            while (d > 0)
            {
                if (++idx[d - 1] < steps)
                    break;
                idx[d - 1] = 0;
                --d;
            }
            if (d == 0)
                break;
        }

        SearchResult r;
        r.state = base;
        if (!best)
            return r;
        for (size_t i = 0; i < free; ++i)
            r.state.offsets[enabled[i + 1]] = wrap_two_pi(static_cast<double>(best_idx[i]) * offset_step);
        r.has_peak = true;
        r.achieved = Direction{target.theta, phi_axis[best->peak]};
        r.magnitude = best->magnitude;
        r.error_rad = best->error;
        return r;
    }

    struct CodebookEntry
    {
        Direction target;
        int configuration = 0; // 1: single subarray, 2: adjacent pair, 3: all on
        ControlState state;
        BeamReport report;
        double error_deg = 0.0;
    };

    struct Codebook
    {
        std::vector<Direction> targets;
        std::vector<CodebookEntry> entries;
        double cut_step_deg = 0.5;
    };

    struct CodebookOptions
    {
        double offset_step = deg_to_rad(5.0);
        double cut_step_deg = 0.5;
        double accept_tolerance_deg = 3.0;
        int face = -1; // face whose REFLECT subarrays form the codebook; -1: illuminated face
        std::optional<ControlState> base;
    };

    /// Beam report on the constant-theta cut used by the search.
    inline BeamReport cut_report(const Scene &scene, const ControlState &state, double theta, double step_deg)
    {
        const FarField field(scene, state);
        const auto grid = pattern_grid(field, {theta}, make_axis_deg(0.0, 360.0 - step_deg, step_deg));
        Polarization pol = Polarization::p2;
        for (const auto &s : scene.subarrays)
            if (state.gates.count(key_of(s)) && state.gates.at(key_of(s)) == 1)
            {
                pol = s.pol;
                break;
            }
        return beam_report(grid, pol);
    }

    /*!
     * Builds one entry per target: a single subarray if one points within tolerance,
     * otherwise the best adjacent pair with searched offsets, otherwise all subarrays on
     * with searched offsets.
     */
    inline Codebook codebook_generate(const Scene &scene, const std::vector<Direction> &targets,
                                      const CodebookOptions &opt = {})
    {
        if (targets.empty())
            throw std::invalid_argument("codebook_generate: no targets");

        const int illuminated = opt.base ? opt.base->illuminated_face : 0;
        const int face = opt.face >= 0 ? opt.face : illuminated;
        std::vector<SubarrayKey> cands;
        for (const auto &s : scene.subarrays)
            if (s.face_id == face && s.region == Region::reflect)
                cands.push_back(key_of(s));
        std::sort(cands.begin(), cands.end());

        SearchOptions sopt;
        sopt.cut_step_deg = opt.cut_step_deg;
        sopt.base = opt.base;
        if (!sopt.base)
        {
            ControlState b;
            b.illuminated_face = illuminated;
            sopt.base = b;
        }
        const double tol = deg_to_rad(opt.accept_tolerance_deg);

        Codebook book;
        book.targets = targets;
        book.cut_step_deg = opt.cut_step_deg;

        auto one_hot = [&](std::initializer_list<SubarrayKey> on) {
            std::map<SubarrayKey, int> g;
            for (const auto &k : on)
                g[k] = 1;
            return g;
        };
        auto better = [](const SearchResult &a, const std::optional<SearchResult> &b) {
            if (!a.has_peak)
                return false;
            if (!b || !b->has_peak)
                return true;
            return detail::better({a.error_rad, a.magnitude, 0}, {b->error_rad, b->magnitude, 0});
        };

        for (const auto &target : targets)
        {
            CodebookEntry e;
            e.target = target;
            std::optional<SearchResult> best;

            for (const auto &k : cands)
            {
                auto r = phase_offset_search(scene, one_hot({k}), target, two_pi, sopt);
                if (better(r, best))
                    best = r;
            }
            e.configuration = 1;

            if (!best || best->error_rad > tol)
            {
                std::optional<SearchResult> pair;
                for (size_t i = 0; i + 1 < cands.size(); ++i)
                {
                    auto r = phase_offset_search(scene, one_hot({cands[i], cands[i + 1]}), target, opt.offset_step, sopt);
                    if (better(r, pair))
                        pair = r;
                }
                if (pair && pair->error_rad <= tol)
                {
                    best = pair;
                    e.configuration = 2;
                }
                else
                {
                    std::map<SubarrayKey, int> all;
                    for (const auto &k : cands)
                        all[k] = 1;
                    e.configuration = 3;
                    if (!cands.empty())
                        best = phase_offset_search(scene, all, target, opt.offset_step, sopt);
                    else
                        best = SearchResult{detail::base_state(scene, all, sopt.base), {}, 0.0, 0.0, false};
                }
            }

            e.state = best->state;
            e.error_deg = best->has_peak ? rad_to_deg(best->error_rad) : 180.0;
            e.report = cut_report(scene, e.state, target.theta, opt.cut_step_deg);
            book.entries.push_back(std::move(e));
        }
        return book;
    }

    struct CoverageResult
    {
        double fraction = 0.0;
        std::vector<Direction> directions;
        std::vector<int> best_entry;       // -1 when no entry radiates there
        std::vector<double> best_level_db; // normalized level of the best entry
    };

    /// Coverage from precomputed normalized levels, levels_db[entry][direction].
    inline CoverageResult coverage_from_levels(const std::vector<std::vector<double>> &levels_db, double level_db)
    {
        if (levels_db.empty())
            throw std::invalid_argument("coverage: empty codebook");
        const size_t n = levels_db.front().size();
        if (n == 0)
            throw std::invalid_argument("coverage: empty sector");
        CoverageResult r;
        r.best_entry.assign(n, -1);
        r.best_level_db.assign(n, db_floor);
        size_t covered = 0;
        for (size_t d = 0; d < n; ++d)
        {
            for (size_t e = 0; e < levels_db.size(); ++e)
            {
                if (levels_db[e].size() != n)
                    throw std::invalid_argument("coverage: ragged level table");
                if (r.best_entry[d] < 0 || levels_db[e][d] > r.best_level_db[d])
                {
                    r.best_entry[d] = static_cast<int>(e);
                    r.best_level_db[d] = levels_db[e][d];
                }
            }
            if (r.best_level_db[d] >= level_db)
                ++covered;
        }
        r.fraction = static_cast<double>(covered) / static_cast<double>(n);
        return r;
    }

    struct Sector
    {
        double theta = pi / 2;
        double phi_min = 0.0; // radians, may be negative
        double phi_max = 0.0;
    };

    /*!
     * Fraction of the sector where the best entry's pattern, normalized to that entry's
     * own cut maximum, reaches `level_db`. Sector directions are sampled at `step_deg`.
     */
    inline CoverageResult coverage_report(const Scene &scene, const Codebook &book, const Sector &sector, double level_db,
                                          double step_deg = 0.5)
    {
        if (book.entries.empty())
            throw std::invalid_argument("coverage_report: empty codebook");
        if (!(sector.phi_max >= sector.phi_min))
            throw std::invalid_argument("coverage_report: empty sector");

        const auto sector_axis = make_axis_deg(rad_to_deg(sector.phi_min), rad_to_deg(sector.phi_max), step_deg);
        const auto full_axis = make_axis_deg(0.0, 360.0 - step_deg, step_deg);

        std::vector<std::vector<double>> levels;
        for (const auto &e : book.entries)
        {
            const FarField field(scene, e.state);
            double mx = 0.0;
            for (double phi : full_axis)
                mx = std::max(mx, detail::total_magnitude(field(Direction{sector.theta, phi})));
            std::vector<double> row;
            for (double phi : sector_axis)
            {
                const double m = detail::total_magnitude(field(Direction{sector.theta, phi}));
                row.push_back(mx > 0.0 ? amplitude_db(m / mx) : db_floor);
            }
            levels.push_back(std::move(row));
        }
        CoverageResult r = coverage_from_levels(levels, level_db);
        for (double phi : sector_axis)
            r.directions.push_back(Direction{sector.theta, wrap_two_pi(phi)});
        return r;
    }

} // namespace ris3d

#endif // RIS3D_SYNTHESIS_HPP
