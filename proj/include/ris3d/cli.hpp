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


#ifndef RIS3D_CLI_HPP
#define RIS3D_CLI_HPP

#include "analysis.hpp"
#include "config.hpp"
#include "scenes.hpp"
#include "synthesis.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

// Job layer behind the ris3d command line tool. Each job returns the process exit status:
// 0 on success, 1 when the config or state fails validation, 2 on usage or i/o errors.
namespace ris3d::cli
{
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_invalid = 1;
    inline constexpr int exit_usage = 2;

    /// Fixed-point, 9 decimals; negative zero prints as zero.
    inline std::string fixed9(double v)
    {
        if (v == 0.0)
            v = 0.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9f", v);
        return buf;
    }

    /// Comma-separated numbers, e.g. "24,26,28".
    inline std::vector<double> parse_list(const std::string &s)
    {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size())
                throw std::invalid_argument("malformed number '" + item + "'");
            out.push_back(v);
        }
        if (out.empty())
            throw std::invalid_argument("empty list");
        return out;
    }

    // Axis given in degrees as "value" or "start:stop:step".
    struct AxisSpec
    {
        double start = 0.0, stop = 0.0, step = 1.0;

        static AxisSpec parse(const std::string &s)
        {
            std::vector<double> parts;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ':'))
                parts.push_back(std::stod(item));
            if (parts.size() == 1)
                return {parts[0], parts[0], 1.0};
            if (parts.size() == 3)
                return {parts[0], parts[1], parts[2]};
            throw std::invalid_argument("axis spec '" + s + "' must be 'value' or 'start:stop:step'");
        }

        std::vector<double> axis() const { return make_axis_deg(start, stop, step); }
    };

    struct GridSpec
    {
        double step_deg = 1.0;
        std::optional<AxisSpec> theta, phi;

        std::pair<std::vector<double>, std::vector<double>> axes() const
        {
            auto [t, p] = sphere_axes_deg(step_deg);
            if (theta)
                t = theta->axis();
            if (phi)
                p = phi->axis();
            return {t, p};
        }
    };

    inline std::optional<Polarization> parse_pol(const std::string &s)
    {
        if (s == "p1")
            return Polarization::p1;
        if (s == "p2")
            return Polarization::p2;
        return std::nullopt;
    }

    inline const char *pol_name(Polarization p) { return p == Polarization::p1 ? "p1" : "p2"; }

    /// Pattern table: rows theta-major, then phi, then polarization; mag_db normalized to the table maximum.
    inline void write_pattern_csv(std::ostream &os, const PatternGrid &g)
    {
        double mx = 0.0;
        for (const auto &ch : g.samples)
            for (const auto &v : ch)
                mx = std::max(mx, std::abs(v));
        os << "theta_deg,phi_deg,pol,re,im,mag_db\n";
        for (size_t i = 0; i < g.rows(); ++i)
            for (size_t k = 0; k < g.cols(); ++k)
                for (Polarization pol : {Polarization::p1, Polarization::p2})
                {
                    const auto v = g.at(pol, i, k);
                    const double db = mx > 0.0 ? amplitude_db(std::abs(v) / mx) : db_floor;
                    os << fixed9(rad_to_deg(g.theta_axis[i])) << ',' << fixed9(rad_to_deg(g.phi_axis[k])) << ','
                       << pol_name(pol) << ',' << fixed9(v.real()) << ',' << fixed9(v.imag()) << ',' << fixed9(db)
                       << '\n';
                }
    }

    struct Context
    {
        std::ostream &out = std::cout;
        std::ostream &err = std::cerr;
    };

    namespace detail
    {
        // Loads config and state; reports problems on ctx.err.
        inline std::optional<std::pair<SceneConfig, ControlState>> load(const Context &ctx, const std::string &config,
                                                                        const std::string &state)
        {
            try
            {
                SceneConfig cfg = load_scene_config(config);
                const auto it = cfg.states.find(state);
                if (it == cfg.states.end())
                {
                    ctx.err << "error: unknown state '" << state << "'\n";
                    return std::nullopt;
                }
                ControlState st = it->second;
                return std::make_pair(std::move(cfg), std::move(st));
            }
            catch (const ConfigError &e)
            {
                ctx.err << "error: " << e.what() << "\n";
                return std::nullopt;
            }
        }

        inline bool write_file(const Context &ctx, const std::string &path, const std::string &data)
        {
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            if (!f)
            {
                ctx.err << "error: cannot write '" << path << "'\n";
                return false;
            }
            f << data;
            f.close();
            if (!f)
            {
                ctx.err << "error: failed writing '" << path << "'\n";
                return false;
            }
            return true;
        }

        inline nlohmann::json number_or_null(const std::optional<double> &v)
        {
            if (!v || !std::isfinite(*v))
                return nullptr;
            return *v;
        }

        inline nlohmann::json report_json(const BeamReport &r)
        {
            nlohmann::json j;
            if (!r.has_peak())
            {
                j["peak"] = nullptr;
                j["no_peak"] = true;
                return j;
            }
            const Direction d = r.peak_direction->normalized();
            j["no_peak"] = false;
            j["peak"] = {{"theta_deg", rad_to_deg(r.peak_direction->theta)}, {"phi_deg", rad_to_deg(d.phi)}};
            j["peak_mag_db"] = r.peak_mag_db;
            j["hpbw_deg"] = number_or_null(r.hpbw_deg);
            j["hpbw_unbounded"] = !r.hpbw_deg.has_value();
            j["sll_db"] = number_or_null(r.sll_db);
            j["directivity_dbi"] = number_or_null(r.directivity_dbi);
            return j;
        }

        inline int invalid_state(const Context &ctx, const InvalidState &e)
        {
            ctx.err << "error: " << e.what() << "\n";
            return exit_invalid;
        }
    } // namespace detail

    struct PatternJob
    {
        std::string config, state, out;
        GridSpec grid;
        unsigned workers = 1;
        std::optional<double> frequency_hz; // overrides the config frequency
    };

    inline std::string pattern_text(const Scene &scene, const ControlState &state, const GridSpec &grid, unsigned workers)
    {
        auto [t, p] = grid.axes();
        std::ostringstream os;
        write_pattern_csv(os, pattern_grid(scene, state, t, p, workers));
        return os.str();
    }

    inline int run_pattern(const PatternJob &job, const Context &ctx = {})
    {
        auto loaded = detail::load(ctx, job.config, job.state);
        if (!loaded)
            return exit_invalid;
        auto &[cfg, st] = *loaded;
        if (job.frequency_hz)
            cfg.scene.element.frequency_hz = *job.frequency_hz;
        try
        {
            const std::string text = pattern_text(cfg.scene, st, job.grid, job.workers);
            return detail::write_file(ctx, job.out, text) ? exit_ok : exit_usage;
        }
        catch (const InvalidState &e)
        {
            return detail::invalid_state(ctx, e);
        }
        catch (const std::invalid_argument &e)
        {
            ctx.err << "error: " << e.what() << "\n";
            return exit_usage;
        }
    }

    struct ReportJob
    {
        std::string config, state;
        GridSpec grid;
        Polarization pol = Polarization::p2;
        unsigned workers = 1;
    };

    inline int run_report(const ReportJob &job, const Context &ctx = {})
    {
        auto loaded = detail::load(ctx, job.config, job.state);
        if (!loaded)
            return exit_invalid;
        const auto &[cfg, st] = *loaded;
        try
        {
            auto [t, p] = job.grid.axes();
            const auto grid = pattern_grid(cfg.scene, st, t, p, job.workers);
            nlohmann::json j = detail::report_json(beam_report(grid, job.pol));
            j["state"] = job.state;
            j["pol"] = pol_name(job.pol);
            ctx.out << j.dump(2) << "\n";
            return exit_ok;
        }
        catch (const InvalidState &e)
        {
            return detail::invalid_state(ctx, e);
        }
        catch (const std::invalid_argument &e)
        {
            ctx.err << "error: " << e.what() << "\n";
            return exit_usage;
        }
    }

    struct CutJob
    {
        std::string config, state, out, plane = "theta=90";
        double step_deg = 1.0;
        Polarization pol = Polarization::p2;
    };

    inline int run_cut(const CutJob &job, const Context &ctx = {})
    {
        auto loaded = detail::load(ctx, job.config, job.state);
        if (!loaded)
            return exit_invalid;
        const auto &[cfg, st] = *loaded;
        try
        {
            const auto eq = job.plane.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("plane must be 'theta=<deg>' or 'phi=<deg>'");
            const std::string which = job.plane.substr(0, eq);
            const double value = std::stod(job.plane.substr(eq + 1));
            PatternGrid g;
            Cut c;
            if (which == "theta")
            {
                g = pattern_grid(cfg.scene, st, {deg_to_rad(value)}, make_axis_deg(0.0, 360.0 - job.step_deg, job.step_deg));
                c = cut(g, job.pol, CutPlane::constant_theta, deg_to_rad(value));
            }
            else if (which == "phi")
            {
                g = pattern_grid(cfg.scene, st, make_axis_deg(0.0, 180.0, job.step_deg), {deg_to_rad(value)});
                c = cut(g, job.pol, CutPlane::constant_phi, deg_to_rad(value));
            }
            else
                throw std::invalid_argument("plane must be 'theta=<deg>' or 'phi=<deg>'");

            std::ostringstream os;
            os << "angle_deg,mag_db\n";
            for (size_t i = 0; i < c.size(); ++i)
                os << fixed9(rad_to_deg(c.angles[i])) << ',' << fixed9(c.mag_db[i]) << '\n';
            if (job.out.empty())
            {
                ctx.out << os.str();
                return exit_ok;
            }
            return detail::write_file(ctx, job.out, os.str()) ? exit_ok : exit_usage;
        }
        catch (const InvalidState &e)
        {
            return detail::invalid_state(ctx, e);
        }
        catch (const std::invalid_argument &e)
        {
            ctx.err << "error: " << e.what() << "\n";
            return exit_usage;
        }
    }

    struct SearchJob
    {
        std::string config;
        std::string state; // optional: supplies illuminated face and routing
        int face = -1;
        std::vector<int> gates;
        double target_theta_deg = 90.0, target_phi_deg = 0.0;
        double step_deg = 5.0;
        double cut_step_deg = 0.5;
    };

    namespace detail
    {
        // REFLECT subarrays of a face, ordered by p.
        inline std::vector<SubarrayKey> reflect_keys(const Scene &scene, int face)
        {
            std::vector<SubarrayKey> keys;
            for (const auto &s : scene.subarrays)
                if (s.face_id == face && s.region == Region::reflect)
                    keys.push_back(key_of(s));
            std::sort(keys.begin(), keys.end());
            return keys;
        }

        inline std::optional<std::pair<SceneConfig, std::optional<ControlState>>> load_base(const Context &ctx,
                                                                                            const std::string &config,
                                                                                            const std::string &state)
        {
            if (!state.empty())
            {
                auto l = load(ctx, config, state);
                if (!l)
                    return std::nullopt;
                return std::make_pair(std::move(l->first), std::optional<ControlState>(std::move(l->second)));
            }
            try
            {
                return std::make_pair(load_scene_config(config), std::optional<ControlState>());
            }
            catch (const ConfigError &e)
            {
                ctx.err << "error: " << e.what() << "\n";
                return std::nullopt;
            }
        }
    } // namespace detail

    inline int run_search(const SearchJob &job, const Context &ctx = {})
    {
        auto loaded = detail::load_base(ctx, job.config, job.state);
        if (!loaded)
            return exit_invalid;
        const auto &[cfg, base] = *loaded;
        const int face = job.face >= 0 ? job.face : (base ? base->illuminated_face : 0);
        const auto keys = detail::reflect_keys(cfg.scene, face);
        if (job.gates.size() != keys.size())
        {
            ctx.err << "error: face " << face << " has " << keys.size() << " reflect subarrays, got " << job.gates.size()
                    << " gate values\n";
            return exit_usage;
        }
        std::map<SubarrayKey, int> gates;
        for (size_t i = 0; i < keys.size(); ++i)
            gates[keys[i]] = job.gates[i];
        try
        {
            SearchOptions opt;
            opt.cut_step_deg = job.cut_step_deg;
            opt.base = base;
            const Direction target = Direction::from_degrees(job.target_theta_deg, job.target_phi_deg);
            const auto r = phase_offset_search(cfg.scene, gates, target, deg_to_rad(job.step_deg), opt);

            nlohmann::json j;
            j["target"] = {{"theta_deg", job.target_theta_deg}, {"phi_deg", job.target_phi_deg}};
            j["step_deg"] = job.step_deg;
            j["offsets_deg"] = state_to_json(r.state)["offsets_deg"];
            nlohmann::json deltas = nlohmann::json::array();
            std::optional<SubarrayKey> ref;
            for (const auto &k : keys)
            {
                if (gates[k] != 1)
                    continue;
                if (!ref)
                {
                    ref = k;
                    continue;
                }
                deltas.push_back({{"subarray", config_detail::subarray_path(k)},
                                  {"reference", config_detail::subarray_path(*ref)},
                                  {"delta_deg", rad_to_deg(offset_difference(r.state.offsets.at(k), r.state.offsets.at(*ref)))}});
            }
            j["offset_differences"] = deltas;
            if (r.has_peak)
            {
                j["achieved"] = {{"theta_deg", rad_to_deg(r.achieved.theta)},
                                 {"phi_deg", rad_to_deg(wrap_pi(r.achieved.phi))}};
                j["error_deg"] = rad_to_deg(r.error_rad);
            }
            else
                j["achieved"] = nullptr;
            j["state"] = state_to_json(r.state);
            ctx.out << j.dump(2) << "\n";
            return exit_ok;
        }
        catch (const InvalidState &e)
        {
            return detail::invalid_state(ctx, e);
        }
        catch (const std::invalid_argument &e)
        {
            ctx.err << "error: " << e.what() << "\n";
            return exit_usage;
        }
    }

    struct CodebookJob
    {
        std::string config, state, out;
        std::vector<double> targets_phi_deg;
        double theta_deg = 90.0;
        double step_deg = 5.0;
        double cut_step_deg = 0.5;
        double tolerance_deg = 3.0;
        int face = -1;
    };

    inline nlohmann::json codebook_json(const Scene &scene, const Codebook &book)
    {
        nlohmann::json j;
        j["scene_hash"] = scene_hash(scene);
        j["cut_step_deg"] = book.cut_step_deg;
        j["entries"] = nlohmann::json::array();
        for (const auto &e : book.entries)
        {
            j["entries"].push_back({{"target", {{"theta_deg", rad_to_deg(e.target.theta)}, {"phi_deg", rad_to_deg(e.target.phi)}}},
                                    {"configuration", e.configuration},
                                    {"error_deg", e.error_deg},
                                    {"state", state_to_json(e.state)},
                                    {"report", detail::report_json(e.report)}});
        }
        return j;
    }

    inline int run_codebook(const CodebookJob &job, const Context &ctx = {})
    {
        auto loaded = detail::load_base(ctx, job.config, job.state);
        if (!loaded)
            return exit_invalid;
        const auto &[cfg, base] = *loaded;
        try
        {
            std::vector<Direction> targets;
            for (double phi : job.targets_phi_deg)
                targets.push_back(Direction::from_degrees(job.theta_deg, phi));
            CodebookOptions opt;
            opt.offset_step = deg_to_rad(job.step_deg);
            opt.cut_step_deg = job.cut_step_deg;
            opt.accept_tolerance_deg = job.tolerance_deg;
            opt.face = job.face;
            opt.base = base;
            const Codebook book = codebook_generate(cfg.scene, targets, opt);
            for (const auto &e : book.entries)
                if (!validate(cfg.scene, e.state).empty())
                {
                    ctx.err << "error: generated state failed validation\n";
                    return exit_invalid;
                }
            const std::string text = codebook_json(cfg.scene, book).dump(2) + "\n";
            if (job.out.empty())
            {
                ctx.out << text;
                return exit_ok;
            }
            return detail::write_file(ctx, job.out, text) ? exit_ok : exit_usage;
        }
        catch (const InvalidState &e)
        {
            return detail::invalid_state(ctx, e);
        }
        catch (const std::invalid_argument &e)
        {
            ctx.err << "error: " << e.what() << "\n";
            return exit_usage;
        }
    }

    struct SweepJob
    {
        std::string config, state, out_dir;
        std::vector<double> freqs_ghz;
        GridSpec grid;
        unsigned workers = 1;
    };

    /// File name of one sweep point, e.g. "pattern_phi_0_24.000GHz.csv".
    inline std::string sweep_file_name(const std::string &state, double ghz)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "_%.3fGHz.csv", ghz);
        return "pattern_" + state + buf;
    }

    inline int run_sweep(const SweepJob &job, const Context &ctx = {})
    {
        for (double f : job.freqs_ghz)
            if (!(f > 0.0))
            {
                ctx.err << "error: sweep frequencies must be positive\n";
                return exit_usage;
            }
        auto loaded = detail::load(ctx, job.config, job.state);
        if (!loaded)
            return exit_invalid;
        auto &[cfg, st] = *loaded;
        std::error_code ec;
        std::filesystem::create_directories(job.out_dir, ec);
        try
        {
            for (double f : job.freqs_ghz)
            {
                Scene scene = cfg.scene;
                scene.element.frequency_hz = f * 1e9;
                const std::string path = (std::filesystem::path(job.out_dir) / sweep_file_name(job.state, f)).string();
                if (!detail::write_file(ctx, path, pattern_text(scene, st, job.grid, job.workers)))
                    return exit_usage;
                ctx.out << path << "\n";
            }
            return exit_ok;
        }
        catch (const InvalidState &e)
        {
            return detail::invalid_state(ctx, e);
        }
        catch (const std::invalid_argument &e)
        {
            ctx.err << "error: " << e.what() << "\n";
            return exit_usage;
        }
    }

    /// Reports every violation of every state (or one named state).
    inline int run_validate(const std::string &config, const std::string &state, const Context &ctx = {})
    {
        SceneConfig cfg;
        try
        {
            cfg = load_scene_config(config, false);
        }
        catch (const ConfigError &e)
        {
            ctx.err << "error: " << e.what() << "\n";
            return exit_invalid;
        }
        bool ok = true;
        for (const auto &[name, st] : cfg.states)
        {
            if (!state.empty() && name != state)
                continue;
            const auto v = validate_state(st, cfg.scene.layout, cfg.scene.subarrays);
            if (v.empty())
                ctx.out << name << ": ok\n";
            for (const auto &x : v)
                ctx.out << name << ": " << config_detail::violation_path(name, x.key) << ": " << x.message << "\n";
            ok = ok && v.empty();
        }
        if (!state.empty() && !cfg.states.count(state))
        {
            ctx.err << "error: unknown state '" << state << "'\n";
            return exit_invalid;
        }
        return ok ? exit_ok : exit_invalid;
    }

    inline int run_export(const std::string &scenario, const std::string &out, const Context &ctx = {})
    {
        try
        {
            const ReferenceScenario sc = build_scenario(scenario);
            const std::string text = export_scene_config(sc.scene, sc.states);
            if (out.empty())
            {
                ctx.out << text;
                return exit_ok;
            }
            return detail::write_file(ctx, out, text) ? exit_ok : exit_usage;
        }
        catch (const std::invalid_argument &e)
        {
            ctx.err << "error: " << e.what() << "\n";
            return exit_usage;
        }
    }

} // namespace ris3d::cli

#endif // RIS3D_CLI_HPP
