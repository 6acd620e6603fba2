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


// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include "naive_field.hpp"
#include "test_util.hpp"

#include <ris3d/cli.hpp>
#include <ris3d/ris3d.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

using namespace ris3d;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::string detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                detail += " FAILED(" + what + ")";
            }
        }
        void note(const std::string &s) { detail += " " + s; }
    };

    std::string fmt(const char *f, double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, f, v);
        return buf;
    }

    constexpr double cut_step_deg = 0.5;

    PatternGrid horizon_cut(const Scene &scene, const ControlState &st)
    {
        return pattern_grid(scene, st, {pi / 2}, make_axis_deg(0.0, 360.0 - cut_step_deg, cut_step_deg));
    }

    Cut horizon(const PatternGrid &g) { return cut(g, Polarization::p2, CutPlane::constant_theta, pi / 2); }

    // Peak azimuth of the theta = 90 deg cut in (-180, 180] degrees.
    double peak_phi_deg(const Scene &scene, const ControlState &st)
    {
        const auto pk = peak_direction(horizon_cut(scene, st), Polarization::p2);
        return pk ? rad_to_deg(wrap_pi(pk->direction.phi)) : std::nan("");
    }

    double offset_delta_deg(const ControlState &st, const SubarrayKey &a, const SubarrayKey &b)
    {
        return rad_to_deg(offset_difference(st.offsets.at(a), st.offsets.at(b)));
    }

    const std::map<std::string, double> config1 = {{"phi_p30", 30.0}, {"phi_0", 0.0}, {"phi_m30", -30.0}};
    const std::map<std::string, double> config2 = {{"phi_p15", 15.0}, {"phi_m15", -15.0}};

    // Beam pointing plus the 5 deg offset search for the +/-15 deg targets. The 135 deg
    // optimum is a 26 GHz value; off that frequency only the searched beam's pointing is held.
    void check_pointing(Outcome &o, const Scene &scene, const ReferenceScenario &ref, double tol1, double tol2,
                        const std::string &tag, bool expect_135 = true)
    {
        for (const auto &[name, want] : config1)
        {
            const double got = peak_phi_deg(scene, ref.states.at(name));
            o.note(tag + name + "=" + fmt("%.1f", got));
            o.require(std::abs(got - want) <= tol1, tag + name);
        }
        for (const auto &[name, want] : config2)
        {
            const double got = peak_phi_deg(scene, ref.states.at(name));
            o.note(tag + name + "=" + fmt("%.1f", got));
            o.require(std::abs(got - want) <= tol2, tag + name);
        }
        const auto plus = phase_offset_search(scene, {{{0, 0}, 1}, {{0, 1}, 1}}, Direction::from_degrees(90, 15),
                                              deg_to_rad(5.0));
        const auto minus = phase_offset_search(scene, {{{0, 1}, 1}, {{0, 2}, 1}}, Direction::from_degrees(90, -15),
                                               deg_to_rad(5.0));
        const double dp = offset_delta_deg(plus.state, {0, 0}, {0, 1});
        const double dm = offset_delta_deg(minus.state, {0, 2}, {0, 1});
        o.note(tag + "search+15 dPhi=" + fmt("%.0f", dp) + " search-15 dPhi=" + fmt("%.0f", dm));
        if (expect_135)
        {
            o.require(std::abs(std::abs(dp) - 135.0) <= 5.0, tag + "search +15");
            o.require(std::abs(std::abs(dm) - 135.0) <= 5.0, tag + "search -15");
        }
        o.note(tag + "search err=" + fmt("%.1f", rad_to_deg(std::max(plus.error_rad, minus.error_rad))));
        o.require(rad_to_deg(plus.error_rad) <= tol2 && rad_to_deg(minus.error_rad) <= tol2, tag + "search pointing");
    }

    Outcome criterion1()
    {
        Outcome o;
        const auto ref = build_single_face_reference();
        for (const auto &[name, want] : config1)
        {
            const double got = peak_phi_deg(ref.scene, ref.states.at(name));
            o.note(name + "=" + fmt("%.1f", got));
            o.require(std::abs(got - want) <= 2.0, name);
        }
        return o;
    }

    Outcome criterion2()
    {
        Outcome o;
        const auto ref = build_single_face_reference();
        const double dp = offset_delta_deg(ref.states.at("phi_p15"), {0, 0}, {0, 1});
        const double dm = offset_delta_deg(ref.states.at("phi_m15"), {0, 2}, {0, 1});
        o.require(std::abs(std::abs(dp) - 135.0) < 1e-9 && std::abs(std::abs(dm) - 135.0) < 1e-9, "|dPhi| = 135");
        check_pointing(o, ref.scene, ref, 2.0, 3.0, "");
        return o;
    }

    Outcome criterion3()
    {
        Outcome o;
        const auto ref = build_single_face_reference();
        const auto &wide = ref.states.at("wide");
        const auto w = hpbw(horizon(horizon_cut(ref.scene, wide)));
        double widest1 = 0.0;
        for (const auto &[name, want] : config1)
        {
            const auto h = hpbw(horizon(horizon_cut(ref.scene, ref.states.at(name))));
            o.require(h.has_value(), name + " hpbw");
            widest1 = std::max(widest1, h.value_or(0.0));
        }
        o.note("wide hpbw=" + fmt("%.2f", w.value_or(-1)) + " max config-1 hpbw=" + fmt("%.2f", widest1));
        o.require(w && *w > widest1, "hpbw ordering");

        // anchors: brute-force oracle levels minus 0.01 dB
        const std::map<double, double> anchor_db = {
            {-30.0, -3.023}, {-15.0, -0.040}, {0.0, -2.368}, {15.0, -4.854}, {30.0, -3.023}};
        const Cut c = horizon(horizon_cut(ref.scene, wide));
        for (const auto &[phi, floor_db] : anchor_db)
        {
            const size_t k = axis_index(c.angles, deg_to_rad(wrap_two_pi(deg_to_rad(phi)) * 180.0 / pi), "phi");
            o.note(fmt("L(%.0f)=", phi) + fmt("%.3f", c.mag_db[k]));
            o.require(c.mag_db[k] >= floor_db, fmt("anchor %.0f", phi));
        }
        return o;
    }

    Outcome criterion4()
    {
        Outcome o;
        const auto dirs = testutil::random_directions(1000, 20261014);
        double worst_peak_rel = 0.0, worst_sample_rel = 0.0;
        size_t compared = 0;
        for (const char *name : {"reference", "reflection", "transmission"})
        {
            const auto sc = build_scenario(name);
            for (const auto &[state_name, st] : sc.states)
            {
                const FarField f(sc.scene, st);
                std::vector<std::array<naive::cplx, 2>> ref;
                std::vector<FieldValue> got;
                double scale = 0.0;
                for (const auto &u : dirs)
                {
                    ref.push_back(naive::far_field(sc.scene, st, u));
                    got.push_back(f(u));
                    scale = std::max({scale, std::abs(ref.back()[0]), std::abs(ref.back()[1])});
                }
                for (size_t i = 0; i < dirs.size(); ++i)
                    for (int c = 0; c < 2; ++c)
                    {
                        const double diff = std::abs(ref[i][c] - got[i][c]);
                        if (scale == 0.0)
                            o.require(diff == 0.0, std::string(name) + "/" + state_name + " zero field");
                        else
                            worst_peak_rel = std::max(worst_peak_rel, diff / scale);
                        if (std::abs(ref[i][c]) > 1e-6 * scale && scale > 0.0)
                            worst_sample_rel = std::max(worst_sample_rel, diff / std::abs(ref[i][c]));
                        ++compared;
                    }
            }
        }
        o.note("samples=" + std::to_string(compared) + " max|dE|/peak=" + fmt("%.2e", worst_peak_rel) +
               " max|dE|/|E|=" + fmt("%.2e", worst_sample_rel));
        o.require(worst_peak_rel <= 1e-10, "peak-relative error");
        return o;
    }

    // Reference column with every spacing (element pitch and subarray stacking) scaled.
    Scene respaced(const Scene &in, double factor)
    {
        Scene s = in;
        const FaceFrame &f = s.layout.face(0);
        for (auto &sub : s.subarrays)
        {
            sub.d1 *= factor;
            sub.d2 *= factor;
            sub.center = f.origin + (sub.center - f.origin) * factor;
        }
        return s;
    }

    Outcome criterion5()
    {
        Outcome o;
        const auto ref = build_single_face_reference();
        for (const auto &[name, want] : config1)
        {
            const double sll = sidelobe_level(horizon(horizon_cut(ref.scene, ref.states.at(name))));
            o.note(name + " sll=" + fmt("%.2f", sll));
            o.require(sll < -1.0, name + " half-wave sll");
        }
        const Scene wide_spaced = respaced(ref.scene, 2.0);
        bool any_lobe = false;
        for (const auto &[name, want] : config1)
        {
            const double sll = sidelobe_level(horizon(horizon_cut(wide_spaced, ref.states.at(name))));
            o.note("1lambda " + name + " sll=" + fmt("%.2f", sll));
            any_lobe = any_lobe || sll >= -1.0;
            if (want != 0.0)
                o.require(sll >= -1.0, "1lambda " + name + " grating lobe");
        }
        o.require(any_lobe, "negative control");
        return o;
    }

    Outcome criterion6()
    {
        Outcome o;
        const auto [t, p] = sphere_axes_deg(1.0);
        double worst = 0.0;
        int n = 0;
        for (const char *name : {"reference", "reflection", "transmission"})
        {
            const auto sc = build_scenario(name);
            for (const auto &[state_name, st] : sc.states)
            {
                const auto g = pattern_grid(sc.scene, st, t, p, 4);
                const auto norm = directivity_normalization(g, Polarization::p2);
                if (!norm)
                    continue;
                ++n;
                worst = std::max(worst, std::abs(*norm - 1.0));
            }
        }
        o.note("states=" + std::to_string(n) + " max|norm-1|=" + fmt("%.2e", worst));
        o.require(n == 18, "nonzero states");
        o.require(worst <= 0.01, "normalization");

        PatternGrid hemi;
        hemi.theta_axis = t;
        hemi.phi_axis = p;
        for (auto &ch : hemi.samples)
            ch.assign(hemi.rows() * hemi.cols(), 0.0);
        for (size_t i = 0; i < hemi.rows(); ++i)
            for (size_t k = 0; k < hemi.cols(); ++k)
                if (t[i] < pi / 2 - 1e-9)
                    hemi.samples[1][hemi.index(i, k)] = 1.0;
        const double d = directivity(hemi, Polarization::p2, Direction{0.0, 0.0}).value_or(0.0);
        o.note("hemisphere=" + fmt("%.3f", d) + " dBi");
        o.require(std::abs(d - 3.01) <= 0.1, "hemisphere");
        return o;
    }

    Outcome criterion7()
    {
        Outcome o;
        const auto sc = build_transmission_scenario();
        const int t = transmission_neighbor;
        const EdgeKey edge{0, t};

        ControlState both = sc.states.at("phi_p15");
        both.gates[{0, 4}] = 1; // face 0 also re-radiates
        ControlState disabled = both;
        disabled.routing[edge] = 0;
        ControlState neighbor_only = both;
        neighbor_only.gates[{0, 4}] = 0;

        // isolated face: a scene holding only face 0's subarrays
        Scene isolated = sc.scene;
        isolated.subarrays.clear();
        ControlState isolated_state;
        isolated_state.illuminated_face = 0;
        for (const auto &s : sc.scene.subarrays)
            if (s.face_id == 0)
            {
                isolated.subarrays.push_back(s);
                isolated_state.gates[key_of(s)] = disabled.gates.at(key_of(s));
                isolated_state.offsets[key_of(s)] = disabled.offsets.at(key_of(s));
            }

        const FarField f_both(sc.scene, both), f_off(sc.scene, disabled), f_nb(sc.scene, neighbor_only),
            f_iso(isolated, isolated_state);
        const auto dirs = testutil::random_directions(1000, 7);
        double scale = 0.0, worst = 0.0;
        bool bitwise = true, behind_zero = true;
        size_t behind = 0;
        for (const auto &u : dirs)
            scale = std::max(scale, std::abs(f_both(u)[1]));
        for (const auto &u : dirs)
        {
            const auto e = f_both(u), a = f_off(u), b = f_nb(u), iso = f_iso(u);
            for (int c = 0; c < 2; ++c)
            {
                worst = std::max(worst, std::abs(e[c] - a[c] - b[c]) / scale);
                bitwise = bitwise && a[c] == iso[c];
            }
            if (u.dot(sc.scene.layout.face(t).normal()) < 0.0)
            {
                ++behind;
                behind_zero = behind_zero && b[0] == 0.0 && b[1] == 0.0;
            }
        }
        o.note("superposition=" + fmt("%.2e", worst) + " behind=" + std::to_string(behind));
        o.require(worst <= 1e-10, "superposition");
        o.require(bitwise, "disable restores isolated field");
        o.require(behind_zero && behind > 0, "visibility mask");
        return o;
    }

    Outcome criterion8()
    {
        Outcome o;
        const auto ref = build_single_face_reference();
        const auto dirs = testutil::random_directions(500, 99);

        // global phase shift
        double shift_err = 0.0;
        for (const auto &[name, st] : ref.states)
        {
            ControlState s2 = st;
            for (auto &[k, v] : s2.offsets)
                v = wrap_two_pi(v + 1.234);
            const FarField a(ref.scene, st), b(ref.scene, s2);
            double scale = 0.0;
            for (const auto &u : dirs)
                scale = std::max(scale, std::abs(a(u)[1]));
            for (const auto &u : dirs)
                shift_err = std::max(shift_err, scale > 0 ? std::abs(std::abs(a(u)[1]) - std::abs(b(u)[1])) / scale
                                                          : std::abs(b(u)[1]));
        }
        o.note("shift=" + fmt("%.1e", shift_err));
        o.require(shift_err <= 1e-12, "global offset shift");

        // rigid rotation
        const Mat3 q = Eigen::AngleAxisd(0.83, Vec3(0.3, -1.0, 0.6).normalized()).toRotationMatrix();
        double rot_err = 0.0;
        for (const char *name : {"reference", "transmission"})
        {
            const auto sc = build_scenario(name);
            Scene rotated = sc.scene;
            rotated.layout = sc.scene.layout.rotated(q);
            for (auto &s : rotated.subarrays)
                s.center = q * s.center;
            for (const auto &[state_name, st] : sc.states)
            {
                const FarField a(sc.scene, st), b(rotated, st);
                double scale = 0.0;
                for (const auto &u : dirs)
                    scale = std::max(scale, std::abs(a(u)[1]));
                if (scale == 0.0)
                    continue;
                for (const auto &u : dirs)
                    for (int c = 0; c < 2; ++c)
                        rot_err = std::max(rot_err, std::abs(a(u)[c] - b(q * u)[c]) / scale);
            }
        }
        o.note("rotation=" + fmt("%.1e", rot_err));
        o.require(rot_err <= 1e-9, "rotation equivariance");

        // polarization isolation
        const auto refl = build_reflection_scenario();
        ControlState st = refl.states.at("wide");
        const FarField reflect_only(refl.scene, st);
        for (int p = 0; p < 3; ++p)
            st.gates[{0, p}] = 1;
        const FarField with_receive(refl.scene, st);
        bool isolated = true;
        for (const auto &u : dirs)
            isolated = isolated && reflect_only(u)[0] == 0.0 && with_receive(u)[1] == reflect_only(u)[1];
        o.require(isolated, "polarization isolation");

        // scale invariance of peak / HPBW / SLL
        bool exact = true;
        double general = 0.0;
        for (const char *name : {"phi_p30", "phi_p15", "phi_0", "wide"})
        {
            const auto g = horizon_cut(ref.scene, ref.states.at(name));
            const auto r = beam_report(g, Polarization::p2);
            auto scaled = [&](std::complex<double> s) {
                PatternGrid h = g;
                for (auto &v : h.samples[1])
                    v *= s;
                return beam_report(h, Polarization::p2);
            };
            for (std::complex<double> s : {std::complex<double>(2, 0), {-1, 0}, {0, 1}, {0, -4}})
            {
                const auto q2 = scaled(s);
                exact = exact && q2.peak_direction == r.peak_direction && q2.hpbw_deg == r.hpbw_deg && q2.sll_db == r.sll_db;
            }
            const auto q3 = scaled({0.37, 1.9});
            general = std::max({general, std::abs(*q3.hpbw_deg - *r.hpbw_deg), std::abs(q3.sll_db - r.sll_db)});
            exact = exact && q3.peak_direction == r.peak_direction;
        }
        o.note("scale(general)=" + fmt("%.1e", general));
        o.require(exact, "exact scale invariance");
        o.require(general <= 1e-9, "general scale invariance");
        return o;
    }

    Outcome criterion9()
    {
        Outcome o;
        const auto ref = build_single_face_reference();
        std::map<std::string, std::vector<double>> track;
        for (double ghz : {24.0, 26.0, 28.0, 30.0})
        {
            Scene s = ref.scene;
            s.element.frequency_hz = ghz * 1e9;
            for (const auto &m : {config1, config2})
                for (const auto &[name, want] : m)
                    track[name].push_back(peak_phi_deg(s, ref.states.at(name)));
            if (ghz != 26.0)
                check_pointing(o, s, ref, 4.0, 4.0, fmt("%.0fGHz:", ghz), false);
        }
        for (const auto &[name, v] : track)
        {
            bool up = true, down = true;
            for (size_t i = 1; i < v.size(); ++i)
            {
                up = up && v[i] >= v[i - 1];
                down = down && v[i] <= v[i - 1];
            }
            o.require(up || down, name + " squint monotone");
        }
        return o;
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    }

    Outcome criterion10()
    {
        Outcome o;
        const std::string config = RIS3D_DATA_DIR "/reference.scene";
        const std::string cli = RIS3D_CLI;
        std::vector<std::string> outputs;
        for (const char *run : {"1", "1", "8"})
        {
            const std::string out =
                (std::filesystem::temp_directory_path() / ("ris3d_acceptance_" + std::to_string(outputs.size()) + ".csv"))
                    .string();
            const std::string cmd = cli + " pattern --config " + config + " --state wide --grid-deg 1 --workers " + run +
                                    " --out " + out;
            o.require(std::system(cmd.c_str()) == 0, "cli run");
            outputs.push_back(slurp(out));
            std::filesystem::remove(out);
        }
        o.note("bytes=" + std::to_string(outputs[0].size()));
        o.require(!outputs[0].empty(), "non-empty output");
        o.require(outputs[0] == outputs[1], "identical across runs");
        o.require(outputs[0] == outputs[2], "identical across workers");

        const std::string text = slurp(config);
        const SceneConfig cfg = parse_scene_config(text);
        o.require(parse_scene_config(export_scene_config(cfg)) == cfg, "round trip equality");
        o.require(export_scene_config(cfg) == text, "round trip bytes");
        const auto built = build_single_face_reference();
        o.require(cfg.scene == built.scene && cfg.states == built.states, "shipped config equals builder");
        return o;
    }
} // namespace

int main()
{
    struct Criterion
    {
        int id;
        const char *title;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "configuration-1 beams at -30/0/+30 deg", 5.0, criterion1},
        {2, "configuration-2 +/-15 deg beams and offset search", 0.0, criterion2},
        {3, "configuration-3 wide beam", 0.0, criterion3},
        {4, "oracle equivalence", 10.0, criterion4},
        {5, "grating lobes", 0.0, criterion5},
        {6, "quadrature normalization", 0.0, criterion6},
        {7, "transmission superposition and masking", 0.0, criterion7},
        {8, "invariance suite", 0.0, criterion8},
        {9, "broadband sweep 24-30 GHz", 30.0, criterion9},
        {10, "CLI reproducibility and round trip", 0.0, criterion10},
    };
    int failed = 0;
    for (const auto &c : all)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0 && s > c.budget_s)
            o.require(false, "runtime over " + fmt("%.0f s", c.budget_s));
        std::printf("[%s] criterion %2d: %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, s, o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
