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


#include <ris3d/cli.hpp>

#include "CLI11.hpp"

#include <string>
#include <thread>

namespace
{
    // Shared grid flags: --grid-deg STEP, optional --theta-deg / --phi-deg axis specs.
    struct GridFlags
    {
        double step = 1.0;
        std::string theta, phi;

        void add(CLI::App *app)
        {
            app->add_option("--grid-deg", step, "Grid step in degrees (full sphere)")->check(CLI::PositiveNumber);
            app->add_option("--theta-deg", theta, "Theta axis: 'value' or 'start:stop:step' (degrees)");
            app->add_option("--phi-deg", phi, "Phi axis: 'value' or 'start:stop:step' (degrees)");
        }

        ris3d::cli::GridSpec spec() const
        {
            ris3d::cli::GridSpec g;
            g.step_deg = step;
            if (!theta.empty())
                g.theta = ris3d::cli::AxisSpec::parse(theta);
            if (!phi.empty())
                g.phi = ris3d::cli::AxisSpec::parse(phi);
            return g;
        }
    };

    ris3d::Polarization pol_of(const std::string &s) { return *ris3d::cli::parse_pol(s); }
} // namespace

int main(int argc, char **argv)
{
    namespace cli = ris3d::cli;

    CLI::App app{"ris3d: analytical far-field model of a cube-shaped reconfigurable intelligent surface"};
    app.require_subcommand(1);

    std::string config, state, out, pol = "p2";
    unsigned workers = 1;
    auto pol_check = CLI::IsMember({"p1", "p2"});

    GridFlags pattern_grid;
    auto *pattern = app.add_subcommand("pattern", "Write a far-field pattern table (CSV)");
    pattern->add_option("--config", config, "Scene config file")->required();
    pattern->add_option("--state", state, "State name")->required();
    pattern->add_option("--out", out, "Output CSV path")->required();
    pattern->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    pattern_grid.add(pattern);

    GridFlags report_grid;
    auto *report = app.add_subcommand("report", "Print beam metrics (JSON) for one state");
    report->add_option("--config", config)->required();
    report->add_option("--state", state)->required();
    report->add_option("--pol", pol)->check(pol_check);
    report->add_option("--workers", workers)->check(CLI::PositiveNumber);
    report_grid.add(report);

    std::string plane = "theta=90";
    double cut_step = 1.0;
    auto *cutcmd = app.add_subcommand("cut", "Write a normalized pattern cut (CSV)");
    cutcmd->add_option("--config", config)->required();
    cutcmd->add_option("--state", state)->required();
    cutcmd->add_option("--plane", plane, "'theta=<deg>' or 'phi=<deg>'");
    cutcmd->add_option("--grid-deg", cut_step)->check(CLI::PositiveNumber);
    cutcmd->add_option("--pol", pol)->check(pol_check);
    cutcmd->add_option("--out", out, "Output path (stdout when omitted)");

    cli::SearchJob sj;
    std::string gates;
    auto *search = app.add_subcommand("search", "Exhaustive phase-offset search for one gate pattern");
    search->add_option("--config", sj.config)->required();
    search->add_option("--state", sj.state, "State supplying illuminated face and routing");
    search->add_option("--face", sj.face, "Face whose reflect subarrays are gated");
    search->add_option("--gates", gates, "Comma-separated gate bits, one per reflect subarray")->required();
    search->add_option("--target-theta-deg", sj.target_theta_deg);
    search->add_option("--target-phi-deg", sj.target_phi_deg);
    search->add_option("--step-deg", sj.step_deg, "Offset grid step")->check(CLI::PositiveNumber);
    search->add_option("--cut-step-deg", sj.cut_step_deg)->check(CLI::PositiveNumber);

    cli::CodebookJob cj;
    std::string targets = "-30,-15,0,15,30";
    auto *codebook = app.add_subcommand("codebook", "Generate a beam codebook over target azimuths");
    codebook->add_option("--config", cj.config)->required();
    codebook->add_option("--state", cj.state, "State supplying illuminated face and routing");
    codebook->add_option("--targets", targets, "Comma-separated target phi values (degrees)");
    codebook->add_option("--theta-deg", cj.theta_deg);
    codebook->add_option("--face", cj.face);
    codebook->add_option("--step-deg", cj.step_deg)->check(CLI::PositiveNumber);
    codebook->add_option("--tolerance-deg", cj.tolerance_deg)->check(CLI::PositiveNumber);
    codebook->add_option("--out", cj.out, "Output path (stdout when omitted)");

    GridFlags sweep_grid;
    std::string freqs = "24,26,28,30";
    auto *sweep = app.add_subcommand("sweep", "Write one pattern table per frequency");
    sweep->add_option("--config", config)->required();
    sweep->add_option("--state", state)->required();
    sweep->add_option("--freqs-ghz", freqs, "Comma-separated frequencies in GHz");
    sweep->add_option("--out", out, "Output directory")->required();
    sweep->add_option("--workers", workers)->check(CLI::PositiveNumber);
    sweep_grid.add(sweep);

    auto *validate = app.add_subcommand("validate", "Check a config and report every violation");
    validate->add_option("--config", config)->required();
    validate->add_option("--state", state, "Only this state");

    std::string scenario = "reference";
    auto *exportcmd = app.add_subcommand("export", "Write a built-in scenario as a scene config");
    exportcmd->add_option("--scenario", scenario)->check(CLI::IsMember({"reference", "reflection", "transmission"}));
    exportcmd->add_option("--out", out, "Output path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*pattern)
            return cli::run_pattern({config, state, out, pattern_grid.spec(), workers, {}});
        if (*report)
            return cli::run_report({config, state, report_grid.spec(), pol_of(pol), workers});
        if (*cutcmd)
            return cli::run_cut({config, state, out, plane, cut_step, pol_of(pol)});
        if (*search)
        {
            for (double g : cli::parse_list(gates))
                sj.gates.push_back(static_cast<int>(g));
            return cli::run_search(sj);
        }
        if (*codebook)
        {
            cj.targets_phi_deg = cli::parse_list(targets);
            return cli::run_codebook(cj);
        }
        if (*sweep)
            return cli::run_sweep({config, state, out, cli::parse_list(freqs), sweep_grid.spec(), workers});
        if (*validate)
            return cli::run_validate(config, state);
        if (*exportcmd)
            return cli::run_export(scenario, out);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    }
    return cli::exit_usage;
}
