// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// CLI verbs: sweep, solve, compare, fit, check, synth. CSV goes to --out,
// human-readable summaries to stdout. Exit codes: 0 success, 2 config/parse
// error, 3 numeric/domain error.

#include "beamplan/antenna.hpp"
#include "beamplan/channel.hpp"
#include "beamplan/errors.hpp"
#include "beamplan/power.hpp"
#include "beamplan/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr const char *kVersion = "0.1.0";

using beamplan::ConfigError;
using beamplan::NumericError;
namespace antenna = beamplan::antenna;
namespace channel = beamplan::channel;
namespace power = beamplan::power;
namespace scenario = beamplan::scenario;

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct CommonOpts {
    std::string scenario_path;
    std::string out_path;
    std::optional<int> set_id;
    bool exact_eq13 = false;
    std::vector<double> etas;
    std::string range_spec;
    std::optional<std::uint64_t> seed;
    double bin_width = 0.0; // 0 = take from scenario
};

void add_common(CLI::App *cmd, CommonOpts &o)
{
    cmd->add_option("--scenario", o.scenario_path, "Scenario TOML file");
    cmd->add_option("--out", o.out_path, "Output CSV path");
    cmd->add_option("--set", o.set_id, "Registry parameter set id (1..4)");
    cmd->add_flag("--exact-eq13", o.exact_eq13,
                  "Use the coefficient computed from the beamwidth algebra instead of the "
                  "published set-4 prefactor");
    cmd->add_option("--eta", o.etas, "Percentile targets in (0,1)")->delimiter(',');
    cmd->add_option("--range", o.range_spec, "Beamwidth range lo:hi:step (degrees)");
    cmd->add_option("--seed", o.seed, "Generator seed");
    cmd->add_option("--bin", o.bin_width, "Bin width for ray discretization (degrees)");
}

scenario::Scenario effective_scenario(const CommonOpts &o)
{
    scenario::Scenario s = o.scenario_path.empty() ? scenario::default_scenario()
                                                   : scenario::load_scenario(o.scenario_path);
    if (o.exact_eq13)
        s.exact_eq13 = true;
    if (o.set_id)
        s.set = antenna::registry_set(*o.set_id, s.exact_eq13);
    else if (o.exact_eq13 && s.set.id != 0)
        s.set = antenna::registry_set(s.set.id, true);
    if (!o.etas.empty())
        s.etas = o.etas;
    if (!o.range_spec.empty())
        s.sweep = scenario::parse_range(o.range_spec);
    if (o.seed && s.synth)
        s.synth->seed = *o.seed;
    if (o.bin_width > 0.0)
        s.bin_width_deg = o.bin_width;
    return s;
}

nlohmann::json channel_json(const power::Channel &ch)
{
    nlohmann::json j;
    if (const auto *pas = std::get_if<channel::GaussianPas>(&ch))
    {
        j["model"] = "gaussian";
        j["sigma_deg"] = pas->sigma_deg;
        j["cluster_aoa_deg"] = pas->cluster_aoa_deg;
        j["total_power_mw"] = pas->total_power_mw;
    }
    else
    {
        const auto &fit = std::get<channel::GaussianFit>(ch);
        j["model"] = "fit";
        j["u"] = fit.u;
        j["x_deg"] = fit.x_deg;
        j["v_deg"] = fit.v_deg;
    }
    return j;
}

void write_manifest(const std::string &command, const CommonOpts &o,
                    const scenario::Scenario &s)
{
    if (o.out_path.empty())
        return;
    if (const char *env = std::getenv("BEAMPLAN_NO_MANIFEST"); env && std::string(env) == "1")
        return;

    nlohmann::json j;
    j["command"] = command;
    j["scenario"] = o.scenario_path;
    j["outputs"] = {o.out_path};
    const auto now = std::chrono::system_clock::now();
    j["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                              now.time_since_epoch())
                              .count();
    j["version"] = kVersion;
    j["parameters"]["set_id"] = s.set.id;
    j["parameters"]["delta_phi_y_deg"] = s.set.delta_phi_y_deg;
    j["parameters"]["delta_theta_deg"] = s.set.delta_theta_deg;
    j["parameters"]["theta0_deg"] = s.set.theta0_deg;
    if (s.set.prefactor_override)
        j["parameters"]["prefactor_override"] = *s.set.prefactor_override;
    j["parameters"]["channel"] = channel_json(s.channel);
    j["parameters"]["wavelength_m"] = s.wavelength_m;

    std::ofstream out(o.out_path + ".manifest.json", std::ios::binary);
    if (!out)
        throw ConfigError("cannot write manifest next to '" + o.out_path + "'");
    out << j.dump(2) << "\n";
}

std::ofstream open_out(const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open output '" + path + "'");
    return out;
}

int cmd_sweep(const CommonOpts &o)
{
    const scenario::Scenario s = effective_scenario(o);
    const scenario::SweepRange range = s.sweep.value_or(scenario::SweepRange{0.5, 13.5, 0.1});

    const auto coeffs = antenna::directivity_coefficients(s.set);
    if (range.hi > coeffs.domain_max_deg)
        throw NumericError("sweep: range end " + fmt(range.hi) +
                           " deg exceeds the supported beamwidth domain sqrt(K) = " +
                           fmt(coeffs.domain_max_deg) + " deg of this parameter set");

    const double pmax = power::max_received_power(s.set, s.channel);
    if (o.out_path.empty())
        throw ConfigError("sweep: --out is required");
    auto out = open_out(o.out_path);
    out << "delta_phi_deg,directivity,extracted_power_mw,received_power_mw,"
           "received_power_dbm,percent_of_max\n";
    const int n = static_cast<int>(std::floor((range.hi - range.lo) / range.step + 1e-9)) + 1;
    for (int i = 0; i < n; ++i)
    {
        const double dphi = range.lo + i * range.step;
        const double d = antenna::directivity_at(s.set, dphi);
        const double ext = power::extracted_power(s.channel, dphi);
        const double pr = d * ext;
        out << fmt(dphi) << ',' << fmt(d) << ',' << fmt(ext) << ',' << fmt(pr) << ','
            << fmt(power::to_dbm(pr)) << ',' << fmt(100.0 * pr / pmax) << '\n';
    }
    write_manifest("sweep", o, s);
    std::cout << "sweep: " << n << " rows -> " << o.out_path << "\n";
    return 0;
}

int cmd_solve(const CommonOpts &o)
{
    const scenario::Scenario s = effective_scenario(o);
    std::vector<double> etas = s.etas;
    if (etas.empty())
        etas = {0.95};

    std::ofstream out;
    if (!o.out_path.empty())
    {
        out = open_out(o.out_path);
        out << "eta,delta_phi_eta_deg,m_elements,n_elements,total_elements,"
               "received_power_mw,received_power_dbm\n";
    }

    int warnings = 0;
    for (double eta : etas)
    {
        try
        {
            const power::PercentileSolution sol =
                power::percentile_beamwidth(s.set, s.channel, eta);
            std::printf("eta=%.6g  delta_phi=%.4f deg  M=%d N=%d total=%d  "
                        "P=%.6g mW (%.3f dBm)\n",
                        eta, sol.beamwidth_deg, sol.design.m_elements, sol.design.n_elements,
                        sol.design.total(), sol.received_power_mw,
                        power::to_dbm(sol.received_power_mw));
            if (sol.design.m_elements < 7)
            {
                std::printf("  note: M=%d is below the large-array regime (M >= 7); the "
                            "element-count rule is extrapolated here\n",
                            sol.design.m_elements);
                ++warnings;
            }
            if (sol.design.total() > 10000)
            {
                std::printf("  note: %d elements is impractical\n", sol.design.total());
                ++warnings;
            }
            if (out.is_open())
                out << fmt(eta) << ',' << fmt(sol.beamwidth_deg) << ','
                    << sol.design.m_elements << ',' << sol.design.n_elements << ','
                    << sol.design.total() << ',' << fmt(sol.received_power_mw) << ','
                    << fmt(power::to_dbm(sol.received_power_mw)) << '\n';
        }
        catch (const beamplan::NoSolutionError &e)
        {
            std::printf("eta=%.6g  UNREACHABLE (%s)\n", eta, e.what());
            ++warnings;
        }
    }
    if (!o.out_path.empty())
        write_manifest("solve", o, s);
    if (warnings > 0)
        std::printf("%d warning(s)\n", warnings);
    return 0;
}

int cmd_compare(const CommonOpts &o)
{
    const scenario::Scenario s = effective_scenario(o);
    const scenario::SweepRange range = s.sweep.value_or(scenario::SweepRange{0.5, 13.5, 0.1});
    const auto coeffs = antenna::directivity_coefficients(s.set);
    if (range.hi > coeffs.domain_max_deg)
        throw NumericError("compare: range end exceeds the supported beamwidth domain "
                           "sqrt(K) = " +
                           fmt(coeffs.domain_max_deg) + " deg");

    if (!o.out_path.empty())
    {
        auto out = open_out(o.out_path);
        out << "architecture,delta_phi_deg,received_power_mw,received_power_dbm\n";
        const int n =
            static_cast<int>(std::floor((range.hi - range.lo) / range.step + 1e-9)) + 1;
        for (int i = 0; i < n; ++i)
        {
            const double dphi = range.lo + i * range.step;
            const double pr = power::received_power(s.set, s.channel, dphi);
            out << "UPA," << fmt(dphi) << ',' << fmt(pr) << ',' << fmt(power::to_dbm(pr))
                << '\n';
        }
        for (int i = 0; i < n; ++i)
        {
            const double dphi = range.lo + i * range.step;
            const double pr = power::ula_received_power(s.channel, dphi);
            out << "ULA," << fmt(dphi) << ',' << fmt(pr) << ',' << fmt(power::to_dbm(pr))
                << '\n';
        }
    }

    const double upa_max = power::max_received_power(s.set, s.channel);
    const double ula_max = power::ula_max_power(s.channel);
    const double gap_db = power::to_dbm(upa_max / ula_max);
    std::printf("UPA max: %.6g mW (%.3f dBm)\n", upa_max, power::to_dbm(upa_max));
    std::printf("ULA max: %.6g mW (%.3f dBm)\n", ula_max, power::to_dbm(ula_max));
    std::printf("max-to-max gap: %.2f dB\n", gap_db);

    const auto rows = power::compare_ula_upa(s.set, s.channel, {0.95, 0.5});
    for (const auto &r : rows)
        std::printf("%s eta=%.2f: delta_phi=%.4f deg, %d elements, %.6g mW (%.3f dBm)\n",
                    r.architecture.c_str(), r.eta, r.beamwidth_deg, r.elements, r.power_mw,
                    r.power_dbm);

    // 50% UPA point against the 95% ULA point.
    const auto upa50 = power::percentile_beamwidth(s.set, s.channel, 0.5);
    const auto ula95 = power::ula_percentile_beamwidth(s.channel, 0.95);
    std::printf("UPA@50%% vs ULA@95%%: %+.2f dB\n",
                power::to_dbm(upa50.received_power_mw / ula95.received_power_mw));
    if (upa50.design.total() >= 49 && upa50.design.total() <= 100)
        std::printf("note: the 50%% UPA design (%d elements) is in 8x8-class territory\n",
                    upa50.design.total());
    if (!o.out_path.empty())
        write_manifest("compare", o, s);
    return 0;
}

int cmd_fit(const CommonOpts &o, const std::string &ray_path)
{
    channel::ClusterProfile cluster;
    double bin = o.bin_width;
    if (!ray_path.empty())
        cluster = channel::read_ray_csv_file(ray_path);
    else
    {
        const scenario::Scenario s = effective_scenario(o);
        if (!s.cluster)
            throw ConfigError("fit: give a ray CSV path or a scenario with channel model "
                              "'rays'");
        cluster = *s.cluster;
        if (bin <= 0.0)
            bin = s.bin_width_deg;
    }
    if (bin <= 0.0 && cluster.diffuse.size() >= 2)
        bin = cluster.sas_deg / static_cast<double>(cluster.diffuse.size() - 1);
    if (bin <= 0.0)
        bin = 1.0;

    const channel::GaussianFit fit = channel::fit_cluster(cluster, bin);
    const double integrated = fit.u * fit.v_deg * std::sqrt(M_PI);
    const double eq5 = channel::total_cluster_power(cluster);
    std::printf("u=%.6g mW/deg  x=%.4f deg  v=%.4f deg\n", fit.u, fit.x_deg, fit.v_deg);
    std::printf("sigma_r=%.4f deg\n", channel::sigma_equivalent(fit));
    std::printf("integrated fitted power: %.6g mW (%.3f dBm)\n", integrated,
                power::to_dbm(integrated));
    std::printf("ray-sum cluster power:   %.6g mW (%.3f dBm)\n", eq5, power::to_dbm(eq5));
    return 0;
}

int cmd_check(const CommonOpts &o)
{
    const scenario::Scenario s = effective_scenario(o);
    const antenna::ConstraintReport rep = antenna::check_constraints(s.set);
    std::printf("set %d: delta_phi_y=%.4g deg, delta_theta=%.4g deg, theta0=%.4g deg\n",
                s.set.id, s.set.delta_phi_y_deg, s.set.delta_theta_deg, s.set.theta0_deg);
    std::printf("C1 %s: delta_phi_y <= 14.5 deg (large-array limit)\n",
                rep.c1_pass ? "PASS" : "FAIL");
    std::printf("C2 %s: delta_phi_y^2 - delta_theta^2 cos^2(theta0) >= 0\n",
                rep.c2_pass ? "PASS" : "FAIL");
    std::printf("C3 %s: theta0 + delta_theta/2 = %.4g deg (target 90 +/- 2)\n",
                rep.c3_pass ? "PASS" : "FAIL", rep.c3_sum_deg);
    return 0;
}

int cmd_synth(const CommonOpts &o)
{
    const scenario::Scenario s = effective_scenario(o);
    if (!s.synth)
        throw ConfigError("synth: scenario needs a [synth] section");
    if (o.out_path.empty())
        throw ConfigError("synth: --out is required");
    const channel::ClusterProfile cluster = channel::synthesize_cluster(*s.synth);
    channel::write_ray_csv_file(o.out_path, cluster);
    write_manifest("synth", o, s);
    std::printf("synth: %zu diffuse rays, P_tot=%.6g mW -> %s\n", cluster.diffuse.size(),
                channel::total_cluster_power(cluster), o.out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"beamplan: UPA beamwidth / received-power planning for mmWave clusters"};
    app.set_version_flag("--version", std::string("beamplan ") + kVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    std::string ray_path;

    CLI::App *sweep = app.add_subcommand("sweep", "Received power over a beamwidth grid");
    add_common(sweep, opts);
    CLI::App *solve = app.add_subcommand("solve", "Percentile beamwidth and element counts");
    add_common(solve, opts);
    CLI::App *compare = app.add_subcommand("compare", "UPA vs ULA for the same channel");
    add_common(compare, opts);
    CLI::App *fit = app.add_subcommand("fit", "Fit a Gaussian density to a ray cluster");
    fit->add_option("rays", ray_path, "Ray CSV file");
    add_common(fit, opts);
    CLI::App *check = app.add_subcommand("check", "Constraint report for a parameter set");
    add_common(check, opts);
    CLI::App *synth = app.add_subcommand("synth", "Write a synthetic ray cluster CSV");
    add_common(synth, opts);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (sweep->parsed())
            return cmd_sweep(opts);
        if (solve->parsed())
            return cmd_solve(opts);
        if (compare->parsed())
            return cmd_compare(opts);
        if (fit->parsed())
            return cmd_fit(opts, ray_path);
        if (check->parsed())
            return cmd_check(opts);
        if (synth->parsed())
            return cmd_synth(opts);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const NumericError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
