// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "beamplan/scenario.hpp"
#include "beamplan/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace beamplan::scenario {

namespace {

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string &name, int line, const std::string &msg)
{
    throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

double parse_num(const std::string &tok, const std::string &name, int line)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    }
    catch (const std::exception &)
    {
        fail(name, line, "bad number '" + tok + "'");
    }
}

TomlValue parse_value(const std::string &raw, const std::string &name, int line)
{
    const std::string t = trim(raw);
    if (t.empty())
        fail(name, line, "missing value");
    if (t.front() == '"')
    {
        if (t.size() < 2 || t.back() != '"')
            fail(name, line, "unterminated string");
        return {t.substr(1, t.size() - 2)};
    }
    if (t == "true")
        return {true};
    if (t == "false")
        return {false};
    if (t.front() == '[')
    {
        if (t.back() != ']')
            fail(name, line, "unterminated array");
        std::vector<double> vals;
        std::stringstream ss(t.substr(1, t.size() - 2));
        std::string item;
        while (std::getline(ss, item, ','))
        {
            const std::string it = trim(item);
            if (it.empty())
                continue;
            vals.push_back(parse_num(it, name, line));
        }
        return {vals};
    }
    return {parse_num(t, name, line)};
}

// Strip a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string &line)
{
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        if (line[i] == '"')
            in_str = !in_str;
        else if (line[i] == '#' && !in_str)
            return line.substr(0, i);
    }
    return line;
}

} // namespace

double TomlValue::as_number(const std::string &key) const
{
    if (const double *d = std::get_if<double>(&v))
        return *d;
    throw ConfigError("key '" + key + "' must be a number");
}

const std::string &TomlValue::as_string(const std::string &key) const
{
    if (const std::string *s = std::get_if<std::string>(&v))
        return *s;
    throw ConfigError("key '" + key + "' must be a string");
}

bool TomlValue::as_bool(const std::string &key) const
{
    if (const bool *b = std::get_if<bool>(&v))
        return *b;
    throw ConfigError("key '" + key + "' must be a boolean");
}

const std::vector<double> &TomlValue::as_array(const std::string &key) const
{
    if (const auto *a = std::get_if<std::vector<double>>(&v))
        return *a;
    throw ConfigError("key '" + key + "' must be an array of numbers");
}

TomlTable parse_toml(const std::string &text, const std::string &name)
{
    TomlTable table;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw))
    {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                fail(name, lineno, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                fail(name, lineno, "empty section name");
            table[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(name, lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            fail(name, lineno, "empty key");
        table[section][key] = parse_value(line.substr(eq + 1), name, lineno);
    }
    return table;
}

TomlTable parse_toml_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scenario '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_toml(ss.str(), path);
}

SweepRange parse_range(const std::string &spec)
{
    SweepRange r;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi, &r.step, &extra) != 3)
        throw ConfigError("bad range '" + spec + "' (expected lo:hi:step)");
    if (!(r.step > 0.0) || !(r.lo <= r.hi) || !(r.lo > 0.0))
        throw ConfigError("bad range '" + spec + "': need 0 < lo <= hi and step > 0");
    return r;
}

Scenario default_scenario()
{
    Scenario s;
    s.channel = channel::GaussianPas{5.0, 90.0, 1.0};
    s.set = antenna::registry_set(4);
    return s;
}

namespace {

const TomlValue *find(const TomlTable &t, const std::string &sec, const std::string &key)
{
    const auto si = t.find(sec);
    if (si == t.end())
        return nullptr;
    const auto ki = si->second.find(key);
    return ki == si->second.end() ? nullptr : &ki->second;
}

double number_or(const TomlTable &t, const std::string &sec, const std::string &key, double dflt)
{
    const TomlValue *v = find(t, sec, key);
    return v ? v->as_number(key) : dflt;
}

} // namespace

Scenario load_scenario(const std::string &path)
{
    const TomlTable t = parse_toml_file(path);
    Scenario s = default_scenario();

    s.wavelength_m = number_or(t, "", "wavelength_m", s.wavelength_m);
    if (!(s.wavelength_m > 0.0))
        throw ConfigError(path + ": wavelength_m must be positive");

    // [antenna]
    if (const TomlValue *v = find(t, "antenna", "exact_eq13"))
        s.exact_eq13 = v->as_bool("exact_eq13");
    if (const TomlValue *v = find(t, "antenna", "set"))
    {
        const int id = static_cast<int>(v->as_number("set"));
        s.set = antenna::registry_set(id, s.exact_eq13);
    }
    else if (find(t, "antenna", "delta_phi_y_deg"))
    {
        antenna::UpaParameterSet custom;
        custom.id = 0;
        custom.delta_phi_y_deg = number_or(t, "antenna", "delta_phi_y_deg", 0.0);
        custom.delta_theta_deg = number_or(t, "antenna", "delta_theta_deg", 0.0);
        custom.theta0_deg = number_or(t, "antenna", "theta0_deg", 0.0);
        if (const TomlValue *ov = find(t, "antenna", "prefactor_override"))
            custom.prefactor_override = ov->as_number("prefactor_override");
        if (!(custom.delta_phi_y_deg > 0.0) || !(custom.delta_theta_deg > 0.0) ||
            custom.theta0_deg < 0.0 || custom.theta0_deg >= 90.0)
            throw ConfigError(path + ": custom antenna set needs positive beamwidths and "
                                     "theta0_deg in [0, 90)");
        s.set = custom;
    }
    else if (s.exact_eq13)
        s.set = antenna::registry_set(4, true);

    // [channel]
    std::string model = "gaussian";
    if (const TomlValue *v = find(t, "channel", "model"))
        model = v->as_string("model");
    s.bin_width_deg = number_or(t, "channel", "bin_width_deg", s.bin_width_deg);
    if (model == "gaussian")
    {
        channel::GaussianPas pas;
        pas.sigma_deg = number_or(t, "channel", "sigma_deg", 5.0);
        pas.cluster_aoa_deg = number_or(t, "channel", "cluster_aoa_deg", 90.0);
        if (const TomlValue *v = find(t, "channel", "total_power_dbm"))
            pas.total_power_mw = std::pow(10.0, v->as_number("total_power_dbm") / 10.0);
        else
            pas.total_power_mw = number_or(t, "channel", "total_power_mw", 1.0);
        if (!(pas.sigma_deg > 0.0) || !(pas.total_power_mw > 0.0))
            throw ConfigError(path + ": gaussian channel needs sigma_deg > 0 and positive power");
        s.channel = pas;
    }
    else if (model == "fit")
    {
        channel::GaussianFit fit;
        fit.u = number_or(t, "channel", "u", 6.434e-5);
        fit.x_deg = number_or(t, "channel", "x_deg", 90.0);
        fit.v_deg = number_or(t, "channel", "v_deg", 9.23);
        if (!(fit.u > 0.0) || !(fit.v_deg > 0.0))
            throw ConfigError(path + ": fit channel needs u > 0 and v_deg > 0");
        s.channel = fit;
    }
    else if (model == "rays")
    {
        const TomlValue *v = find(t, "channel", "ray_file");
        if (!v)
            throw ConfigError(path + ": channel model 'rays' needs ray_file");
        s.cluster = channel::read_ray_csv_file(v->as_string("ray_file"));
        s.channel = channel::fit_cluster(*s.cluster, s.bin_width_deg);
    }
    else
        throw ConfigError(path + ": unknown channel model '" + model +
                          "' (gaussian|fit|rays)");

    // [solve]
    if (const TomlValue *v = find(t, "solve", "eta"))
        s.etas = v->as_array("eta");

    // [sweep]
    if (const TomlValue *v = find(t, "sweep", "range"))
        s.sweep = parse_range(v->as_string("range"));
    else if (find(t, "sweep", "lo"))
    {
        SweepRange r;
        r.lo = number_or(t, "sweep", "lo", 0.5);
        r.hi = number_or(t, "sweep", "hi", 13.5);
        r.step = number_or(t, "sweep", "step", 0.1);
        if (!(r.step > 0.0) || !(r.lo <= r.hi) || !(r.lo > 0.0))
            throw ConfigError(path + ": bad sweep range");
        s.sweep = r;
    }

    // [synth]
    if (t.count("synth"))
    {
        channel::SynthConfig cfg;
        cfg.n_rays = static_cast<int>(number_or(t, "synth", "n_rays", cfg.n_rays));
        cfg.sas_deg = number_or(t, "synth", "sas_deg", cfg.sas_deg);
        if (const TomlValue *v = find(t, "synth", "envelope"))
            cfg.envelope = channel::envelope_from_name(v->as_string("envelope"));
        cfg.envelope_width_deg =
            number_or(t, "synth", "envelope_width_deg", cfg.envelope_width_deg);
        if (const TomlValue *v = find(t, "synth", "peak_density_mw_per_deg"))
            cfg.peak_amplitude =
                channel::peak_amplitude_for_density(v->as_number("peak_density_mw_per_deg"),
                                                    cfg.n_rays);
        else
            cfg.peak_amplitude = number_or(t, "synth", "peak_amplitude", cfg.peak_amplitude);
        cfg.specular_amplitude =
            number_or(t, "synth", "specular_amplitude", cfg.specular_amplitude);
        cfg.specular_aoa_deg = number_or(t, "synth", "specular_aoa_deg", cfg.specular_aoa_deg);
        cfg.specular_toa_s = number_or(t, "synth", "specular_toa_s", cfg.specular_toa_s);
        cfg.seed = static_cast<std::uint64_t>(number_or(t, "synth", "seed", 1.0));
        s.synth = cfg;
    }

    return s;
}

} // namespace beamplan::scenario
