// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "beamplan/channel.hpp"
#include "beamplan/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace beamplan::channel {

namespace {

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string &tok, const std::string &name, int line)
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
        throw ConfigError(name + ":" + std::to_string(line) + ": bad number '" + tok + "'");
    }
}

} // namespace

ClusterProfile read_ray_csv(std::istream &in, const std::string &name)
{
    ClusterProfile cluster;
    bool power_dbm = false;
    bool saw_header = false;
    std::string line;
    int lineno = 0;

    while (std::getline(in, line))
    {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty())
            continue;
        if (t[0] == '#')
        {
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                continue; // plain comment
            const std::string key = trim(t.substr(1, eq - 1));
            const std::string val = trim(t.substr(eq + 1));
            if (key == "specular_aoa_deg")
                cluster.specular_aoa_deg = parse_number(val, name, lineno);
            else if (key == "specular_amplitude")
                cluster.specular_amplitude = parse_number(val, name, lineno);
            else if (key == "specular_phase_rad")
                cluster.specular_phase_rad = parse_number(val, name, lineno);
            else if (key == "specular_toa_s")
                cluster.specular_toa_s = parse_number(val, name, lineno);
            else if (key == "amplitude_unit")
            {
                if (val == "power_dbm")
                    power_dbm = true;
                else if (val != "sqrt_mw")
                    throw ConfigError(name + ":" + std::to_string(lineno) +
                                      ": amplitude_unit must be sqrt_mw or power_dbm");
            }
            continue; // unknown metadata keys are tolerated
        }
        if (!saw_header)
        {
            if (t != "offset_aoa_deg,amplitude,phase_rad,delay_s")
                throw ConfigError(name + ":" + std::to_string(lineno) +
                                  ": expected header 'offset_aoa_deg,amplitude,phase_rad,delay_s'");
            saw_header = true;
            continue;
        }

        std::stringstream ss(t);
        std::string tok;
        double fields[4];
        for (int i = 0; i < 4; ++i)
        {
            if (!std::getline(ss, tok, ','))
                throw ConfigError(name + ":" + std::to_string(lineno) + ": expected 4 fields");
            fields[i] = parse_number(trim(tok), name, lineno);
        }
        if (std::getline(ss, tok, ','))
            throw ConfigError(name + ":" + std::to_string(lineno) + ": expected 4 fields");

        Ray r;
        r.offset_aoa_deg = fields[0];
        r.amplitude = power_dbm ? std::sqrt(std::pow(10.0, fields[1] / 10.0)) : fields[1];
        r.phase_rad = fields[2];
        r.delay_s = fields[3];
        if (r.amplitude < 0.0)
            throw ConfigError(name + ":" + std::to_string(lineno) + ": negative amplitude");
        if (r.delay_s < 0.0)
            throw ConfigError(name + ":" + std::to_string(lineno) + ": negative delay");
        cluster.diffuse.push_back(r);
    }
    if (!saw_header)
        throw ConfigError(name + ": missing header row");
    return normalize_cluster(std::move(cluster));
}

ClusterProfile read_ray_csv_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open ray file '" + path + "'");
    return read_ray_csv(in, path);
}

void write_ray_csv(std::ostream &out, const ClusterProfile &cluster)
{
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "# specular_aoa_deg=%.17g\n# specular_amplitude=%.17g\n"
                  "# specular_phase_rad=%.17g\n# specular_toa_s=%.17g\n",
                  cluster.specular_aoa_deg, cluster.specular_amplitude,
                  cluster.specular_phase_rad, cluster.specular_toa_s);
    out << buf;
    out << "offset_aoa_deg,amplitude,phase_rad,delay_s\n";
    for (const Ray &r : cluster.diffuse)
    {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.offset_aoa_deg,
                      r.amplitude, r.phase_rad, r.delay_s);
        out << buf;
    }
}

void write_ray_csv_file(const std::string &path, const ClusterProfile &cluster)
{
    std::ofstream out(path, std::ios::binary); // LF line endings everywhere
    if (!out)
        throw ConfigError("cannot open output '" + path + "'");
    write_ray_csv(out, cluster);
}

} // namespace beamplan::channel
