// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "beamplan/antenna.hpp"
#include "beamplan/channel.hpp"
#include "beamplan/power.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace beamplan::scenario {

// Minimal TOML subset: [section] headers and key = value lines where value is
// a number, a quoted string, a boolean, or an array of numbers. That covers
// the scenario files; anything fancier raises ConfigError with the line.
struct TomlValue {
    std::variant<double, std::string, bool, std::vector<double>> v;

    double as_number(const std::string &key) const;
    const std::string &as_string(const std::string &key) const;
    bool as_bool(const std::string &key) const;
    const std::vector<double> &as_array(const std::string &key) const;
};

using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

TomlTable parse_toml(const std::string &text, const std::string &name = "<string>");
TomlTable parse_toml_file(const std::string &path);

struct SweepRange {
    double lo;
    double hi;
    double step;
};

SweepRange parse_range(const std::string &spec); // "lo:hi:step"

struct Scenario {
    double wavelength_m = 0.005;
    power::Channel channel;
    std::optional<channel::ClusterProfile> cluster; // present for model = "rays"
    double bin_width_deg = 1.0;
    antenna::UpaParameterSet set;
    bool exact_eq13 = false;
    std::vector<double> etas;
    std::optional<SweepRange> sweep;
    std::optional<channel::SynthConfig> synth;
};

/// Loads a scenario file; settings missing from the file get defaults
/// (registry set 4, Gaussian channel sigma = 5 deg, AoA 90 deg, P_tot 1 mW).
Scenario load_scenario(const std::string &path);

/// The same defaults without a file.
Scenario default_scenario();

} // namespace beamplan::scenario
