// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "beamplan/numerics.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace beamplan::channel {

using numerics::GaussianFit;

// One diffuse ray of a cluster. Amplitude is in sqrt(mW); the offset AoA is
// relative to the specular AoA and may be negative. Phase and delay are
// carried for completeness but do not enter the power math.
struct Ray {
    double amplitude;
    double phase_rad;
    double delay_s;
    double offset_aoa_deg;
};

// Ray-cluster representation: one specular ray plus an ordered diffuse list.
struct ClusterProfile {
    double specular_amplitude = 0.0;
    double specular_phase_rad = 0.0;
    double specular_toa_s = 0.0;
    double specular_aoa_deg = 0.0;
    std::vector<Ray> diffuse; // ordered by offset_aoa_deg
    double sas_deg = 0.0;     // supported angle spread, last offset - first offset
};

// IEEE 802.11ad style Gaussian power angular spectrum.
struct GaussianPas {
    double sigma_deg;
    double cluster_aoa_deg;
    double total_power_mw;
};

// Uniformly binned power angle profile.
struct PasSamples {
    std::vector<double> angle_deg;           // bin centers, strictly increasing
    std::vector<double> density_mw_per_deg;  // >= 0
    double bin_width_deg;
};

/// Sorts the diffuse rays by offset AoA and recomputes sas_deg.
ClusterProfile normalize_cluster(ClusterProfile cluster);

/// Gaussian PAS density at an absolute azimuth angle, mW/deg.
double gaussian_pas_density(const GaussianPas &pas, double phi_deg);

/// Total cluster power: a_s^2 + (S / N_r) * sum a_k^2 (mW).
double total_cluster_power(const ClusterProfile &cluster);

/// Bins ray powers into a uniform angle grid; bin centers land on the ray
/// grid when the bin width equals the ray spacing. Power is conserved.
PasSamples discretize_pas(const ClusterProfile &cluster, double bin_width_deg);

/// discretize_pas followed by numerics::fit_gaussian.
GaussianFit fit_cluster(const ClusterProfile &cluster, double bin_width_deg);

/// Standard deviation of the fitted density exp(-(phi-x)^2/v^2): v / sqrt(2).
double sigma_equivalent(const GaussianFit &fit);

enum class Envelope { Gaussian, Uniform, Exponential };

Envelope envelope_from_name(const std::string &name); // throws ConfigError

// Synthetic ray-cluster generator. Amplitudes follow the envelope exactly;
// the seed only randomizes phases and delays, so power is deterministic.
struct SynthConfig {
    int n_rays = 75;
    double sas_deg = 72.2;
    Envelope envelope = Envelope::Gaussian;
    double peak_amplitude = 1.0;
    double envelope_width_deg = 9.23; // Gaussian: v of the resulting density
    double specular_amplitude = 0.0;
    double specular_aoa_deg = 90.0;
    double specular_toa_s = 0.0;
    std::uint64_t seed = 1;
};

ClusterProfile synthesize_cluster(const SynthConfig &cfg);

/// Peak diffuse amplitude so that the binned density peak equals
/// peak_density_mw_per_deg when one ray falls in each bin.
double peak_amplitude_for_density(double peak_density_mw_per_deg, int n_rays);

// Ray CSV: leading '# key=value' metadata block, then a header row
// 'offset_aoa_deg,amplitude,phase_rad,delay_s'. Amplitudes are sqrt(mW) by
// default; '# amplitude_unit=power_dbm' switches the column to ray power in
// dBm. Malformed input raises ConfigError naming the line.
ClusterProfile read_ray_csv(std::istream &in, const std::string &name = "<stream>");
ClusterProfile read_ray_csv_file(const std::string &path);
void write_ray_csv(std::ostream &out, const ClusterProfile &cluster);
void write_ray_csv_file(const std::string &path, const ClusterProfile &cluster);

} // namespace beamplan::channel
