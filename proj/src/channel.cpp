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

#include <algorithm>
#include <cmath>
#include <random>

namespace beamplan::channel {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ClusterProfile normalize_cluster(ClusterProfile cluster)
{
    std::stable_sort(cluster.diffuse.begin(), cluster.diffuse.end(),
                     [](const Ray &a, const Ray &b) { return a.offset_aoa_deg < b.offset_aoa_deg; });
    cluster.sas_deg = cluster.diffuse.size() >= 2
                          ? cluster.diffuse.back().offset_aoa_deg - cluster.diffuse.front().offset_aoa_deg
                          : 0.0;
    return cluster;
}

double gaussian_pas_density(const GaussianPas &pas, double phi_deg)
{
    const double s2 = pas.sigma_deg * pas.sigma_deg;
    const double d = phi_deg - pas.cluster_aoa_deg;
    return pas.total_power_mw / std::sqrt(2.0 * kPi * s2) * std::exp(-d * d / (2.0 * s2));
}

double total_cluster_power(const ClusterProfile &cluster)
{
    double p = cluster.specular_amplitude * cluster.specular_amplitude;
    const auto n = cluster.diffuse.size();
    if (n == 0)
        return p;
    double diffuse = 0.0;
    for (const Ray &r : cluster.diffuse)
        diffuse += r.amplitude * r.amplitude;
    return p + cluster.sas_deg / static_cast<double>(n) * diffuse;
}

PasSamples discretize_pas(const ClusterProfile &cluster, double bin_width_deg)
{
    if (!(bin_width_deg > 0.0))
        throw NumericError("discretize_pas: bin width must be positive");
    if (cluster.diffuse.empty() && cluster.specular_amplitude == 0.0)
        throw DegenerateInputError("discretize_pas: empty cluster");

    const double alpha0 = cluster.diffuse.empty() ? 0.0 : cluster.diffuse.front().offset_aoa_deg;
    const double alpha1 = cluster.diffuse.empty() ? 0.0 : cluster.diffuse.back().offset_aoa_deg;
    const double b = bin_width_deg;

    // Bin centers run from specular_aoa + alpha0 - b to specular_aoa + alpha1 + b
    // so that equispaced rays with spacing b land exactly on centers.
    const double lo_c = cluster.specular_aoa_deg + alpha0 - b;
    const double hi_c = cluster.specular_aoa_deg + alpha1 + b;
    const int n_bins = static_cast<int>(std::llround((hi_c - lo_c) / b)) + 1;

    PasSamples out;
    out.bin_width_deg = b;
    out.angle_deg.resize(n_bins);
    out.density_mw_per_deg.assign(n_bins, 0.0);
    for (int i = 0; i < n_bins; ++i)
        out.angle_deg[i] = lo_c + i * b;

    auto deposit = [&](double phi, double power_mw) {
        int i = static_cast<int>(std::floor((phi - lo_c) / b + 0.5));
        i = std::clamp(i, 0, n_bins - 1);
        out.density_mw_per_deg[i] += power_mw / b;
    };

    const double per_ray = cluster.diffuse.empty()
                               ? 0.0
                               : cluster.sas_deg / static_cast<double>(cluster.diffuse.size());
    for (const Ray &r : cluster.diffuse)
        deposit(cluster.specular_aoa_deg + r.offset_aoa_deg, r.amplitude * r.amplitude * per_ray);
    if (cluster.specular_amplitude != 0.0)
        deposit(cluster.specular_aoa_deg, cluster.specular_amplitude * cluster.specular_amplitude);
    return out;
}

GaussianFit fit_cluster(const ClusterProfile &cluster, double bin_width_deg)
{
    const PasSamples pas = discretize_pas(cluster, bin_width_deg);
    int occupied = 0;
    for (double d : pas.density_mw_per_deg)
        if (d > 0.0)
            ++occupied;
    if (occupied < 5)
        throw DegenerateInputError("fit_cluster: fewer than 5 occupied bins");

    std::vector<numerics::Sample> samples;
    samples.reserve(pas.angle_deg.size());
    for (std::size_t i = 0; i < pas.angle_deg.size(); ++i)
        samples.push_back({pas.angle_deg[i], pas.density_mw_per_deg[i]});
    return numerics::fit_gaussian(samples);
}

double sigma_equivalent(const GaussianFit &fit)
{
    return fit.v_deg / std::sqrt(2.0);
}

Envelope envelope_from_name(const std::string &name)
{
    if (name == "gaussian")
        return Envelope::Gaussian;
    if (name == "uniform")
        return Envelope::Uniform;
    if (name == "exponential")
        return Envelope::Exponential;
    throw ConfigError("unknown envelope '" + name + "' (gaussian|uniform|exponential)");
}

ClusterProfile synthesize_cluster(const SynthConfig &cfg)
{
    if (cfg.n_rays < 0)
        throw ConfigError("synthesize_cluster: n_rays must be >= 0");
    if (cfg.sas_deg < 0.0)
        throw ConfigError("synthesize_cluster: sas_deg must be >= 0");
    if (cfg.n_rays >= 2 && cfg.sas_deg == 0.0)
        throw ConfigError("synthesize_cluster: sas_deg must be > 0 for multiple rays");

    ClusterProfile cluster;
    cluster.specular_amplitude = cfg.specular_amplitude;
    cluster.specular_aoa_deg = cfg.specular_aoa_deg;
    cluster.specular_toa_s = cfg.specular_toa_s;

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> delay(0.0, 20e-9);

    const double w = cfg.envelope_width_deg;
    for (int k = 0; k < cfg.n_rays; ++k)
    {
        const double alpha = cfg.n_rays == 1
                                 ? 0.0
                                 : -cfg.sas_deg / 2.0 + cfg.sas_deg * k / (cfg.n_rays - 1);
        double a = cfg.peak_amplitude;
        switch (cfg.envelope)
        {
        case Envelope::Gaussian:
            // density ~ a^2 follows exp(-alpha^2 / w^2)
            a *= std::exp(-alpha * alpha / (2.0 * w * w));
            break;
        case Envelope::Uniform:
            break;
        case Envelope::Exponential:
            a *= std::exp(-std::fabs(alpha) / w);
            break;
        }
        cluster.diffuse.push_back({a, phase(rng), delay(rng), alpha});
    }
    return normalize_cluster(std::move(cluster));
}

double peak_amplitude_for_density(double peak_density_mw_per_deg, int n_rays)
{
    if (n_rays < 2)
        throw ConfigError("peak_amplitude_for_density: needs n_rays >= 2");
    // With bin width equal to the ray spacing S/(n-1), the binned density of
    // ray k is a_k^2 * (n-1)/n; invert at the peak.
    return std::sqrt(peak_density_mw_per_deg * n_rays / (n_rays - 1.0));
}

} // namespace beamplan::channel
