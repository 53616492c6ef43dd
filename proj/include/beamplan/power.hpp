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
#include "beamplan/numerics.hpp"

#include <string>
#include <variant>
#include <vector>

namespace beamplan::power {

using channel::GaussianFit;
using channel::GaussianPas;

// Azimuth channel description: the Gaussian PAS model or a fitted ray-cluster
// density.
using Channel = std::variant<GaussianPas, GaussianFit>;

enum class BeamKind { Rectangular, Triangular };

// Idealized main-lobe window; weight is zero outside
// [steer - width/2, steer + width/2].
struct BeamPattern {
    BeamKind kind;
    double steer_deg;
    double width_deg;
};

// Answer of the percentile design problem.
struct PercentileSolution {
    double eta;
    double beamwidth_deg;
    double received_power_mw;
    antenna::UpaDesign design;
};

double beam_weight(const BeamPattern &pattern, double phi_deg);

/// Total power available in front of the antenna: P_inc * lambda^2 / (4 pi).
double incident_to_total_power(double p_inc_mw_per_m2, double wavelength_m);

/// Closed-form capture of a rectangular beam centered on the cluster AoA:
/// P_tot * erf(dphi / (2 sqrt(2) sigma)).
double extracted_power_gaussian(const GaussianPas &pas, double delta_phi_deg);

/// Same for a fitted density: u * v * sqrt(pi) * erf(dphi / (2 v)).
double extracted_power_fit(const GaussianFit &fit, double delta_phi_deg);

/// Quadrature of window x density over the window support; the only path
/// that supports the triangular window.
double extracted_power_numeric(const BeamPattern &pattern, const numerics::RealFunction &density,
                               double tol);

double extracted_power(const Channel &ch, double delta_phi_deg);

/// Directivity times extracted power, mW.
double received_power(const antenna::UpaParameterSet &set, const Channel &ch,
                      double delta_phi_deg);

/// Asymptotic (dphi -> 0) received power: A sqrt(pi K / 2) P_tot / sigma for
/// the Gaussian channel, A pi sqrt(K) u for the fitted one.
double max_received_power(const antenna::UpaParameterSet &set, const Channel &ch);

/// Solves the monotone percentile equation for the beamwidth at which the
/// received power equals eta times the asymptotic maximum, and translates it
/// into an element-count design (beam steered at phi0 = 90 deg by default).
PercentileSolution percentile_beamwidth(const antenna::UpaParameterSet &set, const Channel &ch,
                                        double eta, double phi0_deg = 90.0);

// ULA counterparts, G = 101.5 / dphi.
double ula_received_power(const Channel &ch, double delta_phi_deg);
double ula_max_power(const Channel &ch);

struct UlaPercentileSolution {
    double eta;
    double beamwidth_deg;
    double received_power_mw;
    int elements;
};

UlaPercentileSolution ula_percentile_beamwidth(const Channel &ch, double eta);

struct ComparisonRow {
    std::string architecture; // "UPA" or "ULA"
    double eta;
    double beamwidth_deg;
    int elements;
    double power_mw;
    double power_dbm;
    double delta_db_vs_ula_max;
};

std::vector<ComparisonRow> compare_ula_upa(const antenna::UpaParameterSet &set, const Channel &ch,
                                           const std::vector<double> &eta_list);

double to_dbm(double mw);

} // namespace beamplan::power
