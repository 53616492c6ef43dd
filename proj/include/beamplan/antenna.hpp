// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <vector>

namespace beamplan::antenna {

// Beamwidth of a uniformly excited lambda/2 ULA: 101.5 deg divided by the
// element count. Everything in this module is built on that rule.
inline constexpr double kUlaBeamwidthConst = 101.5;

// Fixed elevation-side design triple for a rectangular UPA. The optional
// prefactor override substitutes a published directivity coefficient that
// the beamwidth algebra does not reproduce (registry set 4).
struct UpaParameterSet {
    int id = 0;
    double delta_phi_y_deg;
    double delta_theta_deg;
    double theta0_deg;
    std::optional<double> prefactor_override;
};

// Directivity as a function of azimuth beamwidth, in the factored form
// D(dphi) = A * pi * sqrt(K + sign * dphi^2) / dphi.
struct DirectivityCoefficients {
    double a_coeff;       // A, multiplies pi
    double k_coeff;       // K, deg^2
    int sign;             // sign of dphi^2 inside the radical
    double domain_max_deg; // sqrt(K) when sign = -1, +inf otherwise
};

struct UpaDesign {
    int m_elements; // x axis
    int n_elements; // y axis
    double theta0_deg;
    double phi0_deg;
    int total() const { return m_elements * n_elements; }
};

struct ConstraintReport {
    bool c1_pass; // large-array limit on delta_phi_y
    bool c2_pass; // real beamwidth radicand
    bool c3_pass; // theta0 + delta_theta/2 within 2 deg of 90
    double c3_sum_deg;
};

/// Broadside directivity pi * cos(theta0) * N * M. Arrays below the
/// large-array regime (M or N < 7) set *small_array_flag when provided.
double upa_directivity_broadside(int m, int n, double theta0_deg,
                                 bool *small_array_flag = nullptr);

/// 101.5 / elements, degrees.
double ula_beamwidth_deg(int elements);

/// Broadside ULA directivity equals the element count.
double ula_directivity(int elements);

struct Beamwidths {
    double delta_theta_deg;
    double delta_phi_deg;
};

/// Elevation and azimuth beamwidths of a large rectangular UPA scanned to
/// (theta0, phi0), from the per-axis ULA beamwidths.
Beamwidths upa_beamwidths(double delta_phi_x_deg, double delta_phi_y_deg, double theta0_deg,
                          double phi0_deg);

/// Inverts upa_beamwidths for delta_phi_x given the elevation-side triple and
/// a target azimuth beamwidth. Throws on a non-positive radicand (the
/// constraint-2 region).
double solve_delta_phi_x(double delta_theta_deg, double theta0_deg, double delta_phi_y_deg,
                         double delta_phi_deg);

DirectivityCoefficients directivity_coefficients(const UpaParameterSet &set);

/// A * pi * sqrt(K + sign * dphi^2) / dphi; throws outside the supported
/// beamwidth range.
double directivity_at(const UpaParameterSet &set, double delta_phi_deg);

ConstraintReport check_constraints(const UpaParameterSet &set);

/// Translates a target azimuth beamwidth into an element-count design:
/// delta_phi_x from solve_delta_phi_x, then M = ceil(101.5 / delta_phi_x)
/// and N = ceil(101.5 / delta_phi_y).
UpaDesign elements_for_beamwidth(const UpaParameterSet &set, double delta_phi_deg,
                                 double phi0_deg);

/// Built-in candidate parameter sets, addressable by id 1..4. Set 4 carries
/// the published prefactor override (45.9); pass exact_eq13 = true to drop it
/// and use the coefficient computed from the beamwidth algebra instead.
const std::vector<UpaParameterSet> &registry();
UpaParameterSet registry_set(int id, bool exact_eq13 = false);

} // namespace beamplan::antenna
