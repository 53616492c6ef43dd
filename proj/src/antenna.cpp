// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "beamplan/antenna.hpp"
#include "beamplan/errors.hpp"

#include <cmath>
#include <limits>

namespace beamplan::antenna {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDeg = kPi / 180.0;

// Guard against FP noise in ceil() when the quotient is an exact integer.
int ceil_elements(double beamwidth_deg)
{
    return static_cast<int>(std::ceil(kUlaBeamwidthConst / beamwidth_deg - 1e-9));
}
} // namespace

double upa_directivity_broadside(int m, int n, double theta0_deg, bool *small_array_flag)
{
    if (m < 1 || n < 1)
        throw NumericError("upa_directivity_broadside: element counts must be >= 1");
    if (small_array_flag)
        *small_array_flag = m < 7 || n < 7;
    return kPi * std::cos(theta0_deg * kDeg) * static_cast<double>(n) * static_cast<double>(m);
}

double ula_beamwidth_deg(int elements)
{
    if (elements < 1)
        throw NumericError("ula_beamwidth_deg: elements must be >= 1");
    return kUlaBeamwidthConst / elements;
}

double ula_directivity(int elements)
{
    if (elements < 1)
        throw NumericError("ula_directivity: elements must be >= 1");
    return static_cast<double>(elements);
}

Beamwidths upa_beamwidths(double delta_phi_x_deg, double delta_phi_y_deg, double theta0_deg,
                          double phi0_deg)
{
    const double ct = std::cos(theta0_deg * kDeg);
    const double cp = std::cos(phi0_deg * kDeg), sp = std::sin(phi0_deg * kDeg);
    const double ix2 = 1.0 / (delta_phi_x_deg * delta_phi_x_deg);
    const double iy2 = 1.0 / (delta_phi_y_deg * delta_phi_y_deg);
    Beamwidths bw;
    bw.delta_theta_deg = std::sqrt(1.0 / (ct * ct * (ix2 * cp * cp + iy2 * sp * sp)));
    bw.delta_phi_deg = std::sqrt(1.0 / (ix2 * sp * sp + iy2 * cp * cp));
    return bw;
}

double solve_delta_phi_x(double delta_theta_deg, double theta0_deg, double delta_phi_y_deg,
                         double delta_phi_deg)
{
    const double ct = std::cos(theta0_deg * kDeg);
    const double tc = delta_theta_deg * ct;
    const double y2 = delta_phi_y_deg * delta_phi_y_deg;
    const double radicand =
        delta_phi_deg * delta_phi_deg * (y2 - tc * tc) + tc * tc * y2;
    if (!(radicand > 0.0))
        throw NumericError("solve_delta_phi_x: non-positive radicand; the requested azimuth "
                           "beamwidth violates constraint 2 for this parameter set");
    return tc * delta_phi_y_deg * delta_phi_deg / std::sqrt(radicand);
}

DirectivityCoefficients directivity_coefficients(const UpaParameterSet &set)
{
    const double ct = std::cos(set.theta0_deg * kDeg);
    const double tc = set.delta_theta_deg * ct;
    const double y2 = set.delta_phi_y_deg * set.delta_phi_y_deg;
    const double diff = y2 - tc * tc;
    if (diff == 0.0)
        throw NumericError("directivity_coefficients: degenerate parameter set, "
                           "delta_phi_y == delta_theta * cos(theta0)");

    DirectivityCoefficients c;
    c.sign = diff > 0.0 ? 1 : -1;
    const double ad = std::fabs(diff);
    c.a_coeff = kUlaBeamwidthConst * kUlaBeamwidthConst * std::sqrt(ad) /
                (set.delta_theta_deg * y2);
    c.k_coeff = tc * tc * y2 / ad;
    if (set.prefactor_override)
        c.a_coeff = *set.prefactor_override;
    c.domain_max_deg = c.sign < 0 ? std::sqrt(c.k_coeff)
                                  : std::numeric_limits<double>::infinity();
    return c;
}

double directivity_at(const UpaParameterSet &set, double delta_phi_deg)
{
    const DirectivityCoefficients c = directivity_coefficients(set);
    if (!(delta_phi_deg > 0.0) || delta_phi_deg > c.domain_max_deg)
        throw NumericError("directivity_at: azimuth beamwidth outside the supported range "
                           "(0, sqrt(K)] of this parameter set");
    const double rad = c.k_coeff + c.sign * delta_phi_deg * delta_phi_deg;
    return c.a_coeff * kPi * std::sqrt(std::max(rad, 0.0)) / delta_phi_deg;
}

ConstraintReport check_constraints(const UpaParameterSet &set)
{
    const double ct = std::cos(set.theta0_deg * kDeg);
    const double tc = set.delta_theta_deg * ct;
    ConstraintReport rep;
    rep.c1_pass = set.delta_phi_y_deg <= kUlaBeamwidthConst / 7.0 + 1e-9;
    rep.c2_pass = set.delta_phi_y_deg * set.delta_phi_y_deg - tc * tc >= -1e-9;
    rep.c3_sum_deg = set.theta0_deg + set.delta_theta_deg / 2.0;
    rep.c3_pass = std::fabs(rep.c3_sum_deg - 90.0) <= 2.0;
    return rep;
}

UpaDesign elements_for_beamwidth(const UpaParameterSet &set, double delta_phi_deg,
                                 double phi0_deg)
{
    const double dpx = solve_delta_phi_x(set.delta_theta_deg, set.theta0_deg,
                                         set.delta_phi_y_deg, delta_phi_deg);
    UpaDesign d;
    d.m_elements = ceil_elements(dpx);
    d.n_elements = ceil_elements(set.delta_phi_y_deg);
    d.theta0_deg = set.theta0_deg;
    d.phi0_deg = phi0_deg;
    return d;
}

const std::vector<UpaParameterSet> &registry()
{
    static const std::vector<UpaParameterSet> sets = {
        {1, 14.5, 30.0, 75.0, std::nullopt},
        {2, 14.5, 40.0, 70.0, std::nullopt},
        {3, 10.15, 40.0, 70.0, std::nullopt},
        {4, 10.15, 30.0, 60.0, 45.9},
    };
    return sets;
}

UpaParameterSet registry_set(int id, bool exact_eq13)
{
    for (const UpaParameterSet &s : registry())
        if (s.id == id)
        {
            UpaParameterSet out = s;
            if (exact_eq13)
                out.prefactor_override.reset();
            return out;
        }
    throw ConfigError("unknown parameter set id " + std::to_string(id) + " (valid: 1..4)");
}

} // namespace beamplan::antenna
