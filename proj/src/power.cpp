// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "beamplan/power.hpp"
#include "beamplan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace beamplan::power {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kSqrt2 = 1.41421356237309504880;
} // namespace

double to_dbm(double mw)
{
    return 10.0 * std::log10(mw);
}

double beam_weight(const BeamPattern &pattern, double phi_deg)
{
    const double off = std::fabs(phi_deg - pattern.steer_deg);
    if (off > pattern.width_deg / 2.0)
        return 0.0;
    return pattern.kind == BeamKind::Rectangular ? 1.0 : 1.0 - off / pattern.width_deg;
}

double incident_to_total_power(double p_inc_mw_per_m2, double wavelength_m)
{
    return p_inc_mw_per_m2 * wavelength_m * wavelength_m / (4.0 * kPi);
}

double extracted_power_gaussian(const GaussianPas &pas, double delta_phi_deg)
{
    return pas.total_power_mw * numerics::erf(delta_phi_deg / (2.0 * kSqrt2 * pas.sigma_deg));
}

double extracted_power_fit(const GaussianFit &fit, double delta_phi_deg)
{
    return fit.u * fit.v_deg * kSqrtPi * numerics::erf(delta_phi_deg / (2.0 * fit.v_deg));
}

double extracted_power_numeric(const BeamPattern &pattern, const numerics::RealFunction &density,
                               double tol)
{
    const double lo = pattern.steer_deg - pattern.width_deg / 2.0;
    const double hi = pattern.steer_deg + pattern.width_deg / 2.0;
    return numerics::integrate(
        [&](double phi) { return beam_weight(pattern, phi) * density(phi); }, lo, hi, tol);
}

double extracted_power(const Channel &ch, double delta_phi_deg)
{
    return std::visit(
        [&](const auto &c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, GaussianPas>)
                return extracted_power_gaussian(c, delta_phi_deg);
            else
                return extracted_power_fit(c, delta_phi_deg);
        },
        ch);
}

double received_power(const antenna::UpaParameterSet &set, const Channel &ch,
                      double delta_phi_deg)
{
    return antenna::directivity_at(set, delta_phi_deg) * extracted_power(ch, delta_phi_deg);
}

double max_received_power(const antenna::UpaParameterSet &set, const Channel &ch)
{
    const auto c = antenna::directivity_coefficients(set);
    return std::visit(
        [&](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianPas>)
                return c.a_coeff * std::sqrt(kPi * c.k_coeff / 2.0) * m.total_power_mw /
                       m.sigma_deg;
            else
                return c.a_coeff * kPi * std::sqrt(c.k_coeff) * m.u;
        },
        ch);
}

namespace {

// Left-hand side of the percentile equation:
// dphi / (erf(arg) * sqrt(K + sign * dphi^2)), monotone over the domain.
struct PercentileEquation {
    antenna::DirectivityCoefficients coeffs;
    double erf_scale; // 2 sqrt(2) sigma for Gaussian, 2 v for fitted
    double rhs_at_eta1;

    double lhs(double dphi) const
    {
        const double rad = coeffs.k_coeff + coeffs.sign * dphi * dphi;
        return dphi / (numerics::erf(dphi / erf_scale) * std::sqrt(std::max(rad, 0.0)));
    }
};

PercentileEquation make_equation(const antenna::UpaParameterSet &set, const Channel &ch)
{
    PercentileEquation eq;
    eq.coeffs = antenna::directivity_coefficients(set);
    std::visit(
        [&](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianPas>)
            {
                eq.erf_scale = 2.0 * kSqrt2 * m.sigma_deg;
                eq.rhs_at_eta1 = m.sigma_deg * std::sqrt(2.0 * kPi / eq.coeffs.k_coeff);
            }
            else
            {
                eq.erf_scale = 2.0 * m.v_deg;
                eq.rhs_at_eta1 = m.v_deg * std::sqrt(kPi / eq.coeffs.k_coeff);
            }
        },
        ch);
    return eq;
}

double solve_percentile(const PercentileEquation &eq, double eta, double bracket_hi)
{
    if (!(eta > 0.0) || !(eta < 1.0))
        throw NumericError("percentile: eta must lie in (0, 1)");
    const double rhs = eq.rhs_at_eta1 / eta;
    const double lo = 1e-6;
    const double hi = bracket_hi;
    const auto f = [&](double dphi) { return eq.lhs(dphi) - rhs; };
    if (f(lo) > 0.0 || f(hi) < 0.0)
    {
        // LHS never reaches the RHS: report the reachable eta floor.
        double lhs_max = std::max(eq.lhs(lo), eq.lhs(hi));
        for (int i = 1; i < 64; ++i)
            lhs_max = std::max(lhs_max, eq.lhs(lo + (hi - lo) * i / 64.0));
        const double floor_eta = eq.rhs_at_eta1 / lhs_max;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "percentile: eta=%.6g is unreachable for this set; floor is eta=%.6g",
                      eta, floor_eta);
        throw NoSolutionError(buf, floor_eta);
    }
    return numerics::find_root(f, {lo, hi}, 1e-12);
}

double upa_bracket_hi(const antenna::DirectivityCoefficients &c)
{
    return c.sign < 0 ? c.domain_max_deg - 1e-6 : 180.0;
}

} // namespace

PercentileSolution percentile_beamwidth(const antenna::UpaParameterSet &set, const Channel &ch,
                                        double eta, double phi0_deg)
{
    const PercentileEquation eq = make_equation(set, ch);
    const double dphi = solve_percentile(eq, eta, upa_bracket_hi(eq.coeffs));
    PercentileSolution sol;
    sol.eta = eta;
    sol.beamwidth_deg = dphi;
    sol.received_power_mw = received_power(set, ch, dphi);
    sol.design = antenna::elements_for_beamwidth(set, dphi, phi0_deg);
    return sol;
}

double ula_received_power(const Channel &ch, double delta_phi_deg)
{
    return antenna::kUlaBeamwidthConst / delta_phi_deg * extracted_power(ch, delta_phi_deg);
}

double ula_max_power(const Channel &ch)
{
    return std::visit(
        [&](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianPas>)
                return antenna::kUlaBeamwidthConst * m.total_power_mw /
                       (std::sqrt(2.0 * kPi) * m.sigma_deg);
            else
                return antenna::kUlaBeamwidthConst * m.u;
        },
        ch);
}

UlaPercentileSolution ula_percentile_beamwidth(const Channel &ch, double eta)
{
    if (!(eta > 0.0) || !(eta < 1.0))
        throw NumericError("percentile: eta must lie in (0, 1)");
    // dphi / erf(dphi / scale) = limit / eta, monotone increasing from `limit`.
    double scale = 0.0, limit = 0.0;
    std::visit(
        [&](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianPas>)
            {
                scale = 2.0 * kSqrt2 * m.sigma_deg;
                limit = std::sqrt(2.0 * kPi) * m.sigma_deg;
            }
            else
            {
                scale = 2.0 * m.v_deg;
                limit = m.v_deg * kSqrtPi;
            }
        },
        ch);
    const double rhs = limit / eta;
    const auto f = [&](double dphi) { return dphi / numerics::erf(dphi / scale) - rhs; };
    double hi = scale;
    while (f(hi) < 0.0 && hi < 1e9)
        hi *= 2.0;
    const double dphi = numerics::find_root(f, {1e-9, hi}, 1e-12);

    UlaPercentileSolution sol;
    sol.eta = eta;
    sol.beamwidth_deg = dphi;
    sol.received_power_mw = ula_received_power(ch, dphi);
    sol.elements =
        static_cast<int>(std::ceil(antenna::kUlaBeamwidthConst / dphi - 1e-9));
    return sol;
}

std::vector<ComparisonRow> compare_ula_upa(const antenna::UpaParameterSet &set, const Channel &ch,
                                           const std::vector<double> &eta_list)
{
    const double ula_max = ula_max_power(ch);
    std::vector<ComparisonRow> rows;
    for (double eta : eta_list)
    {
        const PercentileSolution upa = percentile_beamwidth(set, ch, eta);
        rows.push_back({"UPA", eta, upa.beamwidth_deg, upa.design.total(),
                        upa.received_power_mw, to_dbm(upa.received_power_mw),
                        to_dbm(upa.received_power_mw / ula_max)});
        const UlaPercentileSolution ula = ula_percentile_beamwidth(ch, eta);
        rows.push_back({"ULA", eta, ula.beamwidth_deg, ula.elements, ula.received_power_mw,
                        to_dbm(ula.received_power_mw),
                        to_dbm(ula.received_power_mw / ula_max)});
    }
    return rows;
}

} // namespace beamplan::power
