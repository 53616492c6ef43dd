// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace beamplan::numerics {

using RealFunction = std::function<double(double)>;

struct Bracket {
    double lo;
    double hi;
};

// Fitted Gaussian density u * exp(-(phi - x)^2 / v^2).
// u is the peak density (mW/deg), x the center and v the width, both in degrees.
struct GaussianFit {
    double u;
    double x_deg;
    double v_deg;
};

struct Sample {
    double angle_deg;
    double density; // per degree
};

/// Error function, |error| <= 1e-12 over the real line.
/// Maclaurin series for |x| < 3, Lentz continued fraction for the tail.
double erf(double x);

/// Bracketed root finding (bisection/inverse-interpolation hybrid).
/// Requires a sign change over the bracket. Stops when |f(r)| <= tol or the
/// bracket width has shrunk below tol.
double find_root(const RealFunction &f, Bracket bracket, double tol);

/// Adaptive Simpson quadrature with |error| <= tol * max(1, |result|).
/// Interval budget is capped at 1e6 subdivisions.
double integrate(const RealFunction &f, double a, double b, double tol);

/// Damped least-squares fit of u * exp(-(phi - x)^2 / v^2) to the samples.
/// Initial guess comes from density-weighted moments; iterates until the
/// relative parameter change drops below 1e-10 (200 iterations max).
GaussianFit fit_gaussian(const std::vector<Sample> &samples);

} // namespace beamplan::numerics
