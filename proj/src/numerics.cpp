// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "beamplan/numerics.hpp"
#include "beamplan/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace beamplan::numerics {

namespace {
constexpr long double kSqrtPi = 1.77245385090551602729816748334L;
} // namespace

double erf(double x)
{
    if (!std::isfinite(x))
        throw NumericError("erf: non-finite input");

    const double sign = x < 0.0 ? -1.0 : 1.0;
    const double ax = std::fabs(x);

    if (ax < 3.0)
    {
        // erf(x) = 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1))
        const long double z = ax, z2 = z * z;
        long double pow_term = z, sum = z;
        for (int n = 1; n < 240; ++n)
        {
            pow_term *= -z2 / n;
            const long double add = pow_term / (2 * n + 1);
            sum += add;
            if (std::fabs((double)add) < 1e-19 * std::fabs((double)sum) + 1e-300)
                break;
        }
        return sign * (double)(2.0L / kSqrtPi * sum);
    }

    if (ax > 7.0)
        return sign; // erfc < 1e-22, below double resolution of 1 - erfc

    // erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    // evaluated with the modified Lentz algorithm.
    const long double b = ax;
    long double C = b, D = 0.0L, f = b;
    for (int n = 1; n < 400; ++n)
    {
        const long double a = 0.5L * n;
        D = b + a * D;
        if (D == 0.0L)
            D = 1e-300L;
        D = 1.0L / D;
        C = b + a / C;
        if (C == 0.0L)
            C = 1e-300L;
        const long double delta = C * D;
        f *= delta;
        if (std::fabs((double)(delta - 1.0L)) < 1e-18)
            break;
    }
    const long double erfc = std::exp(-(long double)ax * ax) / kSqrtPi / f;
    return sign * (double)(1.0L - erfc);
}

double find_root(const RealFunction &f, Bracket bracket, double tol)
{
    if (!(tol > 0.0))
        throw NumericError("find_root: tolerance must be positive");
    if (!(bracket.lo < bracket.hi))
        throw BracketError("find_root: bracket requires lo < hi");

    double a = bracket.lo, b = bracket.hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw BracketError("find_root: no sign change over the bracket");

    // Brent-style: bisection with inverse quadratic / secant acceleration.
    double c = a, fc = fa;
    double d = b - a, e = d;
    const int max_iter = 300;
    for (int iter = 0; iter < max_iter; ++iter)
    {
        if ((fb > 0.0) == (fc > 0.0))
        {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb))
        {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double eps = std::numeric_limits<double>::epsilon();
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= tol)
            return b;

        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb))
        {
            double p, q;
            const double s = fb / fa;
            if (a == c)
            {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            }
            else
            {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            p = std::fabs(p);
            const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
            const double min2 = std::fabs(e * q);
            if (2.0 * p < std::min(min1, min2))
            {
                e = d;
                d = p / q;
            }
            else
            {
                d = xm;
                e = d;
            }
        }
        else
        {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::fabs(d) > tol1)
            b += d;
        else
            b += xm > 0.0 ? tol1 : -tol1;
        fb = f(b);
    }
    throw ConvergenceError("find_root: iteration budget exceeded");
}

namespace {

double simpson(double fa, double fm, double fb, double h)
{
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const RealFunction &f, double a, double b, double fa, double fm, double fb,
             double whole, double eps, int depth, long &budget)
{
    if (--budget < 0)
        throw ConvergenceError("integrate: subdivision budget exhausted");
    if (depth > 60)
        throw ConvergenceError("integrate: recursion limit reached");

    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1, budget) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1, budget);
}

} // namespace

double integrate(const RealFunction &f, double a, double b, double tol)
{
    if (!(a <= b))
        throw NumericError("integrate: requires a <= b");
    if (a == b)
        return 0.0;

    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    const double eps = tol * std::max(1.0, std::fabs(whole));
    long budget = 1000000;
    return adapt(f, a, b, fa, fm, fb, whole, eps, 0, budget);
}

namespace {

// Solve the 3x3 system A x = rhs in place; partial pivoting.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> rhs,
            std::array<double, 3> &out)
{
    for (int col = 0; col < 3; ++col)
    {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col]))
                piv = r;
        if (std::fabs(a[piv][col]) < 1e-300)
            return false;
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = col + 1; r < 3; ++r)
        {
            const double k = a[r][col] / a[col][col];
            for (int cc = col; cc < 3; ++cc)
                a[r][cc] -= k * a[col][cc];
            rhs[r] -= k * rhs[col];
        }
    }
    for (int r = 2; r >= 0; --r)
    {
        double s = rhs[r];
        for (int cc = r + 1; cc < 3; ++cc)
            s -= a[r][cc] * out[cc];
        out[r] = s / a[r][r];
    }
    return true;
}

double sse_of(const std::vector<Sample> &s, double u, double x, double v)
{
    double acc = 0.0;
    for (const auto &p : s)
    {
        const double t = (p.angle_deg - x) / v;
        const double r = u * std::exp(-t * t) - p.density;
        acc += r * r;
    }
    return acc;
}

} // namespace

GaussianFit fit_gaussian(const std::vector<Sample> &samples)
{
    if (samples.size() < 5)
        throw DegenerateInputError("fit_gaussian: need at least 5 samples");

    double wsum = 0.0, peak = 0.0;
    for (const auto &s : samples)
    {
        if (s.density < 0.0)
            throw DegenerateInputError("fit_gaussian: negative density");
        wsum += s.density;
        peak = std::max(peak, s.density);
    }
    if (wsum <= 0.0)
        throw DegenerateInputError("fit_gaussian: all densities are zero");

    // Moment-based start: center from the weighted mean, width from the
    // weighted standard deviation (v = sqrt(2) * sd for this parameterization).
    double mean = 0.0;
    for (const auto &s : samples)
        mean += s.angle_deg * s.density;
    mean /= wsum;
    double var = 0.0;
    for (const auto &s : samples)
        var += (s.angle_deg - mean) * (s.angle_deg - mean) * s.density;
    var /= wsum;
    if (var <= 0.0)
        throw DegenerateInputError("fit_gaussian: zero angular spread (single-bin spike)");

    double u = peak, x = mean, v = std::sqrt(2.0 * var);
    double lambda = 1e-3;
    double sse = sse_of(samples, u, x, v);

    bool exhausted = true;
    for (int iter = 0; iter < 200; ++iter)
    {
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtr{};
        for (const auto &s : samples)
        {
            const double t = (s.angle_deg - x) / v;
            const double e = std::exp(-t * t);
            const double model = u * e;
            const double r = model - s.density;
            const std::array<double, 3> j = {
                e,                          // d/du
                model * 2.0 * t / v,        // d/dx
                model * 2.0 * t * t / v,    // d/dv
            };
            for (int a2 = 0; a2 < 3; ++a2)
            {
                jtr[a2] += j[a2] * r;
                for (int b2 = 0; b2 < 3; ++b2)
                    jtj[a2][b2] += j[a2] * j[b2];
            }
        }

        bool stepped = false;
        std::array<double, 3> delta{};
        for (int attempt = 0; attempt < 30; ++attempt)
        {
            auto damped = jtj;
            for (int d2 = 0; d2 < 3; ++d2)
                damped[d2][d2] += lambda * (1.0 + jtj[d2][d2]);
            std::array<double, 3> rhs = {-jtr[0], -jtr[1], -jtr[2]};
            if (!solve3(damped, rhs, delta))
            {
                lambda *= 10.0;
                continue;
            }
            const double nu = u + delta[0], nx = x + delta[1], nv = v + delta[2];
            if (nu <= 0.0 || nv <= 0.0)
            {
                lambda *= 10.0;
                continue;
            }
            const double nsse = sse_of(samples, nu, nx, nv);
            if (nsse <= sse)
            {
                u = nu;
                x = nx;
                v = nv;
                sse = nsse;
                lambda = std::max(lambda / 3.0, 1e-14);
                stepped = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped)
        {
            exhausted = false; // damping saturated at the current minimum
            break;
        }

        const double rel = std::max({std::fabs(delta[0]) / (std::fabs(u) + 1e-30),
                                     std::fabs(delta[1]) / (std::fabs(x) + 1e-30),
                                     std::fabs(delta[2]) / (std::fabs(v) + 1e-30)});
        if (rel < 1e-10)
        {
            exhausted = false;
            break;
        }
    }

    if (exhausted || !std::isfinite(u) || !std::isfinite(x) || !std::isfinite(v) || u <= 0.0 ||
        v <= 0.0)
    {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "fit_gaussian: no convergence (best iterate u=%g x=%g v=%g)", u, x, v);
        throw ConvergenceError(buf);
    }
    return {u, x, v};
}

} // namespace beamplan::numerics
