// SPDX-License-Identifier: Apache-2.0
//
// Adaptive Gauss-Kronrod 15(7) quadrature on finite intervals. Shared by
// the numeric Fourier transform, the total cross section and the
// mean-potential estimate.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "cohscat/error.hpp"

namespace cohscat {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_depth = 48;
};

namespace detail {

// Kronrod abscissae/weights for the 15-point rule on [-1, 1] (QUADPACK
// dqk15). Even indices are Kronrod-only nodes, odd indices coincide with
// the embedded 7-point Gauss rule.
inline constexpr double gk15_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double gk15_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double g7_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEstimate {
    double value;
    double error;
};

template <class F>
PanelEstimate gk15(F& f, double a, double b)
{
    double const mid = 0.5 * (a + b);
    double const half = 0.5 * (b - a);

    double const fc = f(mid);
    double kronrod = gk15_weights[7] * fc;
    double gauss = g7_weights[3] * fc;

    for (int i = 0; i < 7; ++i)
    {
        double const off = half * gk15_nodes[i];
        double const sum = f(mid - off) + f(mid + off);
        kronrod += gk15_weights[i] * sum;
        if (i % 2 == 1)
        {
            gauss += g7_weights[i / 2] * sum;
        }
    }
    kronrod *= half;
    gauss *= half;

    // QUADPACK-style error estimate, conservative for smooth integrands.
    double err = std::abs(kronrod - gauss);
    err = std::pow(200.0 * err, 1.5);
    if (err > std::abs(kronrod) || !std::isfinite(err))
    {
        err = std::abs(kronrod - gauss);
    }
    return {kronrod, err};
}

template <class F>
double adapt(F& f, double a, double b, double tol, int depth,
             QuadratureOptions const& opt)
{
    PanelEstimate const est = gk15(f, a, b);
    if (est.error <= tol || !(b - a > 0))
    {
        return est.value;
    }
    if (depth >= opt.max_depth)
    {
        fail("quadrature.no_convergence",
             "adaptive quadrature did not converge (depth limit reached)");
    }
    double const mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, depth + 1, opt)
           + adapt(f, mid, b, 0.5 * tol, depth + 1, opt);
}

}  // namespace detail

// Integrate f over [a, b]. The tolerance is abs_tol plus rel_tol relative
// to a first whole-interval estimate; throws "quadrature.no_convergence"
// when bisection bottoms out without meeting it.
template <class F>
double integrate(F&& f, double a, double b, QuadratureOptions opt = {})
{
    if (!(b > a))
    {
        if (a == b)
        {
            return 0.0;
        }
        fail("quadrature.bad_interval", "integration bounds must satisfy a <= b");
    }
    auto& fn = f;
    detail::PanelEstimate const whole = detail::gk15(fn, a, b);
    double tol = opt.abs_tol + opt.rel_tol * std::abs(whole.value);
    if (!(tol > 0))
    {
        tol = opt.rel_tol;  // fall back for exactly-zero estimates
    }
    if (whole.error <= tol)
    {
        return whole.value;
    }
    double const mid = 0.5 * (a + b);
    return detail::adapt(fn, a, mid, 0.5 * tol, 1, opt)
           + detail::adapt(fn, mid, b, 0.5 * tol, 1, opt);
}

}  // namespace cohscat
