// SPDX-License-Identifier: Apache-2.0
//
// Exact stationary scattering of a plane wave on an array of 1D Dirac-delta
// potentials. Two independent routes are provided:
//
//  * transfer_matrix_solve: per-site 2x2 complex matrices encoding
//    continuity and the derivative-jump condition, composed left to right;
//  * boundary_condition_solve: the full linear system of matching
//    conditions, solved directly (the oracle for the transfer route).
//
// For two equal deltas at spacing a the reflectivity has the closed form
//
//   R = 4 [b cos(ka) + sin(ka)]^2
//       / (2 + 2 b^2 + b^4 + 2 (b^2 - 1) cos(2ka) + 4 b sin(2ka)),
//
// with b = k hbar^2 / (m alpha). Internal units, hbar = 1.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cohscat/error.hpp"
#include "cohscat/kinematics.hpp"

namespace cohscat {

struct DeltaSite {
    double position = 0;  // x_j
    double strength = 0;  // alpha_j, energy * length; negative = attractive
};

// Ordered array of delta potentials plus the mass of the scattered particle.
struct DeltaArray {
    std::vector<DeltaSite> sites;
    double mass = 1.0;
};

inline DeltaArray make_delta_array(std::vector<DeltaSite> sites, double mass)
{
    if (!(mass > 0))
    {
        fail("delta1d.nonpositive_mass", "particle mass must be > 0");
    }
    if (sites.empty())
    {
        fail("delta1d.empty_array", "need at least one delta site");
    }
    for (std::size_t j = 1; j < sites.size(); ++j)
    {
        if (!(sites[j].position > sites[j - 1].position))
        {
            fail("delta1d.unsorted_sites",
                 "site positions must be strictly increasing");
        }
    }
    for (auto const& s : sites)
    {
        if (!std::isfinite(s.strength) || !std::isfinite(s.position))
        {
            fail("delta1d.nonfinite_site", "site parameters must be finite");
        }
    }
    return DeltaArray{std::move(sites), mass};
}

// Equal-strength sites at uniform spacing starting from the origin.
inline DeltaArray uniform_delta_array(std::size_t n, double spacing,
                                      double strength, double mass)
{
    std::vector<DeltaSite> sites;
    sites.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
    {
        sites.push_back({static_cast<double>(j) * spacing, strength});
    }
    return make_delta_array(std::move(sites), mass);
}

struct Amplitudes1D {
    std::complex<double> r;  // reflection amplitude
    std::complex<double> t;  // transmission amplitude
    double R = 0;            // |r|^2
    double T = 0;            // |t|^2
    double k = 0;            // wave number
};

// b = k hbar^2 / (m alpha), the dimensionless coupling of the closed forms.
inline double beta_parameter(double k, double mass, double strength)
{
    if (strength == 0)
    {
        fail("delta1d.zero_strength", "beta undefined for zero coupling");
    }
    return k / (mass * strength);
}

// Closed form for two equal deltas. beta > 0 is the repulsive branch the
// formula was derived for.
inline double reflectivity_two_delta_closed_form(double beta, double ka)
{
    if (!(beta > 0))
    {
        fail("delta1d.invalid_beta", "closed form requires beta > 0");
    }
    if (!(ka >= 0))
    {
        fail("delta1d.invalid_ka", "closed form requires ka >= 0");
    }
    double const c = std::cos(ka);
    double const s = std::sin(ka);
    double const num = 4.0 * (beta * c + s) * (beta * c + s);
    double const den = 2.0 + 2.0 * beta * beta + beta * beta * beta * beta
                       + 2.0 * (beta * beta - 1.0) * std::cos(2.0 * ka)
                       + 4.0 * beta * std::sin(2.0 * ka);
    return num / den;
}

// Single delta at the origin: R = 1 / (1 + beta^2).
inline double reflectivity_single_delta(double beta)
{
    if (!(beta > 0))
    {
        fail("delta1d.invalid_beta", "closed form requires beta > 0");
    }
    return 1.0 / (1.0 + beta * beta);
}

namespace detail {

// Per-site transfer matrix in the plane-wave basis (c e^{ikx} + d e^{-ikx}).
// With w = -i m alpha / k:
//   [c_R]   [1 + w          w e^{-2ikx}] [c_L]
//   [d_R] = [-w e^{2ikx}    1 - w      ] [d_L]
// Unimodular, and of the form [[a, b], [conj(b), conj(a)]] for real alpha,
// which makes R + T = 1 exact up to roundoff.
inline Eigen::Matrix2cd delta_transfer(double k, double mass, double strength,
                                       double position)
{
    std::complex<double> const w(0.0, -mass * strength / k);
    std::complex<double> const phase
        = std::exp(std::complex<double>(0.0, 2.0 * k * position));
    Eigen::Matrix2cd m;
    m(0, 0) = 1.0 + w;
    m(0, 1) = w / phase;
    m(1, 0) = -w * phase;
    m(1, 1) = 1.0 - w;
    return m;
}

inline Amplitudes1D amplitudes_from(std::complex<double> r,
                                    std::complex<double> t, double k)
{
    Amplitudes1D a;
    a.r = r;
    a.t = t;
    a.R = std::norm(r);
    a.T = std::norm(t);
    a.k = k;
    return a;
}

}  // namespace detail

// Compose per-site transfer matrices; incidence from the left with unit
// amplitude and no incoming wave from the right.
inline Amplitudes1D transfer_matrix_solve(DeltaArray const& arr, double k)
{
    if (!(k > 0))
    {
        fail("delta1d.nonpositive_wavenumber", "wave number must be > 0");
    }
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    for (auto const& site : arr.sites)
    {
        m = detail::delta_transfer(k, arr.mass, site.strength, site.position)
            * m;
    }
    // c_right = M c_left with c_left = (1, r), c_right = (t, 0).
    std::complex<double> const r = -m(1, 0) / m(1, 1);
    std::complex<double> const t = m(0, 0) + m(0, 1) * r;
    return detail::amplitudes_from(r, t, k);
}

// Direct solve of the matching conditions: continuity at every site and the
// derivative jump psi'_R - psi'_L = 2 m alpha psi. Unknowns are the plane
// wave coefficients of every region with c_first = 1 and d_last = 0 fixed.
// Serves as the independent oracle for transfer_matrix_solve.
inline Amplitudes1D boundary_condition_solve(DeltaArray const& arr, double k)
{
    if (!(k > 0))
    {
        fail("delta1d.nonpositive_wavenumber", "wave number must be > 0");
    }
    using C = std::complex<double>;
    std::size_t const n = arr.sites.size();

    // Region j in [0, n]; unknown order: d_0, c_1, d_1, ..., c_{n-1},
    // d_{n-1}, c_n  (2n unknowns). Known: c_0 = 1, d_n = 0.
    auto c_index = [&](std::size_t region) -> long {
        return static_cast<long>(2 * region - 1);  // valid for region >= 1
    };
    auto d_index = [&](std::size_t region) -> long {
        return static_cast<long>(2 * region);  // valid for region <= n-1
    };

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(2 * n);

    for (std::size_t j = 0; j < n; ++j)
    {
        double const x = arr.sites[j].position;
        double const gamma = 2.0 * arr.mass * arr.sites[j].strength;  // jump
        C const ep = std::exp(C(0.0, k * x));
        C const em = 1.0 / ep;
        C const ik(0.0, k);

        long const row_cont = static_cast<long>(2 * j);
        long const row_jump = static_cast<long>(2 * j + 1);

        // Left-region coefficients (region j): psi_j(x) and psi_j'(x).
        // Continuity: psi_j(x) - psi_{j+1}(x) = 0.
        // Jump: psi_{j+1}'(x) - psi_j'(x) - gamma psi_j(x) = 0.
        auto add_left = [&](long col_c, long col_d, bool known_c) {
            if (known_c)
            {
                // c_0 = 1 contributes to the right-hand side.
                b(row_cont) -= ep;
                b(row_jump) -= (-ik - gamma) * ep;
            }
            else
            {
                A(row_cont, col_c) += ep;
                A(row_jump, col_c) += (-ik - gamma) * ep;
            }
            A(row_cont, col_d) += em;
            A(row_jump, col_d) += (ik - gamma) * em;
        };
        auto add_right = [&](long col_c, long col_d, bool has_d) {
            A(row_cont, col_c) -= ep;
            A(row_jump, col_c) += ik * ep;
            if (has_d)
            {
                A(row_cont, col_d) -= em;
                A(row_jump, col_d) += -ik * em;
            }
        };

        if (j == 0)
        {
            add_left(-1, d_index(0), true);
        }
        else
        {
            add_left(c_index(j), d_index(j), false);
        }
        if (j + 1 == n)
        {
            add_right(c_index(n), -1, false);
        }
        else
        {
            add_right(c_index(j + 1), d_index(j + 1), true);
        }
    }

    // Equilibrate rows: jump rows carry entries of size ~2 m alpha against
    // the k-sized continuity rows, which needlessly inflates the condition
    // number for strong couplings at long wavelengths.
    for (long i = 0; i < A.rows(); ++i)
    {
        double const scale = A.row(i).cwiseAbs().maxCoeff();
        if (scale > 0)
        {
            A.row(i) /= scale;
            b(i) /= scale;
        }
    }

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
    if (!lu.isInvertible())
    {
        fail("delta1d.singular_system",
             "matching conditions are singular for this array");
    }
    Eigen::VectorXcd sol = lu.solve(b);
    // One step of iterative refinement.
    sol += lu.solve(b - A * sol);

    C const r = sol(d_index(0));
    C const t = sol(c_index(n));
    return detail::amplitudes_from(r, t, k);
}

// R(array) / R(single site). For equal strengths in the long-wavelength,
// weak-coupling regime this approaches N^2: the sites add coherently like a
// single delta of N-fold strength.
inline double coherent_gain(DeltaArray const& arr, double k)
{
    if (arr.sites.empty())
    {
        fail("delta1d.empty_array", "need at least one delta site");
    }
    double const strength = arr.sites.front().strength;
    for (auto const& s : arr.sites)
    {
        if (s.strength != strength)
        {
            fail("delta1d.unequal_strengths",
                 "coherent gain is defined for equal-strength arrays");
        }
    }
    DeltaArray single{{DeltaSite{0.0, strength}}, arr.mass};
    double const r_single = transfer_matrix_solve(single, k).R;
    if (r_single == 0)
    {
        fail("delta1d.zero_reference", "single-site reflectivity is zero");
    }
    return transfer_matrix_solve(arr, k).R / r_single;
}

}  // namespace cohscat
