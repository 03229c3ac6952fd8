// SPDX-License-Identifier: Apache-2.0
//
// Two-body kinematics: lab momenta of the incident particle and the target
// center of mass, and their center-of-mass/relative decomposition.
// Internal units, hbar = 1.
#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Core>

#include "cohscat/error.hpp"

namespace cohscat {

using Vec3 = Eigen::Vector3d;

inline constexpr double pi = 3.14159265358979323846;

struct Kinematics {
    double m_d = 0;  // incident-particle mass
    double M = 0;    // total target mass
    double m_r = 0;  // reduced mass, (1/M + 1/m_d)^-1
    double m_s = 0;  // total mass, M + m_d
    Vec3 p_d = Vec3::Zero();  // incident-particle momentum
    Vec3 P = Vec3::Zero();    // target center-of-mass momentum
    Vec3 p_r = Vec3::Zero();  // relative momentum
    Vec3 p_s = Vec3::Zero();  // total momentum
    double E_r = 0;           // relative kinetic energy, |p_r|^2 / (2 m_r)
};

inline Kinematics make_kinematics(double m_d, double M, Vec3 const& p_d,
                                  Vec3 const& P)
{
    if (!(m_d > 0) || !(M > 0))
    {
        fail("kinematics.nonpositive_mass", "masses must be strictly positive");
    }
    Kinematics k;
    k.m_d = m_d;
    k.M = M;
    k.m_r = 1.0 / (1.0 / M + 1.0 / m_d);
    k.m_s = M + m_d;
    k.p_d = p_d;
    k.P = P;
    k.p_r = (p_d * M - P * m_d) / (m_d + M);
    k.p_s = P + p_d;
    k.E_r = k.p_r.squaredNorm() / (2.0 * k.m_r);
    return k;
}

// Synthetic two-body state with prescribed reduced mass and relative energy
// (equal masses, zero total momentum). Convenient when only (m_r, E_r)
// matter, as in the Born cross-section formulas.
inline Kinematics kinematics_from_relative(double m_r, double E_r)
{
    if (!(m_r > 0))
    {
        fail("kinematics.nonpositive_mass", "reduced mass must be positive");
    }
    if (E_r < 0)
    {
        fail("kinematics.negative_energy", "relative energy must be >= 0");
    }
    double p = std::sqrt(2.0 * m_r * E_r);
    Vec3 pd{p, 0.0, 0.0};
    return make_kinematics(2.0 * m_r, 2.0 * m_r, pd, -pd);
}

// lambda = 2 pi hbar / p.
inline double de_broglie_wavelength(double p)
{
    if (!(p > 0))
    {
        fail("kinematics.zero_momentum",
             "de Broglie wavelength diverges for p <= 0");
    }
    return 2.0 * pi / p;
}

// Elastic kinematics bound the momentum transfer by 2 |p_r|.
inline double max_momentum_transfer(Kinematics const& k)
{
    return 2.0 * k.p_r.norm();
}

// Final lab momenta for a given final relative momentum, with the total
// momentum conserved (p_s' = p_s). Inverse of the decomposition:
// p_d = p_r + (m_d / m_s) p_s.
inline std::pair<Vec3, Vec3> final_lab_momenta(Kinematics const& k,
                                               Vec3 const& p_r_final)
{
    Vec3 p_d_final = p_r_final + (k.m_d / k.m_s) * k.p_s;
    Vec3 P_final = k.p_s - p_d_final;
    return {p_d_final, P_final};
}

}  // namespace cohscat
