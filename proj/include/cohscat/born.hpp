// SPDX-License-Identifier: Apache-2.0
//
// First-order Born cross sections for scattering on a composite target.
// In the coherent limit the differential cross section is
//
//   dsigma/dcos(theta) = G^2 m_r^2 / (2 pi hbar^4)
//                        * |Vt(sqrt(8 m_r E_r) sin(theta/2))|^2
//
// with G the summed constituent coupling; the azimuthal 2 pi is already
// folded in. For structured targets G^2 is replaced by the elastic
// form-factor kernel |sum_i g_i F_i(q)|^2, where F_i is the Fourier
// transform of the i-th constituent's Gaussian position density.
// Internal units, hbar = 1.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cohscat/error.hpp"
#include "cohscat/kinematics.hpp"
#include "cohscat/potential.hpp"
#include "cohscat/quadrature.hpp"
#include "cohscat/rng.hpp"

namespace cohscat {

struct Constituent {
    double charge = 0;              // coupling g_i
    Vec3 mean_position = Vec3::Zero();  // relative position r_i
    double spread = 0;              // isotropic Gaussian std dev per axis
};

// Bound system of constituents with independent Gaussian position
// densities. Size L = max pairwise separation of the means plus twice the
// largest spread, which dominates the constituent separations entering the
// coherence condition.
class GaussianTarget {
  public:
    explicit GaussianTarget(std::vector<Constituent> constituents)
        : constituents_(std::move(constituents))
    {
        if (constituents_.empty())
        {
            fail("born.empty_target", "target needs at least one constituent");
        }
        double max_spread = 0;
        double max_sep = 0;
        total_charge_ = 0;
        for (auto const& c : constituents_)
        {
            if (c.spread < 0)
            {
                fail("born.negative_spread", "spreads must be >= 0");
            }
            max_spread = std::max(max_spread, c.spread);
            total_charge_ += c.charge;
        }
        for (std::size_t i = 0; i < constituents_.size(); ++i)
        {
            for (std::size_t j = i + 1; j < constituents_.size(); ++j)
            {
                max_sep = std::max(max_sep,
                                   (constituents_[i].mean_position
                                    - constituents_[j].mean_position)
                                       .norm());
            }
        }
        size_ = max_sep + 2.0 * max_spread;
    }

    std::vector<Constituent> const& constituents() const
    {
        return constituents_;
    }
    double total_charge() const { return total_charge_; }  // G
    double size() const { return size_; }                  // L

  private:
    std::vector<Constituent> constituents_;
    double total_charge_ = 0;
    double size_ = 0;
};

// Single-constituent density transform F_i(q) = exp(i q.r_i) exp(-q^2 s^2/2);
// F_i(0) = 1 exactly.
inline std::complex<double> constituent_form_factor(Constituent const& c,
                                                    Vec3 const& q)
{
    double const phase = q.dot(c.mean_position);
    double const damp = std::exp(-0.5 * q.squaredNorm() * c.spread * c.spread);
    return std::polar(damp, phase);
}

// Elastic double-sum kernel |sum_i g_i F_i(q)|^2; equals G^2 at q = 0 and
// is bounded by G^2 for non-negative charges.
inline double transition_kernel(GaussianTarget const& target, Vec3 const& q)
{
    std::complex<double> amplitude(0.0, 0.0);
    for (auto const& c : target.constituents())
    {
        amplitude += c.charge * constituent_form_factor(c, q);
    }
    return std::norm(amplitude);
}

// Monte Carlo average of the kernel over uniform placements of the
// constituent means in the cube [-h, h]^3, all with the given spread.
// With spread = 0 and |q| h >> 1 the cross terms dephase and the average
// settles on the incoherent floor sum_i g_i^2.
inline double position_averaged_kernel(std::vector<double> const& charges,
                                       double spread, double box_halfwidth,
                                       Vec3 const& q, std::size_t draws,
                                       std::uint64_t seed)
{
    if (charges.empty() || draws == 0)
    {
        fail("born.bad_average_request",
             "need at least one charge and one draw");
    }
    if (!(box_halfwidth > 0))
    {
        fail("born.bad_average_request", "box halfwidth must be > 0");
    }
    std::mt19937_64 gen(seed);
    auto coordinate = [&]() {
        return box_halfwidth * (2.0 * detail::uniform_double(gen) - 1.0);
    };
    double sum = 0;
    std::vector<Constituent> cs(charges.size());
    for (std::size_t i = 0; i < charges.size(); ++i)
    {
        cs[i].charge = charges[i];
        cs[i].spread = spread;
    }
    for (std::size_t d = 0; d < draws; ++d)
    {
        for (auto& c : cs)
        {
            c.mean_position = Vec3(coordinate(), coordinate(), coordinate());
        }
        sum += transition_kernel(GaussianTarget(cs), q);
    }
    return sum / static_cast<double>(draws);
}

// Momentum transfer magnitude at scattering angle theta for fixed |p_r|:
// |q| = sqrt(8 m_r E_r) sin(theta/2) = 2 |p_r| sin(theta/2).
inline double momentum_transfer(Kinematics const& kin, double theta)
{
    return std::sqrt(8.0 * kin.m_r * kin.E_r) * std::sin(0.5 * theta);
}

// theta = 0 is admitted here so that the forward Coulomb divergence
// surfaces as the potential's own error; regular transforms have a finite
// forward limit.
inline void check_angle(double theta)
{
    if (!(theta >= 0) || !(theta <= pi))
    {
        fail("born.invalid_angle", "scattering angle must lie in [0, pi]");
    }
}

// Coherent-limit differential cross section per unit cos(theta).
inline double coherent_differential_cross_section(Potential const& pot,
                                                  Kinematics const& kin,
                                                  double total_charge,
                                                  double theta)
{
    check_angle(theta);
    double const vt = pot.fourier(momentum_transfer(kin, theta));
    return total_charge * total_charge * kin.m_r * kin.m_r / (2.0 * pi) * vt
           * vt;
}

// Integral of the differential cross section over cos(theta) in
// [-1, cos(theta_min)]. theta_min must exclude the forward divergence for
// an unscreened Coulomb interaction.
inline double coherent_total_cross_section(Potential const& pot,
                                           Kinematics const& kin,
                                           double total_charge,
                                           double theta_min)
{
    if (!(theta_min >= 0) || !(theta_min < pi))
    {
        fail("born.invalid_angle", "theta_min must lie in [0, pi)");
    }
    if (pot.kind() == Potential::Kind::coulomb && !(theta_min > 0))
    {
        fail("potential.coulomb_forward_divergence",
             "Coulomb total cross section requires theta_min > 0");
    }
    auto integrand = [&](double u) {
        return coherent_differential_cross_section(pot, kin, total_charge,
                                                   std::acos(u));
    };
    QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    return integrate(integrand, -1.0, std::cos(theta_min), opt);
}

// Differential cross section with the coherent G^2 replaced by the target
// kernel at q(theta). The kernel direction is a convention (the transform
// of the potential depends only on |q|); default along z.
inline double transition_probability_density(Potential const& pot,
                                             Kinematics const& kin,
                                             GaussianTarget const& target,
                                             double theta,
                                             Vec3 const& q_direction
                                             = Vec3(0, 0, 1))
{
    check_angle(theta);
    double const q = momentum_transfer(kin, theta);
    double const kernel
        = transition_kernel(target, q * q_direction.normalized());
    double const vt = pot.fourier(q);
    return kernel * kin.m_r * kin.m_r / (2.0 * pi) * vt * vt;
}

// Sampled angular distribution with the metadata needed to reuse it.
struct CrossSectionTable {
    std::vector<double> theta;          // strictly increasing, in (0, pi]
    std::vector<double> dsigma_dcos;    // >= 0
    std::vector<double> kernel_ratio;   // kernel / G^2 (1 for point targets)
    double m_r = 0;
    double E_r = 0;
    double total_charge = 0;
    std::string potential_desc;
};

inline std::vector<double> linear_grid(double lo, double hi, std::size_t n)
{
    if (n < 2 || !(hi > lo))
    {
        fail("born.bad_grid", "grid needs n >= 2 and hi > lo");
    }
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        g[i] = lo + (hi - lo) * static_cast<double>(i)
                        / static_cast<double>(n - 1);
    }
    g.back() = hi;
    return g;
}

inline CrossSectionTable build_coherent_table(Potential const& pot,
                                              Kinematics const& kin,
                                              double total_charge,
                                              std::vector<double> thetas)
{
    CrossSectionTable t;
    t.theta = std::move(thetas);
    t.m_r = kin.m_r;
    t.E_r = kin.E_r;
    t.total_charge = total_charge;
    t.potential_desc = pot.describe();
    t.dsigma_dcos.reserve(t.theta.size());
    t.kernel_ratio.assign(t.theta.size(), 1.0);
    for (double th : t.theta)
    {
        t.dsigma_dcos.push_back(
            coherent_differential_cross_section(pot, kin, total_charge, th));
    }
    return t;
}

inline CrossSectionTable build_target_table(Potential const& pot,
                                            Kinematics const& kin,
                                            GaussianTarget const& target,
                                            std::vector<double> thetas,
                                            Vec3 const& q_direction
                                            = Vec3(0, 0, 1))
{
    CrossSectionTable t;
    t.theta = std::move(thetas);
    t.m_r = kin.m_r;
    t.E_r = kin.E_r;
    t.total_charge = target.total_charge();
    t.potential_desc = pot.describe();
    double const g2 = target.total_charge() * target.total_charge();
    t.dsigma_dcos.reserve(t.theta.size());
    t.kernel_ratio.reserve(t.theta.size());
    for (double th : t.theta)
    {
        double const value = transition_probability_density(pot, kin, target,
                                                            th, q_direction);
        t.dsigma_dcos.push_back(value);
        double const q = momentum_transfer(kin, th);
        double const kernel
            = transition_kernel(target, q * q_direction.normalized());
        t.kernel_ratio.push_back(g2 > 0 ? kernel / g2 : 0.0);
    }
    return t;
}

}  // namespace cohscat
