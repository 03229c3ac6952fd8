// SPDX-License-Identifier: Apache-2.0
//
// Predicates deciding whether a scattering configuration is in the coherent
// regime, for plane waves, wave packets and statistical ensembles of
// packets. "Much smaller" is operationalized as ratio <= epsilon with the
// boundary included; epsilon defaults to 0.1 and is a caller choice.
// Internal units, hbar = 1.
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "cohscat/error.hpp"
#include "cohscat/kinematics.hpp"
#include "cohscat/potential.hpp"
#include "cohscat/quadrature.hpp"

namespace cohscat {

inline constexpr double default_epsilon = 0.1;

struct WavePacket {
    double mean_momentum = 0;    // |<p>|
    double momentum_spread = 0;  // Delta p >= 0
};

struct EnsembleMember {
    double weight = 0;
    WavePacket packet;
    // Position spread; required only by the small-packet decomposition
    // check.
    std::optional<double> position_spread;
};

class PacketEnsemble {
  public:
    explicit PacketEnsemble(std::vector<EnsembleMember> members)
        : members_(std::move(members))
    {
        if (members_.empty())
        {
            fail("coherence.empty_ensemble", "ensemble needs >= 1 member");
        }
        double total = 0;
        for (auto const& m : members_)
        {
            if (!(m.weight > 0))
            {
                fail("coherence.nonpositive_weight",
                     "ensemble weights must be > 0");
            }
            if (m.packet.momentum_spread < 0 || m.packet.mean_momentum < 0)
            {
                fail("coherence.bad_packet",
                     "momentum magnitude and spread must be >= 0");
            }
            total += m.weight;
        }
        if (std::abs(total - 1.0) > 1e-12)
        {
            fail("coherence.unnormalized_weights",
                 "ensemble weights must sum to 1 within 1e-12");
        }
    }

    std::vector<EnsembleMember> const& members() const { return members_; }

    // <p^2> = sum_i w_i (Dp_i^2 + <p>_i^2); the mixture's second momentum
    // moment, exactly.
    double momentum_second_moment() const
    {
        double s = 0;
        for (auto const& m : members_)
        {
            s += m.weight
                 * (m.packet.momentum_spread * m.packet.momentum_spread
                    + m.packet.mean_momentum * m.packet.mean_momentum);
        }
        return s;
    }

  private:
    std::vector<EnsembleMember> members_;
};

struct CoherenceVerdict {
    bool coherent = false;
    double ratio = 0;  // the quantity compared against epsilon
};

// Plane wave: momentum transfer is bounded by 2 |p_r|, so the phases stay
// aligned when 2 |p_r| L / hbar <= epsilon (equivalently lambda_r >> L).
inline CoherenceVerdict plane_wave_coherent(double p_r, double target_size,
                                            double epsilon = default_epsilon)
{
    if (target_size < 0 || p_r < 0)
    {
        fail("coherence.bad_input", "p_r and L must be >= 0");
    }
    if (!(epsilon > 0) || !(epsilon < 1))
    {
        fail("coherence.bad_epsilon", "epsilon must lie in (0, 1)");
    }
    double const ratio = 2.0 * p_r * target_size;
    return {ratio <= epsilon, ratio};
}

struct PacketVerdict {
    bool coherent = false;
    double ratio = 0;
    // Delta x = hbar / (2 Delta p); unset when Delta p = 0 (unbounded).
    std::optional<double> position_spread;
    // Position form of the same condition, Delta x >= L / (2 epsilon).
    std::optional<bool> position_statement;
};

// Wave packet: every significant plane-wave component has to satisfy the
// plane-wave condition in the target rest frame; the largest significant
// momentum is approximated by |<p>| + Delta p (tails disregarded).
inline PacketVerdict packet_coherent(WavePacket const& wp, double target_size,
                                     double epsilon = default_epsilon)
{
    if (target_size < 0 || wp.mean_momentum < 0 || wp.momentum_spread < 0)
    {
        fail("coherence.bad_input", "momenta and L must be >= 0");
    }
    if (!(epsilon > 0) || !(epsilon < 1))
    {
        fail("coherence.bad_epsilon", "epsilon must lie in (0, 1)");
    }
    PacketVerdict v;
    v.ratio = (wp.mean_momentum + wp.momentum_spread) * target_size;
    v.coherent = v.ratio <= epsilon;
    if (wp.momentum_spread > 0)
    {
        v.position_spread = 1.0 / (2.0 * wp.momentum_spread);
        v.position_statement
            = *v.position_spread >= target_size / (2.0 * epsilon);
    }
    return v;
}

struct EnsembleVerdict {
    bool coherent = false;
    double second_moment = 0;  // <p^2> of the mixture
    double ratio = 0;          // <p^2> L^2 / hbar^2, compared to epsilon^2
};

// Mixture of packets: coherent when <p^2> L^2 / hbar^2 <= epsilon^2.
inline EnsembleVerdict ensemble_coherent(PacketEnsemble const& ens,
                                         double target_size,
                                         double epsilon = default_epsilon)
{
    if (target_size < 0)
    {
        fail("coherence.bad_input", "L must be >= 0");
    }
    if (!(epsilon > 0) || !(epsilon < 1))
    {
        fail("coherence.bad_epsilon", "epsilon must lie in (0, 1)");
    }
    EnsembleVerdict v;
    v.second_moment = ens.momentum_second_moment();
    v.ratio = v.second_moment * target_size * target_size;
    v.coherent = v.ratio <= epsilon * epsilon;
    return v;
}

struct DecompositionCheck {
    // False when some member has Delta x >= L, in which case the
    // incompatibility statement does not apply (verified is vacuously true).
    bool applicable = false;
    bool verified = false;
    double second_moment = 0;
    double bound = 0;  // hbar^2 / (4 L^2) under the Dx Dp >= hbar/2 relation
};

// A mixture decomposed into packets all narrower than the target
// (Delta x_i < L) cannot be coherent: the uncertainty relation
// Delta x Delta p >= hbar/2 forces Delta p_i > hbar / (2L) and hence
// <p^2> > hbar^2 / (4 L^2), incompatible with the coherence condition.
inline DecompositionCheck small_packet_decomposition_violates(
    PacketEnsemble const& ens, double target_size)
{
    if (!(target_size > 0))
    {
        fail("coherence.bad_input", "L must be > 0");
    }
    DecompositionCheck out;
    out.applicable = true;
    for (auto const& m : ens.members())
    {
        if (!m.position_spread.has_value())
        {
            fail("coherence.missing_position_spread",
                 "every member needs a position spread for this check");
        }
        if (!(*m.position_spread > 0))
        {
            fail("coherence.bad_packet", "position spreads must be > 0");
        }
        if (*m.position_spread >= target_size)
        {
            out.applicable = false;
        }
    }
    out.second_moment = ens.momentum_second_moment();
    out.bound = 1.0 / (4.0 * target_size * target_size);
    out.verified = !out.applicable || out.second_moment > out.bound;
    return out;
}

enum class BornValidity { valid, marginal, invalid };

struct BornValidityReport {
    BornValidity verdict = BornValidity::valid;
    double ratio = 0;  // Vbar R m_r / (hbar |p_r|)
};

// Perturbative-regime estimate: the mean potential over the interaction
// region, times the transit-time scale, must be small against hbar, i.e.
// Vbar R m_r / (hbar |p_r|) small. Advisory only; cross sections are
// computed regardless.
inline BornValidityReport born_validity(Potential const& pot,
                                        Kinematics const& kin, double r_extent)
{
    if (!(r_extent > 0) || !std::isfinite(r_extent))
    {
        fail("coherence.invalid_extent", "R extent must be positive finite");
    }
    auto integrand = [&](double r) { return r * r * std::abs(pot(r)); };
    QuadratureOptions opt;
    opt.rel_tol = 1e-9;
    double const mean_v = 3.0 / (r_extent * r_extent * r_extent)
                          * integrate(integrand, 0.0, r_extent, opt);

    BornValidityReport rep;
    if (mean_v == 0)
    {
        rep.ratio = 0;
        rep.verdict = BornValidity::valid;
        return rep;
    }
    double const p = kin.p_r.norm();
    if (p == 0)
    {
        rep.ratio = std::numeric_limits<double>::infinity();
        rep.verdict = BornValidity::invalid;
        return rep;
    }
    rep.ratio = mean_v * r_extent * kin.m_r / p;
    rep.verdict = rep.ratio <= 0.1
                      ? BornValidity::valid
                      : (rep.ratio <= 1.0 ? BornValidity::marginal
                                          : BornValidity::invalid);
    return rep;
}

inline char const* to_string(BornValidity v)
{
    switch (v)
    {
        case BornValidity::valid:
            return "valid";
        case BornValidity::marginal:
            return "marginal";
        case BornValidity::invalid:
            return "invalid";
    }
    return "?";
}

}  // namespace cohscat
