// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: every release-gating check at full size, one pass/fail
// line per criterion. Exit status is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cohscat/cohscat.hpp"
#include "support/stats.hpp"

using namespace cohscat;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now()
                                         - start)
        .count();
}

std::string fmt(char const* format, ...)
{
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// 1. Transfer-matrix and matching-condition solvers agree with the
//    two-delta closed form to 1e-12 absolute on R over a 50x50
//    (beta, ka) grid, beta log-spaced in [0.1, 1000], ka in [0, 4 pi],
//    in under a second.
Outcome criterion_two_delta_grid()
{
    auto const start = std::chrono::steady_clock::now();
    double worst = 0;
    for (int bi = 0; bi < 50; ++bi)
    {
        double const beta = 0.1 * std::pow(1e4, bi / 49.0);
        for (int ai = 0; ai < 50; ++ai)
        {
            double const ka = 4.0 * pi * ai / 49.0;
            // k = 1, m = 1: strength = 1/beta, spacing = ka. Zero spacing
            // is realized as 1e-30 to keep site ordering strict; the
            // closed form differs only at O(ka) there.
            double const spacing = ka > 0 ? ka : 1e-30;
            auto const arr = uniform_delta_array(2, spacing, 1.0 / beta, 1.0);
            double const closed = reflectivity_two_delta_closed_form(beta, ka);
            double const transfer = transfer_matrix_solve(arr, 1.0).R;
            double const matched = boundary_condition_solve(arr, 1.0).R;
            worst = std::max({worst, std::abs(transfer - closed),
                              std::abs(matched - closed)});
        }
    }
    double const dt = seconds_since(start);
    bool const pass = worst <= 1e-12 && dt < 1.0;
    return {pass, fmt("max |dR| = %.3g (limit 1e-12), %.2f s (limit 1 s)",
                      worst, dt)};
}

// 2. Long-wavelength limit at ka = 1e-4: R within 1e-5 relative of
//    4 / (4 + beta^2) for beta in {0.5, 1, 2, 10}.
Outcome criterion_coherent_limit()
{
    double const ka = 1e-4;
    double worst = 0;
    double worst_beta = 0;
    for (double beta : {0.5, 1.0, 2.0, 10.0})
    {
        double const r = reflectivity_two_delta_closed_form(beta, ka);
        double const r0 = 4.0 / (4.0 + beta * beta);
        double const dev = std::abs(r - r0) / r;
        if (dev > worst)
        {
            worst = dev;
            worst_beta = beta;
        }
    }
    bool const pass = worst <= 1e-5;
    std::string detail = fmt("max rel dev = %.3g at beta = %g (limit 1e-5)",
                             worst, worst_beta);
    if (!pass)
    {
        // The exact reflectivity deviates from the ka -> 0 form at first
        // order, |R/R0 - 1| ~ 2 ka beta / (4 + beta^2), which is 1.9e-5 to
        // 5.0e-5 at ka = 1e-4: no implementation can land below 1e-5 here.
        // The 1e-5 tolerance is reachable at ka <= 2e-5.
        detail += "; deviation is first-order in ka, 2 ka beta/(4+beta^2)";
    }
    return {pass, detail};
}

// 3. Coherent gain: N = 2 at beta = 100, ka = 1e-4 within 1% of 4;
//    N = 3 within 1% of 9.
Outcome criterion_coherent_gain()
{
    auto const arr2 = uniform_delta_array(2, 1e-4, 1.0 / 100.0, 1.0);
    auto const arr3 = uniform_delta_array(3, 1e-4, 1.0 / 100.0, 1.0);
    double const g2 = coherent_gain(arr2, 1.0);
    double const g3 = coherent_gain(arr3, 1.0);
    bool const pass = g2 >= 3.96 && g2 <= 4.04 && g3 >= 8.91 && g3 <= 9.09;
    return {pass, fmt("gain(N=2) = %.6f in [3.96, 4.04], gain(N=3) = %.6f "
                      "in [8.91, 9.09]",
                      g2, g3)};
}

// 4. Unitarity R + T = 1 to 1e-12 over 1e4 random arrays: N <= 16 sites,
//    strengths of both signs in [-1, 1], k log-spaced in [0.5, 1e3]
//    (couplings |m alpha / k| up to ~3; far past that the matrix products
//    cancel beyond double precision for any method). Under 10 s.
Outcome criterion_unitarity()
{
    auto const start = std::chrono::steady_clock::now();
    std::mt19937_64 gen(20260810ull);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * detail::uniform_double(gen);
    };
    double worst = 0;
    for (int trial = 0; trial < 10000; ++trial)
    {
        std::size_t const n = 1 + static_cast<std::size_t>(uni(0, 16));
        std::vector<DeltaSite> sites;
        double x = uni(-5, -4);
        for (std::size_t j = 0; j < n; ++j)
        {
            double s = uni(-1.0, 1.0);
            if (s == 0)
            {
                s = 0.01;
            }
            sites.push_back({x, s});
            x += uni(0.01, 1.5);
        }
        auto const arr = make_delta_array(std::move(sites), uni(0.5, 1.5));
        double const k = std::exp(uni(std::log(0.5), std::log(1e3)));
        auto const amp = transfer_matrix_solve(arr, k);
        worst = std::max(worst, std::abs(amp.R + amp.T - 1.0));
    }
    double const dt = seconds_since(start);
    bool const pass = worst <= 1e-12 && dt < 10.0;
    return {pass, fmt("max |R+T-1| = %.3g over 1e4 arrays (limit 1e-12), "
                      "%.2f s (limit 10 s)",
                      worst, dt)};
}

// 5. Analytic vs quadrature transforms for Yukawa and Gaussian agree to
//    1e-6 relative on 40 log-spaced q in [1e-3, 1e2].
Outcome criterion_fourier_oracle()
{
    auto const yuk = Potential::yukawa(1.0, 1.0);
    auto const gauss = Potential::gaussian(2.5, 0.05);
    double worst = 0;
    for (int i = 0; i < 40; ++i)
    {
        double const q = 1e-3 * std::pow(1e5, i / 39.0);
        for (auto const* pot : {&yuk, &gauss})
        {
            double const analytic = pot->fourier(q);
            double const numeric = fourier_numeric(*pot, q);
            worst = std::max(
                worst, std::abs(numeric - analytic) / std::abs(analytic));
        }
    }
    bool const pass = worst <= 1e-6;
    return {pass, fmt("max rel diff = %.3g (limit 1e-6)", worst)};
}

// 6. Rutherford formula equals the coherent Born route with a Coulomb
//    potential to 1e-10 relative over a 20x20 (E, theta) grid,
//    theta in [pi/12, pi].
Outcome criterion_rutherford_equivalence()
{
    int const z = 47;
    double const g = 0.7;
    auto const pot = Potential::coulomb(1.0);
    double worst = 0;
    for (int ei = 0; ei < 20; ++ei)
    {
        double const e = 0.1 * std::pow(1e3, ei / 19.0);
        auto const kin = kinematics_from_relative(1.3, e);
        for (int ti = 0; ti < 20; ++ti)
        {
            double const theta = pi / 12 + (pi - pi / 12) * ti / 19.0;
            double const lhs = rutherford_differential(z, kin.E_r, theta, g);
            double const rhs = coherent_differential_cross_section(
                pot, kin, double(z) * g, theta);
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
    }
    bool const pass = worst <= 1e-10;
    return {pass, fmt("max rel diff = %.3g (limit 1e-10)", worst)};
}

// 7. The scintillation analysis rounds to the published column
//    {0.13, 0.15, 0.14, 0.15, 0.13, 0.14, 0.12, 0.10} in row order, and
//    the rounded spread excluding aluminum is <= 0.03.
Outcome criterion_scintillation_table()
{
    auto const analysis = table1_analysis(builtin_scintillation_table());
    std::vector<int> const expected{13, 15, 14, 15, 13, 14, 12, 10};
    if (analysis.rows.size() != expected.size())
    {
        return {false, "table does not have eight rows"};
    }
    bool ok = true;
    int lo = 1000, hi = -1000;
    for (std::size_t i = 0; i < expected.size(); ++i)
    {
        int const cents = static_cast<int>(
            std::lround(analysis.rows[i].statistic * 100.0));
        ok = ok && cents == expected[i];
        if (i + 1 < expected.size())  // aluminum excluded from the spread
        {
            lo = std::min(lo, cents);
            hi = std::max(hi, cents);
        }
    }
    bool const spread_ok = (hi - lo) <= 3;
    return {ok && spread_ok,
            fmt("rounded column %s, spread excl. aluminum = 0.0%d "
                "(limit 0.03)",
                ok ? "matches" : "MISMATCH", hi - lo)};
}

// 8. Form-factor limits: kernel(0) = G^2 exactly; within 1e-5 relative of
//    G^2 for |q| L <= 1e-3; position-averaged sigma = 0 plateau within 5%
//    of N g^2 over 1e5 random placements.
Outcome criterion_form_factor_limits()
{
    std::mt19937_64 gen(99u);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * detail::uniform_double(gen);
    };
    bool exact_ok = true;
    double small_q_worst = 0;
    for (int trial = 0; trial < 200; ++trial)
    {
        std::size_t const n = 1 + static_cast<std::size_t>(uni(0, 6));
        std::vector<Constituent> cs(n);
        for (auto& c : cs)
        {
            c.charge = uni(0.1, 2.0);
            c.mean_position = Vec3(uni(-1, 1), uni(-1, 1), uni(-1, 1));
            c.spread = uni(0, 0.3);
        }
        GaussianTarget const t{cs};
        double const g2 = t.total_charge() * t.total_charge();
        exact_ok = exact_ok && transition_kernel(t, Vec3::Zero()) == g2;
        if (t.size() > 0)
        {
            Vec3 const q = (1e-3 / t.size()) * Vec3(0.36, -0.48, 0.8);
            small_q_worst = std::max(
                small_q_worst, std::abs(transition_kernel(t, q) - g2) / g2);
        }
    }

    std::size_t const n_charges = 8;
    double const g = 1.3;
    double const plateau = double(n_charges) * g * g;
    double const avg = position_averaged_kernel(
        std::vector<double>(n_charges, g), 0.0, 1.0, Vec3(0, 0, 50.0), 100000,
        20260810ull);
    double const plateau_dev = std::abs(avg - plateau) / plateau;

    bool const pass = exact_ok && small_q_worst <= 1e-5 && plateau_dev <= 0.05;
    return {pass, fmt("kernel(0)=G^2 %s; small-q rel dev %.3g (limit 1e-5); "
                      "plateau dev %.3g (limit 0.05)",
                      exact_ok ? "exact" : "NOT exact", small_q_worst,
                      plateau_dev)};
}

// 9. 1e4 random ensembles of sub-target-size packets (dx_i < L, at least
//    minimal uncertainty) all have <p^2> > hbar^2/(4 L^2); zero
//    counterexamples.
Outcome criterion_small_packet_ensembles()
{
    std::mt19937_64 gen(31415u);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * detail::uniform_double(gen);
    };
    double const l = 1.0;
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial)
    {
        std::size_t const n = 1 + static_cast<std::size_t>(uni(0, 6));
        std::vector<EnsembleMember> members(n);
        double total = 0;
        for (auto& m : members)
        {
            double const dx = uni(1e-4, 1.0) * l;
            m.position_spread = dx;
            m.packet.momentum_spread = uni(1.0, 20.0) / (2.0 * dx);
            m.packet.mean_momentum = uni(0.0, 3.0);
            m.weight = uni(0.1, 1.0);
            total += m.weight;
        }
        for (auto& m : members)
        {
            m.weight /= total;
        }
        auto const check = small_packet_decomposition_violates(
            PacketEnsemble(std::move(members)), l);
        if (!check.applicable || !check.verified)
        {
            ++violations;
        }
    }
    return {violations == 0,
            fmt("%d counterexamples in 1e4 ensembles (limit 0)", violations)};
}

// 10. 1e6 Rutherford draws at theta_min = pi/6 pass a 1% KS test against
//     the analytic CDF; replay is byte-identical; under 5 s.
Outcome criterion_sampler()
{
    auto const start = std::chrono::steady_clock::now();
    AngularSampleSpec const spec{pi / 6, 1000000, 20260810ull};
    auto const angles = sample_rutherford(spec);
    auto const replay = sample_rutherford(spec);

    std::string bytes_a, bytes_b;
    bytes_a.reserve(angles.size() * 20);
    bytes_b.reserve(angles.size() * 20);
    for (std::size_t i = 0; i < angles.size(); ++i)
    {
        bytes_a += format_double(angles[i]);
        bytes_a += '\n';
        bytes_b += format_double(replay[i]);
        bytes_b += '\n';
    }
    bool const identical = angles == replay && bytes_a == bytes_b;

    std::vector<double> u(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i)
    {
        u[i] = std::cos(angles[i]);
    }
    double const d = teststats::ks_one_sample(std::move(u), [&](double x) {
        return rutherford_cdf_in_cos(x, spec.theta_min);
    });
    double const crit = teststats::ks_critical_one_sample(spec.count);
    double const dt = seconds_since(start);
    bool const pass = identical && d < crit && dt < 5.0;
    return {pass, fmt("KS = %.3g (limit %.3g), replay %s, %.2f s (limit 5 s)",
                      d, crit, identical ? "byte-identical" : "DIVERGED", dt)};
}

}  // namespace

int main()
{
    struct Criterion {
        char const* name;
        Outcome (*run)();
    };
    Criterion const criteria[] = {
        {"two-delta closed form vs both solvers", criterion_two_delta_grid},
        {"long-wavelength limit at ka = 1e-4", criterion_coherent_limit},
        {"coherent gain factor N^2", criterion_coherent_gain},
        {"unitarity on random arrays", criterion_unitarity},
        {"analytic vs quadrature transforms", criterion_fourier_oracle},
        {"Rutherford vs coherent Born route",
         criterion_rutherford_equivalence},
        {"scintillation-count analysis", criterion_scintillation_table},
        {"form-factor limits", criterion_form_factor_limits},
        {"small-packet ensemble bound", criterion_small_packet_ensembles},
        {"Rutherford sampler", criterion_sampler},
    };

    int failures = 0;
    int index = 0;
    for (auto const& c : criteria)
    {
        ++index;
        Outcome outcome;
        try
        {
            outcome = c.run();
        }
        catch (std::exception const& e)
        {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.pass)
        {
            ++failures;
        }
        std::printf("[%s] criterion %2d: %s - %s\n",
                    outcome.pass ? "PASS" : "FAIL", index, c.name,
                    outcome.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n",
                static_cast<int>(std::size(criteria)) - failures,
                std::size(criteria));
    return failures;
}
