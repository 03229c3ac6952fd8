// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo angle generation by inverse-transform sampling in cos(theta).
// The Rutherford density 1/(1-u)^2 (u = cos theta) has the closed-form
// antiderivative 1/(1-u), so sampling is exact with no rejection step; the
// support is [-1, cos(theta_min)] since the density is non-normalizable at
// theta = 0. Streams are deterministic for a given seed, and partitioned
// generation derives independent per-worker seeds and concatenates
// worker-ordered results.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "cohscat/born.hpp"
#include "cohscat/error.hpp"
#include "cohscat/kinematics.hpp"
#include "cohscat/rng.hpp"

namespace cohscat {

struct AngularSampleSpec {
    double theta_min = 0;      // in (0, pi)
    std::size_t count = 0;     // > 0
    std::uint64_t seed = 0;
};

inline void validate_spec(AngularSampleSpec const& spec)
{
    if (!(spec.theta_min > 0) || !(spec.theta_min < pi))
    {
        fail("sampler.invalid_theta_min", "theta_min must lie in (0, pi)");
    }
    if (spec.count == 0)
    {
        fail("sampler.empty_request", "sample count must be > 0");
    }
}

// CDF of the Rutherford angular density on u = cos(theta) in [-1, u_max]:
// F(u) = (1/(1-u) - 1/2) / (1/(1-u_max) - 1/2).
inline double rutherford_cdf_in_cos(double u, double theta_min)
{
    double const u_max = std::cos(theta_min);
    if (u <= -1.0)
    {
        return 0.0;
    }
    if (u >= u_max)
    {
        return 1.0;
    }
    double const norm = 1.0 / (1.0 - u_max) - 0.5;
    return (1.0 / (1.0 - u) - 0.5) / norm;
}

namespace detail {

inline double rutherford_inverse_cdf(double p, double u_max)
{
    double const norm = 1.0 / (1.0 - u_max) - 0.5;
    return 1.0 - 1.0 / (0.5 + p * norm);
}

inline void sample_rutherford_into(double theta_min, std::size_t count,
                                   std::uint64_t seed, double* out)
{
    double const u_max = std::cos(theta_min);
    std::mt19937_64 gen(seed);
    for (std::size_t i = 0; i < count; ++i)
    {
        double const u = rutherford_inverse_cdf(uniform_double(gen), u_max);
        out[i] = std::acos(std::clamp(u, -1.0, 1.0));
    }
}

}  // namespace detail

inline std::vector<double> sample_rutherford(AngularSampleSpec const& spec)
{
    validate_spec(spec);
    std::vector<double> angles(spec.count);
    detail::sample_rutherford_into(spec.theta_min, spec.count, spec.seed,
                                   angles.data());
    return angles;
}

// Partition the requested count over worker-owned independent streams.
// Results depend on (seed, n_workers) but not on scheduling; one worker
// reproduces sample_rutherford exactly.
inline std::vector<double> sample_rutherford_partitioned(
    AngularSampleSpec const& spec, unsigned n_workers)
{
    validate_spec(spec);
    if (n_workers == 0)
    {
        fail("sampler.empty_request", "need at least one worker");
    }
    n_workers = static_cast<unsigned>(
        std::min<std::size_t>(n_workers, spec.count));
    std::vector<double> angles(spec.count);
    std::size_t const chunk = spec.count / n_workers;
    std::size_t const extra = spec.count % n_workers;

    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    std::size_t offset = 0;
    for (unsigned w = 0; w < n_workers; ++w)
    {
        std::size_t const n = chunk + (w < extra ? 1 : 0);
        std::uint64_t const worker_seed = detail::stream_seed(spec.seed, w);
        double* out = angles.data() + offset;
        pool.emplace_back([=, theta_min = spec.theta_min] {
            detail::sample_rutherford_into(theta_min, n, worker_seed, out);
        });
        offset += n;
    }
    for (auto& t : pool)
    {
        t.join();
    }
    return angles;
}

// Inverse-transform sampling of a tabulated angular distribution. The CDF
// over cos(theta) is built with trapezoid masses at the table nodes and
// interpolated linearly in between.
inline std::vector<double> sample_general(CrossSectionTable const& table,
                                          std::size_t count,
                                          std::uint64_t seed)
{
    if (count == 0)
    {
        fail("sampler.empty_request", "sample count must be > 0");
    }
    std::size_t const n = table.theta.size();
    if (n < 2 || table.dsigma_dcos.size() != n)
    {
        fail("sampler.bad_table", "table needs >= 2 consistent grid points");
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!(table.dsigma_dcos[i] >= 0) || !std::isfinite(table.dsigma_dcos[i]))
        {
            fail("sampler.negative_table",
                 "table values must be finite and >= 0");
        }
        if (i > 0 && !(table.theta[i] > table.theta[i - 1]))
        {
            fail("sampler.bad_table", "theta grid must be strictly increasing");
        }
    }

    // Ascending u = cos(theta) grid (theta descending).
    std::vector<double> u(n), f(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        u[i] = std::cos(table.theta[n - 1 - i]);
        f[i] = table.dsigma_dcos[n - 1 - i];
    }
    std::vector<double> cdf(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
    {
        cdf[i] = cdf[i - 1] + 0.5 * (f[i] + f[i - 1]) * (u[i] - u[i - 1]);
    }
    double const total = cdf.back();
    if (!(total > 0))
    {
        fail("sampler.zero_table", "table integrates to zero");
    }
    for (auto& c : cdf)
    {
        c /= total;
    }

    std::mt19937_64 gen(seed);
    std::vector<double> angles(count);
    for (std::size_t s = 0; s < count; ++s)
    {
        double const p = detail::uniform_double(gen);
        auto const it = std::upper_bound(cdf.begin(), cdf.end(), p);
        std::size_t hi = static_cast<std::size_t>(it - cdf.begin());
        hi = std::clamp<std::size_t>(hi, 1, n - 1);
        std::size_t const lo = hi - 1;
        double const mass = cdf[hi] - cdf[lo];
        double const frac = mass > 0 ? (p - cdf[lo]) / mass : 0.0;
        double const uu = u[lo] + frac * (u[hi] - u[lo]);
        angles[s] = std::acos(std::clamp(uu, -1.0, 1.0));
    }
    return angles;
}

}  // namespace cohscat
