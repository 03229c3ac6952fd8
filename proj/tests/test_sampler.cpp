// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "cohscat/sampler.hpp"
#include "support/stats.hpp"

using namespace cohscat;

namespace {

// Map angles to cos(theta) for CDF comparisons.
std::vector<double> to_cos(std::vector<double> const& angles)
{
    std::vector<double> u(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i)
    {
        u[i] = std::cos(angles[i]);
    }
    return u;
}

}  // namespace

TEST_CASE("samples stay inside the angular support")
{
    AngularSampleSpec const spec{pi / 6, 20000, 99};
    auto const angles = sample_rutherford(spec);
    REQUIRE(angles.size() == spec.count);
    for (double th : angles)
    {
        CHECK(th >= spec.theta_min - 1e-12);
        CHECK(th <= pi + 1e-12);
    }
}

TEST_CASE("degenerate support pins every sample near pi")
{
    AngularSampleSpec const spec{pi - 1e-6, 1000, 3};
    for (double th : sample_rutherford(spec))
    {
        CHECK(th >= pi - 1e-6 - 1e-12);
    }
}

TEST_CASE("empirical CDF matches the analytic CDF (KS at 1%)")
{
    AngularSampleSpec const spec{pi / 6, 100000, 20260810};
    auto const u = to_cos(sample_rutherford(spec));
    double const d = teststats::ks_one_sample(
        u, [&](double x) { return rutherford_cdf_in_cos(x, spec.theta_min); });
    CHECK(d < teststats::ks_critical_one_sample(spec.count));
}

TEST_CASE("deterministic replay and seed independence")
{
    AngularSampleSpec const spec{pi / 4, 5000, 1234};
    auto const a = sample_rutherford(spec);
    auto const b = sample_rutherford(spec);
    CHECK(a == b);  // bitwise

    AngularSampleSpec other = spec;
    other.seed = 1235;
    auto const c = sample_rutherford(other);
    CHECK(a != c);
    // Disjoint seeds look like independent draws of the same law.
    double const d = teststats::ks_two_sample(to_cos(a), to_cos(c));
    CHECK(d < teststats::ks_critical_two_sample(a.size(), c.size()));
}

TEST_CASE("partitioned generation is deterministic and distributed right")
{
    AngularSampleSpec const spec{pi / 6, 30011, 777};
    auto const one = sample_rutherford_partitioned(spec, 1);
    CHECK(one == sample_rutherford(spec));  // single stream is the plain path

    auto const four = sample_rutherford_partitioned(spec, 4);
    auto const four_again = sample_rutherford_partitioned(spec, 4);
    CHECK(four == four_again);
    REQUIRE(four.size() == spec.count);

    // Worker-ordered concatenation of the derived streams.
    std::size_t const chunk = spec.count / 4, extra = spec.count % 4;
    std::size_t offset = 0;
    for (unsigned w = 0; w < 4; ++w)
    {
        std::size_t const n = chunk + (w < extra ? 1 : 0);
        AngularSampleSpec stream = spec;
        stream.count = n;
        stream.seed = detail::stream_seed(spec.seed, w);
        auto const expect = sample_rutherford(stream);
        for (std::size_t i = 0; i < n; ++i)
        {
            REQUIRE(four[offset + i] == expect[i]);
        }
        offset += n;
    }

    // The partitioned stream still follows the law.
    double const d = teststats::ks_one_sample(to_cos(four), [&](double x) {
        return rutherford_cdf_in_cos(x, spec.theta_min);
    });
    CHECK(d < teststats::ks_critical_one_sample(spec.count));
}

TEST_CASE("histogram counts follow the analytic bin masses")
{
    AngularSampleSpec const spec{pi / 6, 100000, 5150};
    auto const u = to_cos(sample_rutherford(spec));
    int const nbins = 30;
    double const lo = -1.0, hi = std::cos(spec.theta_min);
    std::vector<double> counts(nbins, 0.0);
    for (double x : u)
    {
        int b = static_cast<int>((x - lo) / (hi - lo) * nbins);
        b = std::clamp(b, 0, nbins - 1);
        counts[b] += 1.0;
    }
    int ok = 0;
    for (int b = 0; b < nbins; ++b)
    {
        double const a = lo + (hi - lo) * b / nbins;
        double const c = lo + (hi - lo) * (b + 1) / nbins;
        double const mass = rutherford_cdf_in_cos(c, spec.theta_min)
                            - rutherford_cdf_in_cos(a, spec.theta_min);
        double const expect = mass * double(spec.count);
        if (std::abs(counts[b] - expect) < 4.0 * std::sqrt(expect))
        {
            ++ok;
        }
    }
    CHECK(ok >= nbins - 1);
}

TEST_CASE("general sampler: constant table is uniform in cos(theta)")
{
    CrossSectionTable table;
    table.theta = linear_grid(0.2, 3.0, 50);
    table.dsigma_dcos.assign(50, 2.5);
    std::size_t const n = 100000;
    auto const u = to_cos(sample_general(table, n, 42));
    double const lo = std::cos(3.0), hi = std::cos(0.2);
    double mean = 0;
    for (double x : u)
    {
        CHECK(x >= lo - 1e-12);
        CHECK(x <= hi + 1e-12);
        mean += x;
    }
    mean /= double(n);
    double const expect = 0.5 * (lo + hi);
    double const sigma = (hi - lo) / std::sqrt(12.0 * double(n));
    CHECK(std::abs(mean - expect) < 3.0 * sigma);
}

TEST_CASE("general sampler follows a Rutherford-shaped table")
{
    double const theta_min = pi / 6;
    CrossSectionTable table;
    table.theta = linear_grid(theta_min, pi, 2000);
    for (double th : table.theta)
    {
        double const s2 = std::sin(0.5 * th) * std::sin(0.5 * th);
        table.dsigma_dcos.push_back(1.0 / (s2 * s2));
    }
    std::size_t const n = 100000;
    auto const a = to_cos(sample_general(table, n, 11));
    auto const b = to_cos(sample_rutherford({theta_min, n, 12}));
    double const d = teststats::ks_two_sample(a, b);
    CHECK(d < teststats::ks_critical_two_sample(n, n));
}

TEST_CASE("general sampler: single-bin spike confines the samples")
{
    CrossSectionTable table;
    table.theta = linear_grid(0.5, 2.5, 21);
    table.dsigma_dcos.assign(21, 0.0);
    table.dsigma_dcos[10] = 3.0;
    auto const angles = sample_general(table, 5000, 8);
    for (double th : angles)
    {
        CHECK(th >= table.theta[9] - 1e-12);
        CHECK(th <= table.theta[11] + 1e-12);
    }
}

TEST_CASE("sampler input validation")
{
    CHECK_THROWS_AS(sample_rutherford({0.0, 10, 1}), Error);
    CHECK_THROWS_AS(sample_rutherford({pi, 10, 1}), Error);
    CHECK_THROWS_AS(sample_rutherford({1.0, 0, 1}), Error);
    CHECK_THROWS_AS(sample_rutherford_partitioned({1.0, 10, 1}, 0), Error);

    CrossSectionTable zeros;
    zeros.theta = linear_grid(0.5, 2.5, 5);
    zeros.dsigma_dcos.assign(5, 0.0);
    CHECK_THROWS_AS(sample_general(zeros, 10, 1), Error);

    CrossSectionTable negative;
    negative.theta = linear_grid(0.5, 2.5, 5);
    negative.dsigma_dcos.assign(5, -1.0);
    CHECK_THROWS_AS(sample_general(negative, 10, 1), Error);

    CrossSectionTable tiny;
    tiny.theta = {1.0};
    tiny.dsigma_dcos = {1.0};
    CHECK_THROWS_AS(sample_general(tiny, 10, 1), Error);
}
