// SPDX-License-Identifier: Apache-2.0
//
// Rutherford cross section as the Coulomb case of the coherent Born
// formula, plus the historical scintillation-count analysis. With g the
// per-proton Coulomb coupling e^2 / (2 pi eps0),
//
//   dsigma/dcos(theta) = (Z g)^2 pi / (8 E^2 sin^4(theta/2)),
//
// in the fixed-target approximation E_r ~ E_alpha, theta ~ theta_alpha.
// The count comparison across materials uses the Bragg absorption scaling:
// the transmitted thickness goes as 1/sqrt(A), so N sqrt(A) / Z^2 is the
// quantity expected to be constant.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cohscat/csv.hpp"
#include "cohscat/error.hpp"
#include "cohscat/kinematics.hpp"
#include "cohscat/units.hpp"

namespace cohscat {

struct RutherfordRecord {
    std::string material;
    int mass_number = 0;    // A
    int atomic_number = 0;  // Z
    double counts = 0;      // scintillations per minute
};

inline void validate_record(RutherfordRecord const& r)
{
    if (!(r.atomic_number >= 1) || !(r.mass_number >= r.atomic_number))
    {
        fail("rutherford.bad_record",
             "need A >= Z >= 1 for material '" + r.material + "'");
    }
    if (!(r.counts > 0))
    {
        fail("rutherford.bad_record",
             "counts must be > 0 for material '" + r.material + "'");
    }
}

// Per-proton coupling e^2 / (2 pi eps0) expressed in a unit system's
// internal coupling unit (energy * length).
inline double coulomb_coupling_per_proton(UnitSystem const& units)
{
    return units.coupling_to_internal(2.0 * si::coulomb_e2);
}

inline double rutherford_differential(int atomic_number, double energy,
                                      double theta,
                                      double coupling_per_proton)
{
    if (atomic_number < 0)
    {
        fail("rutherford.bad_record", "Z must be >= 0");
    }
    if (!(energy > 0))
    {
        fail("rutherford.nonpositive_energy", "energy must be > 0");
    }
    if (!(theta <= pi) || !(theta >= 0))
    {
        fail("rutherford.invalid_angle", "theta must lie in (0, pi]");
    }
    if (!(theta > 0))
    {
        fail("rutherford.forward_divergence",
             "Rutherford cross section diverges at theta = 0");
    }
    double const zg = static_cast<double>(atomic_number) * coupling_per_proton;
    double const s = std::sin(0.5 * theta);
    return zg * zg * pi / (8.0 * energy * energy * s * s * s * s);
}

// Bragg thickness scaling: transmitted layer ~ 1/sqrt(A).
inline double absorption_correction(int mass_number)
{
    if (mass_number < 1)
    {
        fail("rutherford.bad_record", "A must be >= 1");
    }
    return 1.0 / std::sqrt(static_cast<double>(mass_number));
}

struct TableRow {
    RutherfordRecord record;
    double statistic = 0;  // N sqrt(A) / Z^2
};

struct TableAnalysis {
    std::vector<TableRow> rows;
    double mean = 0;
    double max_deviation = 0;  // max |statistic - mean|
};

inline TableAnalysis table1_analysis(std::vector<RutherfordRecord> const& recs)
{
    if (recs.empty())
    {
        fail("rutherford.empty_table", "need at least one record");
    }
    TableAnalysis out;
    out.rows.reserve(recs.size());
    double sum = 0;
    for (auto const& r : recs)
    {
        validate_record(r);
        double const z = static_cast<double>(r.atomic_number);
        double const stat
            = r.counts * std::sqrt(static_cast<double>(r.mass_number))
              / (z * z);
        out.rows.push_back({r, stat});
        sum += stat;
    }
    out.mean = sum / static_cast<double>(out.rows.size());
    for (auto const& row : out.rows)
    {
        out.max_deviation
            = std::max(out.max_deviation, std::abs(row.statistic - out.mean));
    }
    return out;
}

// The historical data set (Geiger & Marsden counts as tabulated by
// Rutherford), decimal commas normalized to points. Mirrored by the CSV
// asset in data/.
inline std::vector<RutherfordRecord> builtin_scintillation_table()
{
    return {
        {"Lead", 207, 82, 62.0},    {"Gold", 197, 79, 67.0},
        {"Platinum", 195, 78, 63.0}, {"Tin", 119, 50, 34.0},
        {"Silver", 108, 47, 27.0},  {"Copper", 64, 29, 14.5},
        {"Iron", 56, 26, 10.5},     {"Aluminum", 27, 13, 3.4},
    };
}

// CSV columns: material,A,Z,N.
inline std::vector<RutherfordRecord> load_scintillation_csv(
    std::string const& path)
{
    CsvDocument const doc = read_csv(path);
    if (doc.header != std::vector<std::string>{"material", "A", "Z", "N"})
    {
        fail("rutherford.bad_table_header",
             "expected header material,A,Z,N in '" + path + "'");
    }
    std::vector<RutherfordRecord> recs;
    recs.reserve(doc.rows.size());
    for (auto const& row : doc.rows)
    {
        RutherfordRecord r;
        r.material = row[0];
        r.mass_number = static_cast<int>(parse_double(row[1], "A"));
        r.atomic_number = static_cast<int>(parse_double(row[2], "Z"));
        r.counts = parse_double(row[3], "N");
        validate_record(r);
        recs.push_back(std::move(r));
    }
    if (recs.empty())
    {
        fail("rutherford.empty_table", "no data rows in '" + path + "'");
    }
    return recs;
}

}  // namespace cohscat
