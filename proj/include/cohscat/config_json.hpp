// SPDX-License-Identifier: Apache-2.0
//
// JSON spec parsing for potentials, targets and coherence inputs. Kept out
// of the core headers so the library itself has no vendored dependency;
// include this from code that already has nlohmann/json on its include
// path (the CLI does).
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cohscat/born.hpp"
#include "cohscat/coherence.hpp"
#include "cohscat/error.hpp"
#include "cohscat/potential.hpp"
#include "cohscat/units.hpp"

namespace cohscat {

inline double require_number(nlohmann::json const& j, std::string const& key)
{
    if (!j.contains(key) || !j[key].is_number())
    {
        fail("config.missing_key", "expected numeric field '" + key + "'");
    }
    return j[key].get<double>();
}

// {"kind": "coulomb"|"yukawa"|"gaussian"|"tabulated", ...parameters,
//  "units": "internal"|"nuclear"|"atomic"}
// Parameters are converted into internal units according to the optional
// units field (default internal, i.e. no conversion).
inline Potential potential_from_json(nlohmann::json const& j)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    {
        fail("config.bad_potential", "potential spec needs a 'kind' string");
    }
    UnitContext const units = UnitContext::by_name(
        j.contains("units") ? j["units"].get<std::string>() : "internal");
    std::string const kind = j["kind"].get<std::string>();
    if (kind == "coulomb")
    {
        return Potential::coulomb(
            units.coupling_to_internal(require_number(j, "coupling")));
    }
    if (kind == "yukawa")
    {
        return Potential::yukawa(
            units.coupling_to_internal(require_number(j, "coupling")),
            units.length_to_internal(require_number(j, "screening_length")));
    }
    if (kind == "gaussian")
    {
        return Potential::gaussian(
            units.energy_to_internal(require_number(j, "strength")),
            units.length_to_internal(require_number(j, "width")));
    }
    if (kind == "tabulated")
    {
        if (!j.contains("r") || !j.contains("V") || !j["r"].is_array()
            || !j["V"].is_array())
        {
            fail("config.bad_potential",
                 "tabulated potential needs arrays 'r' and 'V'");
        }
        auto r = j["r"].get<std::vector<double>>();
        auto v = j["V"].get<std::vector<double>>();
        for (auto& x : r)
        {
            x = units.length_to_internal(x);
        }
        for (auto& x : v)
        {
            x = units.energy_to_internal(x);
        }
        return Potential::tabulated(std::move(r), std::move(v));
    }
    fail("config.bad_potential", "unknown potential kind '" + kind + "'");
}

// [{"charge": g, "position": [x,y,z], "spread": s}, ...]
inline GaussianTarget target_from_json(nlohmann::json const& j)
{
    if (!j.is_array() || j.empty())
    {
        fail("config.bad_target", "target spec must be a non-empty array");
    }
    std::vector<Constituent> cs;
    cs.reserve(j.size());
    for (auto const& e : j)
    {
        Constituent c;
        c.charge = require_number(e, "charge");
        if (e.contains("position"))
        {
            auto const& p = e["position"];
            if (!p.is_array() || p.size() != 3)
            {
                fail("config.bad_target", "'position' must be [x, y, z]");
            }
            c.mean_position = Vec3(p[0].get<double>(), p[1].get<double>(),
                                   p[2].get<double>());
        }
        if (e.contains("spread"))
        {
            c.spread = e["spread"].get<double>();
        }
        cs.push_back(c);
    }
    return GaussianTarget(std::move(cs));
}

// {"weight": w, "mean_momentum": p, "momentum_spread": dp,
//  "position_spread": dx?}
inline PacketEnsemble ensemble_from_json(nlohmann::json const& j)
{
    if (!j.is_array() || j.empty())
    {
        fail("config.bad_ensemble", "ensemble spec must be a non-empty array");
    }
    std::vector<EnsembleMember> members;
    members.reserve(j.size());
    for (auto const& e : j)
    {
        EnsembleMember m;
        m.weight = require_number(e, "weight");
        m.packet.mean_momentum = require_number(e, "mean_momentum");
        m.packet.momentum_spread = require_number(e, "momentum_spread");
        if (e.contains("position_spread"))
        {
            m.position_spread = e["position_spread"].get<double>();
        }
        members.push_back(m);
    }
    return PacketEnsemble(std::move(members));
}

}  // namespace cohscat
