// SPDX-License-Identifier: Apache-2.0
//
// Unit conventions. All physics in this library is computed in internal
// units with hbar = 1; a UnitSystem fixes what one internal unit of mass,
// length and energy means externally, so conversions happen only at the
// CLI/file boundary.
#pragma once

#include <cmath>
#include <string>

#include "cohscat/error.hpp"

namespace cohscat {

// SI values of the constants needed at the unit boundary.
namespace si {
inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double elementary_charge = 1.602176634e-19;   // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double electron_mass = 9.1093837015e-31;      // kg
inline constexpr double bohr_radius = 5.29177210903e-11;       // m
inline constexpr double hartree = 4.3597447222071e-18;         // J
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double femtometer = 1e-15;                    // m
inline constexpr double mega_electronvolt = 1.602176634e-13;   // J

// Coulomb coupling e^2/(4 pi eps0) in J m.
inline constexpr double coulomb_e2
    = elementary_charge * elementary_charge
      / (4.0 * 3.14159265358979323846 * vacuum_permittivity);
}  // namespace si

// external value = internal value * scale. Scales are expressed in SI
// (kg, m, J per internal unit). A system is hbar-consistent when
// sqrt(energy_scale * mass_scale) * length_scale == si::hbar, which makes
// the internal hbar = 1 coincide with the physical constant; the named
// constructors below guarantee that by deriving the energy scale.
class UnitSystem {
  public:
    UnitSystem(double mass_scale, double length_scale, double energy_scale)
        : mass_scale_(mass_scale),
          length_scale_(length_scale),
          energy_scale_(energy_scale)
    {
        if (!(mass_scale_ > 0) || !(length_scale_ > 0) || !(energy_scale_ > 0))
        {
            fail("units.nonpositive_scale",
                 "unit scales must be strictly positive");
        }
    }

    // Pure dimensionless bookkeeping: every scale is 1.
    static UnitSystem dimensionless() { return UnitSystem(1.0, 1.0, 1.0); }

    // Derive the energy scale so that internal hbar = 1 is physical hbar.
    static UnitSystem natural(double mass_scale_si, double length_scale_si)
    {
        double energy = si::hbar * si::hbar
                        / (mass_scale_si * length_scale_si * length_scale_si);
        return UnitSystem(mass_scale_si, length_scale_si, energy);
    }

    // Hartree atomic units: electron mass, Bohr radius, Hartree energy.
    static UnitSystem atomic()
    {
        return UnitSystem(si::electron_mass, si::bohr_radius, si::hartree);
    }

    // Nuclear-scale units: atomic mass unit, femtometer, derived energy
    // (about 41.8 MeV per internal energy unit).
    static UnitSystem nuclear()
    {
        return natural(si::atomic_mass_unit, si::femtometer);
    }

    double hbar() const { return 1.0; }
    double mass_scale() const { return mass_scale_; }
    double length_scale() const { return length_scale_; }
    double energy_scale() const { return energy_scale_; }

    // Derived scales. Momentum from E = p^2 / 2m, action from p * x.
    double momentum_scale() const
    {
        return std::sqrt(energy_scale_ * mass_scale_);
    }
    double action_scale() const { return momentum_scale() * length_scale_; }
    double cross_section_scale() const { return length_scale_ * length_scale_; }
    // Couplings of the form g = (energy) * (length), e.g. e^2/(2 pi eps0).
    double coupling_scale() const { return energy_scale_ * length_scale_; }

    bool hbar_consistent(double rel_tol = 1e-9) const
    {
        return std::abs(action_scale() - si::hbar) <= rel_tol * si::hbar;
    }

    double mass_to_internal(double x) const { return x / mass_scale_; }
    double mass_to_external(double x) const { return x * mass_scale_; }
    double length_to_internal(double x) const { return x / length_scale_; }
    double length_to_external(double x) const { return x * length_scale_; }
    double energy_to_internal(double x) const { return x / energy_scale_; }
    double energy_to_external(double x) const { return x * energy_scale_; }
    double momentum_to_internal(double x) const { return x / momentum_scale(); }
    double momentum_to_external(double x) const { return x * momentum_scale(); }
    double coupling_to_internal(double x) const { return x / coupling_scale(); }
    double coupling_to_external(double x) const { return x * coupling_scale(); }
    double cross_section_to_external(double x) const
    {
        return x * cross_section_scale();
    }

  private:
    double mass_scale_;
    double length_scale_;
    double energy_scale_;
};

// A unit system together with the practical units quantities are typed in
// at the boundary: plain numbers for "internal", MeV/fm for "nuclear",
// Hartree/Bohr for "atomic". UnitSystem conversions are SI-based; this
// wrapper handles the practical-unit step so e.g. a nuclear-units energy
// can be given in MeV even though the internal energy unit is ~41.8 MeV.
class UnitContext {
  public:
    static UnitContext by_name(std::string const& name)
    {
        if (name == "internal")
        {
            return {UnitSystem::dimensionless(), 1.0, 1.0};
        }
        if (name == "nuclear")
        {
            return {UnitSystem::nuclear(), si::mega_electronvolt,
                    si::femtometer};
        }
        if (name == "atomic")
        {
            return {UnitSystem::atomic(), si::hartree, si::bohr_radius};
        }
        fail("units.unknown_system", "unknown unit system '" + name + "'");
    }

    UnitSystem const& system() const { return system_; }

    double energy_to_internal(double e) const
    {
        return e * energy_unit_si_ / system_.energy_scale();
    }
    double length_to_internal(double x) const
    {
        return x * length_unit_si_ / system_.length_scale();
    }
    double coupling_to_internal(double g) const
    {
        return g * energy_unit_si_ * length_unit_si_
               / system_.coupling_scale();
    }
    // Areas come back in the squared practical length unit (fm^2, a0^2).
    double cross_section_to_practical(double s) const
    {
        double const l = system_.length_scale() / length_unit_si_;
        return s * l * l;
    }

  private:
    UnitContext(UnitSystem system, double energy_unit_si, double length_unit_si)
        : system_(system),
          energy_unit_si_(energy_unit_si),
          length_unit_si_(length_unit_si)
    {
    }

    UnitSystem system_;
    double energy_unit_si_;
    double length_unit_si_;
};

}  // namespace cohscat
