#pragma once

#include <numbers>
#include <string_view>

namespace spinres::units {

/// CODATA-2018 constants in SI units.
struct PhysicalConstants {
  double planck_h;                 // J s
  double speed_of_light;           // m/s
  double boltzmann_kB;             // J/K
  double bohr_magneton;            // J/T
  double nuclear_magneton;         // J/T
  double vacuum_permeability_mu0;  // T m/A
  double free_electron_g;          // |g_e|
  double elementary_charge;        // C
  double vacuum_permittivity;      // F/m
  double coulomb_e2;               // e^2 / (4 pi eps0), J m
  double bohr_radius_a0;           // m
  double hc_per_cm;                // J per cm^-1
};

inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kElementaryCharge = 1.602176634e-19;
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;

inline constexpr PhysicalConstants kCodata2018{
    .planck_h = kPlanck,
    .speed_of_light = kSpeedOfLight,
    .boltzmann_kB = 1.380649e-23,
    .bohr_magneton = 9.2740100783e-24,
    .nuclear_magneton = 5.0507837461e-27,
    .vacuum_permeability_mu0 = 1.25663706212e-6,
    .free_electron_g = 2.00231930436256,
    .elementary_charge = kElementaryCharge,
    .vacuum_permittivity = kVacuumPermittivity,
    .coulomb_e2 = kElementaryCharge * kElementaryCharge /
                  (4.0 * std::numbers::pi * kVacuumPermittivity),
    .bohr_radius_a0 = 5.29177210903e-11,
    .hc_per_cm = kPlanck * kSpeedOfLight * 100.0,
};

inline constexpr const PhysicalConstants& constants() noexcept { return kCodata2018; }

enum class UnitKind { joule, wavenumber, gigahertz, tesla_at_g };

/// An energy unit. `tesla_at_g` expresses an energy as the field B that
/// gives the same Zeeman energy E = g * beta * B, so it carries its g.
struct Unit {
  UnitKind kind = UnitKind::joule;
  double g = 0.0;

  friend bool operator==(const Unit&, const Unit&) = default;
};

inline constexpr Unit joule{UnitKind::joule};
inline constexpr Unit wavenumber{UnitKind::wavenumber};
inline constexpr Unit gigahertz{UnitKind::gigahertz};
inline constexpr Unit tesla_at(double g) { return Unit{UnitKind::tesla_at_g, g}; }

struct EnergyValue {
  double magnitude = 0.0;
  Unit unit = joule;
};

/// Joules per one of `u`. Throws InvalidInput for an unknown tag or g <= 0.
double joules_per(const Unit& u);

EnergyValue convert_energy(const EnergyValue& v, const Unit& target);

double to_joule(double magnitude, const Unit& u);
double from_joule(double joules, const Unit& u);

/// Accepts "J", "cm-1", "GHz", "T" (the latter needs g).
Unit parse_unit(std::string_view tag, double g = 0.0);

constexpr double gauss_to_tesla(double gauss) noexcept { return gauss * 1e-4; }
constexpr double tesla_to_gauss(double tesla) noexcept { return tesla * 1e4; }

/// Hyperfine constants are quoted in units of 1e-4 cm^-1.
constexpr double hyperfine_to_joule(double value_1e4_per_cm) noexcept {
  return value_1e4_per_cm * 1e-4 * kCodata2018.hc_per_cm;
}
constexpr double joule_to_hyperfine(double joules) noexcept {
  return joules / (1e-4 * kCodata2018.hc_per_cm);
}

constexpr double barn_to_m2(double barn) noexcept { return barn * 1e-28; }
constexpr double angstrom_to_m(double a) noexcept { return a * 1e-10; }

}  // namespace spinres::units
