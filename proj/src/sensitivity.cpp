#include "spinres/sensitivity.hpp"

#include <cmath>

#include "spinres/errors.hpp"
#include "spinres/spin_algebra.hpp"
#include "spinres/units.hpp"

namespace spinres {
namespace {

// Everything in n_min except the fractional linewidth.
double prefactor(const ResonatorMode& mode, const DetectionSetup& setup) {
  const auto& c = units::constants();
  const double g = setup.electron_g;
  return 4.0 * c.boltzmann_kB * mode.mode_volume * setup.temperature /
         (g * g * c.bohr_magneton * c.bohr_magneton * c.vacuum_permeability_mu0) /
         (mode.filling_factor * mode.q_loaded) * std::sqrt(setup.noise_ratio) * spin_scale(setup.effective_spin);
}

}  // namespace

void ResonatorMode::validate() const {
  if (!(freq > 0.0)) throw InvalidInput("mode " + label + ": frequency must be positive");
  if (!(q_loaded > 0.0)) throw InvalidInput("mode " + label + ": loaded Q must be positive");
  if (!(mode_volume > 0.0)) throw InvalidInput("mode " + label + ": mode volume must be positive");
  if (!(filling_factor > 0.0 && filling_factor <= 1.0))
    throw InvalidInput("mode " + label + ": filling factor must lie in (0, 1]");
}

void DetectionSetup::validate() const {
  if (!(temperature > 0.0)) throw InvalidInput("temperature must be positive");
  if (!(agg_width >= 0.0)) throw InvalidInput("aggregate width must be non-negative");
  if (!(noise_ratio >= 0.0)) throw InvalidInput("noise ratio must be non-negative");
  if (!(electron_g > 0.0)) throw InvalidInput("electron g must be positive");
  if (!(effective_spin > 0.0) || !is_half_integer(effective_spin))
    throw InvalidInput("effective spin must be a positive half-integer");
}

void LatticeParams::validate() const {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw InvalidInput("lattice constants must be positive");
  if (formula_units_per_cell < 1 || sites_per_formula < 1)
    throw InvalidInput("formula units and sites per formula must be at least 1");
}

double LatticeParams::site_density() const {
  validate();
  return static_cast<double>(formula_units_per_cell) * sites_per_formula / (a * b * c);
}

double spin_scale(double S) {
  if (!(S > 0.0)) throw InvalidInput("effective spin must be positive");
  return 0.75 / (S * (S + 1.0));
}

double n_min(const ResonatorMode& mode, const DetectionSetup& setup) {
  mode.validate();
  setup.validate();
  return prefactor(mode, setup) * (setup.agg_width / mode.freq);
}

double n_min_field_form(const ResonatorMode& mode, const DetectionSetup& setup, double line_width_b,
                        double resonant_b) {
  mode.validate();
  setup.validate();
  if (!(resonant_b > 0.0)) throw InvalidInput("resonant field must be positive");
  if (!(line_width_b >= 0.0)) throw InvalidInput("field linewidth must be non-negative");
  return prefactor(mode, setup) * (line_width_b / resonant_b);
}

double concentration_ppb(double n, double volume, const LatticeParams& lat) {
  if (!(n >= 0.0)) throw InvalidInput("spin count must be non-negative");
  if (!(volume > 0.0)) throw InvalidInput("volume must be positive");
  return 1e9 * n / (volume * lat.site_density());
}

double count_from_ppb(double ppb, double volume, const LatticeParams& lat) {
  if (!(volume > 0.0)) throw InvalidInput("volume must be positive");
  return ppb * 1e-9 * volume * lat.site_density();
}

}  // namespace spinres
