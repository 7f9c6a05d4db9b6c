#pragma once

#include "spinres/resonator_mode.hpp"

namespace spinres {

struct DetectionSetup {
  double temperature = 0.02;   // K
  double agg_width = 5e4;      // Hz, aggregate spin-ensemble width
  double noise_ratio = 1.0;    // P_n / P
  double electron_g = 2.0;
  double effective_spin = 0.5;

  void validate() const;

  friend bool operator==(const DetectionSetup&, const DetectionSetup&) = default;
};

struct LatticeParams {
  double a = 0.0;  // m
  double b = 0.0;
  double c = 0.0;
  int formula_units_per_cell = 2;
  int sites_per_formula = 1;

  void validate() const;
  /// Host cation sites per cubic metre.
  double site_density() const;

  friend bool operator==(const LatticeParams&, const LatticeParams&) = default;
};

/// Spin-dependence of the detection limit, (3/4) / (S(S+1)); 1 at S = 1/2.
double spin_scale(double S);

/// Minimum detectable number of spins
///   (4 kB V T / (g^2 beta^2 mu0)) (dw / w) (1 / (eta Q_L)) sqrt(P_n / P)
/// times spin_scale(S).
double n_min(const ResonatorMode& mode, const DetectionSetup& setup);

/// n_min with the fractional linewidth taken in field, dB / B, instead of dw / w.
double n_min_field_form(const ResonatorMode& mode, const DetectionSetup& setup, double line_width_b,
                        double resonant_b);

/// Impurity concentration in parts per 1e9 host sites.
double concentration_ppb(double n, double volume, const LatticeParams& lat);

/// Inverse of concentration_ppb.
double count_from_ppb(double ppb, double volume, const LatticeParams& lat);

}  // namespace spinres
