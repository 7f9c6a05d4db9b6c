#pragma once

#include <span>

#include "spinres/units.hpp"

namespace spinres::jt {

/// Tetragonal/rhombic distortion parameters of a d9 ion.
/// lambda_over_delta is negative for Cu2+; phi is the polar angle (radians)
/// of the E-type distortion coordinate.
struct JTParams {
  double lambda_over_delta = 0.0;
  double phi = 0.0;
  double g_s = units::constants().free_electron_g;
};

struct PrincipalG {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
};

/// Principal g-values to first order in lambda/Delta:
///   g1 = g_s - 2 l/D (cos(phi/2) - sqrt3 sin(phi/2))^2
///   g2 = g_s - 2 l/D (cos(phi/2) + sqrt3 sin(phi/2))^2
///   g3 = g_s - 8 l/D (cos^2(phi/2))^2
PrincipalG jt_gfactors(const JTParams& p);

/// g-shift magnitudes 8|l/D| and 2|l/D|. `above_free_electron` is true when
/// the shifts raise g above g_s, i.e. for negative lambda.
struct DeltaG {
  double parallel = 0.0;
  double perpendicular = 0.0;
  bool above_free_electron = true;
};

DeltaG delta_g(double lambda_over_delta);

/// lambda/Delta implied by a measured parallel g: -(g_par - g_s) / 8.
double lambda_over_delta_from_gpar(double g_par, double g_s = units::constants().free_electron_g);

struct RatioResult {
  double R = 0.0;
  bool elongated = false;  // R < 1
};

/// R = (g2 - g1) / (g3 - g2). Throws NumericError when g3 == g2.
RatioResult jt_ratio(double g1, double g2, double g3);

struct MixingEstimate {
  double phi = 0.0;        // radians
  double admixture = 0.0;  // sin^2(phi / 2)
};

/// phi = atan((max - min) / sum) over the four multiplet widths.
/// Widths must be positive and share one unit; throws InvalidInput otherwise.
MixingEstimate mixing_angle_from_widths(std::span<const double> widths);

}  // namespace spinres::jt
