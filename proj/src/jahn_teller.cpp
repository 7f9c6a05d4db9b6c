#include "spinres/jahn_teller.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "spinres/errors.hpp"

namespace spinres::jt {

PrincipalG jt_gfactors(const JTParams& p) {
  const double c = std::cos(0.5 * p.phi);
  const double s = std::sqrt(3.0) * std::sin(0.5 * p.phi);
  const double k = p.lambda_over_delta;
  return {
      p.g_s - 2.0 * k * (c - s) * (c - s),
      p.g_s - 2.0 * k * (c + s) * (c + s),
      p.g_s - 8.0 * k * (c * c) * (c * c),
  };
}

DeltaG delta_g(double lambda_over_delta) {
  const double m = std::abs(lambda_over_delta);
  return {8.0 * m, 2.0 * m, lambda_over_delta <= 0.0};
}

double lambda_over_delta_from_gpar(double g_par, double g_s) { return -(g_par - g_s) / 8.0; }

RatioResult jt_ratio(double g1, double g2, double g3) {
  if (g3 == g2) throw NumericError("R = (g2 - g1)/(g3 - g2) is undefined for g3 == g2");
  const double r = (g2 - g1) / (g3 - g2);
  return {r, r < 1.0};
}

MixingEstimate mixing_angle_from_widths(std::span<const double> widths) {
  if (widths.size() != 4) throw InvalidInput("mixing angle needs exactly four multiplet widths");
  for (double w : widths)
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("multiplet widths must be positive");
  const auto [lo, hi] = std::minmax_element(widths.begin(), widths.end());
  const double sum = std::accumulate(widths.begin(), widths.end(), 0.0);
  const double phi = std::atan((*hi - *lo) / sum);
  const double half = std::sin(0.5 * phi);
  return {phi, half * half};
}

}  // namespace spinres::jt
