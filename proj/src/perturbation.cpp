#include "spinres/perturbation.hpp"

#include <cmath>

#include "spinres/errors.hpp"
#include "spinres/units.hpp"

namespace spinres {
namespace {

void require_positive_g(double g) {
  if (!(g > 0.0)) throw InvalidInput("g must be positive");
}

bool dominates(double left, double right, double ratio) {
  if (right == 0.0) return true;
  return left > ratio * right;
}

}  // namespace

double first_order_field(double b0, double A, double mi, double g) {
  require_positive_g(g);
  return b0 - A * mi / (g * units::constants().bohr_magneton);
}

double multiplet_width(double A, double g) {
  require_positive_g(g);
  return std::abs(A) / (g * units::constants().bohr_magneton);
}

double anisotropy_energy(double P_par, double gI_par, double B, double mi, double I) {
  if (!(I >= 0.0)) throw InvalidInput("nuclear spin must be non-negative");
  return P_par * (mi * mi - I * (I + 1.0) / 3.0) - units::constants().bohr_magneton * B * gI_par * mi;
}

HierarchyFlags hierarchy_check(const SpinSystem& sys, double B, double ratio_min) {
  if (!(B > 0.0)) throw InvalidInput("hierarchy check needs a positive field");
  const double beta = units::constants().bohr_magneton;
  const double zeeman = beta * B * sys.g_par;
  const double hyperfine = std::abs(sys.A_par);
  const double quadrupole = std::abs(sys.P_par);
  const double nuclear = beta * B * std::abs(sys.gI_par);
  return {dominates(zeeman, hyperfine, ratio_min), dominates(hyperfine, quadrupole, ratio_min),
          dominates(quadrupole, nuclear, ratio_min)};
}

}  // namespace spinres
