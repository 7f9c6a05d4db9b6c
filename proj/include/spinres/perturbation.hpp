#pragma once

#include <array>

#include "spinres/spin_algebra.hpp"

namespace spinres {

/// First-order hyperfine line position: b0 - A * mi / (g * beta).
/// Pass g = g_e for the textbook form or the measured g for per-line analysis.
double first_order_field(double b0, double A, double mi, double g);

/// Field spacing of adjacent hyperfine lines, |A| / (g * beta).
double multiplet_width(double A, double g);

/// Nuclear anisotropy energy P (mi^2 - I(I+1)/3) - beta B gI mi, in joules.
double anisotropy_energy(double P_par, double gI_par, double B, double mi, double I);

/// One flag per "much greater than" link of
///   beta B g_par >> |A_par| >> |P_par| >> beta B |gI_par|
/// A flag is true when the left side exceeds ratio_min times the right side;
/// a zero right side always satisfies its link.
struct HierarchyFlags {
  bool zeeman_over_hyperfine = false;
  bool hyperfine_over_quadrupole = false;
  bool quadrupole_over_nuclear_zeeman = false;

  bool all() const { return zeeman_over_hyperfine && hyperfine_over_quadrupole && quadrupole_over_nuclear_zeeman; }
};

HierarchyFlags hierarchy_check(const SpinSystem& sys, double B, double ratio_min = 10.0);

}  // namespace spinres
