#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinres/spin_algebra.hpp"

namespace spinres {

// Inverse analysis of a measured hyperfine multiplet.

struct MultipletEntry {
  double mi = 0.0;
  double b_line = 0.0;  // T
  double width = 0.0;   // T
  /// Independently measured hyperfine constant (J), when available.
  std::optional<double> A_measured;

  friend bool operator==(const MultipletEntry&, const MultipletEntry&) = default;
};

struct MultipletDataset {
  double mode_freq = 0.0;  // Hz
  std::vector<MultipletEntry> entries;

  /// Sorts entries by descending mi and checks positivity; throws InvalidInput.
  void normalize();
  /// True when every M_I of a spin-I nucleus is present exactly once.
  bool complete(double I) const;

  friend bool operator==(const MultipletDataset&, const MultipletDataset&) = default;
};

/// g = h f / (beta b).
double g_from_line(double freq, double b);

/// A = sign * g * beta * width, in joules.
double A_from_width(double g, double width, int sign = -1);

struct FitPoint {
  double A = 0.0;  // J; the magnitude is fitted
  double g = 0.0;
  double width = 0.0;  // T
};

struct BohrFit {
  double beta = 0.0;              // J/T
  double rel_err = 0.0;           // against CODATA
  std::vector<double> residuals;  // |A| - beta * g * width, J
};

/// Least-squares slope through the origin of |A| against g * width.
/// Throws InvalidInput for fewer than two points, NumericError when every
/// abscissa is zero.
BohrFit fit_bohr_magneton(std::span<const FitPoint> points);

/// P_par from four per-M_I hyperfine constants ordered mi = +3/2 ... -3/2:
///   D_a  = A(-3/2) - A(-1/2),  D_-a = A(+1/2) - A(+3/2),
///   P    = (|D_a| - |D_-a|) / 2.
/// Any arithmetic progression gives exactly zero.
double quadrupole_from_multiplet(std::span<const double> A_per_mi);

struct QuadrupoleContext {
  double Q_barn = -0.211;  // 63Cu
  double I = 1.5;
  double R_q = 0.15;

  void validate() const;

  friend bool operator==(const QuadrupoleContext&, const QuadrupoleContext&) = default;
};

struct R3Result {
  double r3_q = 0.0;          // <r_q^-3> in a0^-3
  double r3_unscreened = 0.0;  // r3_q / (1 - R_q)
};

/// Inverts P = -3 e^2 Q <r_q^-3> / (7 I (2I - 1)) with e^2 = e^2 / (4 pi eps0).
R3Result r3_from_P(double p_par, const QuadrupoleContext& ctx);

/// The forward relation: P_par (J) for a given <r_q^-3> in atomic units.
double P_from_r3(double r3_q_au, const QuadrupoleContext& ctx);

/// ((g_par + 2 g_perp) / 3, (A_par + 2 A_perp) / 3).
std::pair<double, double> mean_values(double g_par, double g_perp, double A_par, double A_perp);

struct PerMiResult {
  double mi = 0.0;
  double g = 0.0;
  double A = 0.0;  // J, from the line width
  std::optional<double> A_measured;
  double width = 0.0;
  double b_line = 0.0;
};

struct ExtractionOptions {
  int sign = -1;
  double I = 1.5;
  QuadrupoleContext quadrupole;
  /// When present, its axial means are reported alongside the per-M_I averages.
  std::optional<SpinSystem> spin_system;
};

struct ExtractionResult {
  double mode_freq = 0.0;
  bool complete = false;
  std::vector<PerMiResult> per_mi;
  BohrFit beta_fit;
  bool beta_fit_uses_measured_A = false;
  std::optional<double> p_par;  // J, needs exactly four lines
  std::optional<R3Result> r3;
  double per_mi_average_g = 0.0;
  double per_mi_average_A = 0.0;  // J
  std::optional<double> mean_g;   // (g_par + 2 g_perp) / 3 of the supplied spin system
  std::optional<double> mean_A;   // J
  std::string p_par_convention;
};

/// Per-line g and A, Bohr-magneton regression, P_par and <r_q^-3>. The fit uses
/// measured A values when every entry carries one; otherwise the width-derived
/// A values, which reproduce CODATA beta by construction.
ExtractionResult extract(const MultipletDataset& data, const ExtractionOptions& opts = {});

}  // namespace spinres
