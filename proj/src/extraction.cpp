#include "spinres/extraction.hpp"

#include <algorithm>
#include <cmath>

#include "spinres/errors.hpp"
#include "spinres/units.hpp"

namespace spinres {

void MultipletDataset::normalize() {
  if (!(mode_freq > 0.0)) throw InvalidInput("dataset mode frequency must be positive");
  if (entries.empty()) throw InvalidInput("dataset has no entries");
  for (const auto& e : entries) {
    if (!(e.b_line > 0.0)) throw InvalidInput("line fields must be positive");
    if (!(e.width > 0.0)) throw InvalidInput("multiplet widths must be positive");
    if (!is_half_integer(std::abs(e.mi))) throw InvalidInput("mi must be a half-integer");
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const MultipletEntry& a, const MultipletEntry& b) { return a.mi > b.mi; });
}

bool MultipletDataset::complete(double I) const {
  const auto expected = static_cast<std::size_t>(std::lround(2.0 * I)) + 1;
  if (entries.size() != expected) return false;
  for (std::size_t k = 0; k < expected; ++k)
    if (std::abs(entries[k].mi - (I - static_cast<double>(k))) > 1e-9) return false;
  return true;
}

double g_from_line(double freq, double b) {
  if (!(freq > 0.0) || !(b > 0.0)) throw InvalidInput("frequency and field must be positive");
  const auto& c = units::constants();
  return c.planck_h * freq / (c.bohr_magneton * b);
}

double A_from_width(double g, double width, int sign) {
  if (!(g > 0.0)) throw InvalidInput("g must be positive");
  if (!(width >= 0.0)) throw InvalidInput("width must be non-negative");
  return (sign < 0 ? -1.0 : 1.0) * g * units::constants().bohr_magneton * width;
}

BohrFit fit_bohr_magneton(std::span<const FitPoint> points) {
  if (points.size() < 2) throw InvalidInput("Bohr-magneton fit needs at least two points");
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : points) {
    const double x = p.g * p.width;
    sxy += x * std::abs(p.A);
    sxx += x * x;
  }
  if (sxx == 0.0) throw NumericError("Bohr-magneton fit is degenerate: every g * width is zero");
  BohrFit fit;
  fit.beta = sxy / sxx;
  const double codata = units::constants().bohr_magneton;
  fit.rel_err = (fit.beta - codata) / codata;
  for (const auto& p : points) fit.residuals.push_back(std::abs(p.A) - fit.beta * p.g * p.width);
  return fit;
}

double quadrupole_from_multiplet(std::span<const double> A_per_mi) {
  if (A_per_mi.size() != 4) throw InvalidInput("P_par extraction needs exactly four hyperfine constants");
  const double d_a = A_per_mi[3] - A_per_mi[2];
  const double d_minus_a = A_per_mi[1] - A_per_mi[0];
  return 0.5 * (std::abs(d_a) - std::abs(d_minus_a));
}

void QuadrupoleContext::validate() const {
  if (Q_barn == 0.0 || !std::isfinite(Q_barn)) throw InvalidInput("quadrupole moment Q must be non-zero");
  if (!is_half_integer(I) || I * (2.0 * I - 1.0) == 0.0)
    throw InvalidInput("quadrupole coupling needs a nuclear spin I >= 1");
  if (!(R_q >= 0.0 && R_q < 1.0)) throw InvalidInput("R_q must lie in [0, 1)");
}

namespace {
// P_par per unit <r_q^-3> in atomic units.
double p_per_r3(const QuadrupoleContext& ctx) {
  const auto& c = units::constants();
  const double a0_cubed = c.bohr_radius_a0 * c.bohr_radius_a0 * c.bohr_radius_a0;
  return -3.0 * c.coulomb_e2 * units::barn_to_m2(ctx.Q_barn) / (7.0 * ctx.I * (2.0 * ctx.I - 1.0) * a0_cubed);
}
}  // namespace

R3Result r3_from_P(double p_par, const QuadrupoleContext& ctx) {
  ctx.validate();
  const double r3 = p_par / p_per_r3(ctx);
  return {r3, r3 / (1.0 - ctx.R_q)};
}

double P_from_r3(double r3_q_au, const QuadrupoleContext& ctx) {
  ctx.validate();
  return r3_q_au * p_per_r3(ctx);
}

std::pair<double, double> mean_values(double g_par, double g_perp, double A_par, double A_perp) {
  return {(g_par + 2.0 * g_perp) / 3.0, (A_par + 2.0 * A_perp) / 3.0};
}

ExtractionResult extract(const MultipletDataset& input, const ExtractionOptions& opts) {
  MultipletDataset data = input;
  data.normalize();

  ExtractionResult out;
  out.mode_freq = data.mode_freq;
  out.complete = data.complete(opts.I);
  out.p_par_convention =
      "P = (|A(-3/2) - A(-1/2)| - |A(+1/2) - A(+3/2)|) / 2 over per-M_I hyperfine constants";

  bool all_measured = true;
  std::vector<FitPoint> points;
  double sum_g = 0.0, sum_A = 0.0;
  for (const auto& e : data.entries) {
    PerMiResult r;
    r.mi = e.mi;
    r.b_line = e.b_line;
    r.width = e.width;
    r.g = g_from_line(data.mode_freq, e.b_line);
    r.A = A_from_width(r.g, e.width, opts.sign);
    r.A_measured = e.A_measured;
    all_measured = all_measured && e.A_measured.has_value();
    sum_g += r.g;
    sum_A += r.A;
    out.per_mi.push_back(r);
  }
  out.beta_fit_uses_measured_A = all_measured;
  for (const auto& r : out.per_mi) points.push_back({all_measured ? *r.A_measured : r.A, r.g, r.width});
  if (points.size() >= 2) out.beta_fit = fit_bohr_magneton(points);

  out.per_mi_average_g = sum_g / static_cast<double>(out.per_mi.size());
  out.per_mi_average_A = sum_A / static_cast<double>(out.per_mi.size());

  if (out.per_mi.size() == 4 && out.complete) {
    std::vector<double> a;
    for (const auto& r : out.per_mi) a.push_back(all_measured ? *r.A_measured : r.A);
    out.p_par = quadrupole_from_multiplet(a);
    out.r3 = r3_from_P(*out.p_par, opts.quadrupole);
  }

  if (opts.spin_system) {
    const auto [g, A] = mean_values(opts.spin_system->g_par, opts.spin_system->g_perp,
                                    opts.spin_system->A_par, opts.spin_system->A_perp);
    out.mean_g = g;
    out.mean_A = A;
  }
  return out;
}

}  // namespace spinres
