#include "spinres/run.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "spinres/errors.hpp"
#include "spinres/jahn_teller.hpp"
#include "spinres/json_io.hpp"
#include "spinres/perturbation.hpp"
#include "spinres/units.hpp"

namespace spinres {

using nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

RunResult run_simulate(const RunConfig& cfg, const RunOptions& opts) {
  MapOptions mo;
  mo.direction = cfg.field_direction;
  mo.lineshape = cfg.lineshape;
  mo.span_hz = cfg.freq_window.span_hz;
  mo.freq_points = cfg.freq_window.points;
  mo.hidden_mi = cfg.hidden_mi;
  mo.threads = opts.threads;
  mo.resonance.scan_points = cfg.resonance.scan_points;
  mo.resonance.tolerance_hz = cfg.resonance.tolerance_hz;
  const auto grid = cfg.field_grid->values();
  const auto maps = spectrum_map(*cfg.spin_system, cfg.modes, grid, mo);

  RunResult out;
  std::ostringstream csv;
  write_map_csv(csv, maps);
  out.artifact = csv.str();

  std::ostringstream s;
  s << std::fixed;
  for (const auto& m : maps) {
    s << m.mode.label << " @ " << std::setprecision(6) << m.mode.freq / 1e9 << " GHz: " << m.crossings.size()
      << " crossing(s)\n";
    for (const auto& l : m.crossings)
      s << "  M_I " << std::setw(5) << std::setprecision(1) << l.mi << "  B = " << std::setprecision(6) << l.b_center
        << " T  intensity " << std::setprecision(4) << l.intensity << "\n";
  }
  out.summary = s.str();
  return out;
}

RunResult run_resonance(const RunConfig& cfg) {
  std::ostringstream csv, s;
  s << std::fixed;
  if (cfg.spin_system && cfg.field_grid) {
    ResonanceOptions ro;
    ro.scan_points = cfg.resonance.scan_points;
    ro.tolerance_hz = cfg.resonance.tolerance_hz;
    csv << "mode,freq_hz,mi,b_center_tesla,line_freq_hz,intensity,lower,upper\n";
    s << std::setw(16) << "mode" << std::setw(8) << "M_I" << std::setw(14) << "B/T" << std::setw(12) << "intensity\n";
    for (const auto& m : cfg.modes) {
      const auto lines =
          resonance_fields(*cfg.spin_system, m.freq, {cfg.field_grid->min, cfg.field_grid->max}, cfg.field_direction, ro);
      for (const auto& l : lines) {
        csv << m.label << ',' << format_number(m.freq) << ',' << format_number(l.mi) << ','
            << format_number(l.b_center) << ',' << format_number(l.frequency) << ',' << format_number(l.intensity)
            << ',' << l.lower << ',' << l.upper << '\n';
        s << std::setw(16) << m.label << std::setw(8) << std::setprecision(1) << l.mi << std::setw(14)
          << std::setprecision(6) << l.b_center << std::setw(12) << std::setprecision(4) << l.intensity << "\n";
      }
    }
  }
  if (!cfg.resonance.per_mi.empty()) {
    const double h = units::constants().planck_h;
    const double beta = units::constants().bohr_magneton;
    if (!csv.str().empty()) csv << '\n';
    csv << "mode,mi,g,A_1e-4_cm-1,b_line_tesla,width_mT\n";
    s << std::setw(16) << "mode" << std::setw(8) << "M_I" << std::setw(10) << "g" << std::setw(14) << "A/1e-4cm-1"
      << std::setw(12) << "B/T" << std::setw(12) << "width/mT\n";
    for (const auto& m : cfg.modes) {
      for (const auto& p : cfg.resonance.per_mi) {
        const double b_line = h * m.freq / (p.g * beta);
        const double width = multiplet_width(p.A, p.g);
        csv << m.label << ',' << format_number(p.mi) << ',' << format_number(p.g) << ','
            << format_number(units::joule_to_hyperfine(p.A)) << ',' << format_number(b_line) << ','
            << format_number(width * 1e3) << '\n';
        s << std::setw(16) << m.label << std::setw(8) << std::setprecision(1) << p.mi << std::setw(10)
          << std::setprecision(3) << p.g << std::setw(14) << std::setprecision(1) << units::joule_to_hyperfine(p.A)
          << std::setw(12) << std::setprecision(4) << b_line << std::setw(12) << std::setprecision(1) << width * 1e3
          << "\n";
      }
    }
  }
  return {csv.str(), s.str()};
}

RunResult run_fit(const RunConfig& cfg) {
  json out = json::object();
  std::string table;
  if (cfg.dataset_path) {
    ExtractionOptions eo;
    eo.sign = cfg.fit.sign;
    eo.I = cfg.fit.I;
    eo.quadrupole = cfg.fit.quadrupole;
    eo.spin_system = cfg.spin_system;
    const auto result = extract(load_dataset(*cfg.dataset_path), eo);
    out["extraction"] = result_to_json(result);
    table = result_table(result);
  }
  if (cfg.spin_system) {
    const auto& s = *cfg.spin_system;
    const auto [g, A] = mean_values(s.g_par, s.g_perp, s.A_par, s.A_perp);
    out["means"] = {{"mean_g", g}, {"mean_A_1e-4_cm-1", units::joule_to_hyperfine(A)}};
    std::ostringstream t;
    t << std::fixed << "(g_par + 2 g_perp)/3 = " << std::setprecision(4) << g << "\n"
      << "(A_par + 2 A_perp)/3 = " << std::setprecision(2) << units::joule_to_hyperfine(A) << " 1e-4 cm-1\n";
    table += t.str();
  }
  return {dump(out), table};
}

RunResult run_jt(const RunConfig& cfg) {
  json out = json::object();
  std::ostringstream s;
  s << std::fixed << std::setprecision(4);
  const auto& c = cfg.jt;
  if (c.lambda_over_delta) {
    const auto g = jt::jt_gfactors({*c.lambda_over_delta, c.phi, c.g_s});
    out["gfactors"] = {{"g1", g.g1}, {"g2", g.g2}, {"g3", g.g3}, {"phi_deg", c.phi * 180.0 / std::numbers::pi}};
    const auto dg = jt::delta_g(*c.lambda_over_delta);
    out["delta_g_formula"] = {
        {"parallel", dg.parallel}, {"perpendicular", dg.perpendicular}, {"above_free_electron", dg.above_free_electron}};
    s << "g1 = " << g.g1 << "  g2 = " << g.g2 << "  g3 = " << g.g3 << "\n";
    s << "delta g (8|l/D|, 2|l/D|) = (" << dg.parallel << ", " << dg.perpendicular << ")\n";
    if (g.g3 != g.g2) {
      const auto r = jt::jt_ratio(g.g1, g.g2, g.g3);
      out["ratio"] = {{"R", r.R}, {"elongated", r.elongated}};
      s << "R = " << r.R << (r.elongated ? "  (elongation)" : "") << "\n";
    } else {
      out["ratio"] = nullptr;
      s << "R undefined (g3 == g2)\n";
    }
  }
  if (cfg.spin_system) {
    const double dpar = cfg.spin_system->g_par - c.g_s;
    const double dperp = cfg.spin_system->g_perp - c.g_s;
    out["delta_g_from_spin_system"] = {{"parallel", dpar},
                                       {"perpendicular", dperp},
                                       {"lambda_over_delta", jt::lambda_over_delta_from_gpar(cfg.spin_system->g_par, c.g_s)}};
    s << "delta g from spin system = (" << dpar << ", " << dperp << ")\n";
  }
  if (!c.widths.empty()) {
    const auto m = jt::mixing_angle_from_widths(c.widths);
    out["mixing"] = {{"phi_deg", m.phi * 180.0 / std::numbers::pi},
                     {"phi_rad", m.phi},
                     {"admixture", m.admixture},
                     {"widths", c.widths},
                     {"width_unit", c.width_unit}};
    s << "phi = " << m.phi * 180.0 / std::numbers::pi << " deg  admixture = " << std::setprecision(3)
      << 100.0 * m.admixture << " %\n";
  }
  return {dump(out), s.str()};
}

RunResult run_quadrupole(const RunConfig& cfg) {
  const auto& q = cfg.quadrupole;
  json out = json::object();
  std::ostringstream s;
  s << std::fixed << std::setprecision(3);
  double p = 0.0;
  if (q.p_par) {
    p = *q.p_par;
    out["source"] = "input";
  } else {
    p = quadrupole_from_multiplet(q.A_per_mi);
    out["source"] = "multiplet";
    out["convention"] = "P = (|A(-3/2) - A(-1/2)| - |A(+1/2) - A(+3/2)|) / 2";
  }
  const auto r3 = r3_from_P(p, q.context);
  out["P_par_1e-4_cm-1"] = units::joule_to_hyperfine(p);
  out["r3_q_au"] = r3.r3_q;
  out["r3_unscreened_au"] = r3.r3_unscreened;
  out["context"] = {{"Q_barn", q.context.Q_barn}, {"I", q.context.I}, {"R_q", q.context.R_q}};
  s << "P_par = " << units::joule_to_hyperfine(p) << " 1e-4 cm-1\n"
    << "<r_q^-3> = " << r3.r3_q << " a.u.  <r^-3> = " << r3.r3_unscreened << " a.u.\n";
  if (q.r3_au) {
    const double pf = P_from_r3(*q.r3_au, q.context);
    out["forward"] = {{"r3_au", *q.r3_au}, {"P_par_1e-4_cm-1", units::joule_to_hyperfine(pf)}};
    s << "forward: <r_q^-3> = " << *q.r3_au << " a.u. -> P_par = " << units::joule_to_hyperfine(pf)
      << " 1e-4 cm-1\n";
  }
  return {dump(out), s.str()};
}

RunResult run_sensitivity(const RunConfig& cfg) {
  const auto& se = cfg.sensitivity;
  json rows = json::array();
  std::ostringstream s;
  s << std::setw(16) << "mode" << std::setw(12) << "f/GHz" << std::setw(10) << "Q_L" << std::setw(12) << "dw/kHz"
    << std::setw(14) << "N_min" << std::setw(12) << "ppb" << "\n";
  for (const auto& m : cfg.modes) {
    DetectionSetup setup = se.setup;
    if (auto it = se.agg_width_by_mode.find(m.label); it != se.agg_width_by_mode.end()) setup.agg_width = it->second;
    const double n = n_min(m, setup);
    json row = {{"mode", m.label},
                {"freq_hz", m.freq},
                {"q_loaded", m.q_loaded},
                {"mode_volume_m3", m.mode_volume},
                {"agg_width_hz", setup.agg_width},
                {"n_min", n}};
    s << std::setw(16) << m.label << std::fixed << std::setw(12) << std::setprecision(3) << m.freq / 1e9
      << std::setw(10) << std::setprecision(0) << m.q_loaded << std::setw(12) << std::setprecision(1)
      << setup.agg_width / 1e3 << std::scientific << std::setw(14) << std::setprecision(3) << n;
    if (se.lattice) {
      const double ppb = concentration_ppb(n, m.mode_volume, *se.lattice);
      row["ppb"] = ppb;
      s << std::fixed << std::setw(12) << std::setprecision(4) << ppb;
    }
    if (se.field_form) row["n_min_field_form"] = n_min_field_form(m, setup, se.field_form->line_width, se.field_form->resonant_field);
    s << "\n";
    rows.push_back(row);
  }
  json out = {{"scenarios", rows}, {"spin_scale", spin_scale(se.setup.effective_spin)}};
  return {dump(out), s.str()};
}

}  // namespace

RunResult run(const RunConfig& cfg, const RunOptions& opts) {
  switch (cfg.command) {
    case Command::simulate:
      return run_simulate(cfg, opts);
    case Command::resonance:
      return run_resonance(cfg);
    case Command::fit:
      return run_fit(cfg);
    case Command::jt:
      return run_jt(cfg);
    case Command::quadrupole:
      return run_quadrupole(cfg);
    case Command::sensitivity:
      return run_sensitivity(cfg);
  }
  throw InvalidInput("unknown command");
}

}  // namespace spinres
