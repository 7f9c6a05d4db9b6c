#include "spinres/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <fstream>
#include <sstream>

#include "json_reader.hpp"
#include "spinres/json_io.hpp"
#include "spinres/units.hpp"

namespace spinres {

using nlohmann::json;
using detail::ObjectReader;
using detail::require;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 6> kCommands{{
    {Command::simulate, "simulate"},
    {Command::resonance, "resonance"},
    {Command::fit, "fit"},
    {Command::jt, "jt"},
    {Command::quadrupole, "quadrupole"},
    {Command::sensitivity, "sensitivity"},
}};

double hyperfine(ObjectReader& r, const std::string& key, double fallback = 0.0) {
  return units::hyperfine_to_joule(r.number_or(key, fallback));
}

SpinSystem parse_spin_system(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  SpinSystem s;
  s.S = r.number_or("S", 0.5);
  require(is_half_integer(s.S) && s.S > 0.0, r.path_of("S"), "must be a positive half-integer");
  s.I = r.number_or("I", 1.5);
  require(is_half_integer(s.I), r.path_of("I"), "must be a non-negative half-integer");
  s.g_par = r.number("g_par");
  require(s.g_par > 0.0, r.path_of("g_par"), "must be positive");
  s.g_perp = r.number("g_perp");
  require(s.g_perp > 0.0, r.path_of("g_perp"), "must be positive");
  s.A_par = hyperfine(r, "A_par_1e-4_cm-1");
  s.A_perp = hyperfine(r, "A_perp_1e-4_cm-1");
  s.P_par = hyperfine(r, "P_par_1e-4_cm-1");
  s.gI_par = r.number_or("gI_par", 0.0);
  r.finish();
  return s;
}

FieldGrid parse_field_grid(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  FieldGrid g;
  g.min = r.number("min_tesla");
  require(g.min >= 0.0, r.path_of("min_tesla"), "must be non-negative");
  g.max = r.number("max_tesla");
  require(g.max > g.min, r.path_of("max_tesla"), "must exceed min_tesla");
  g.points = r.integer_or("points", 2001);
  require(g.points >= 2, r.path_of("points"), "must be at least 2");
  r.finish();
  return g;
}

Lineshape parse_lineshape(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  Lineshape s;
  const std::string kind = r.opt_string("kind").value_or("lorentzian");
  if (kind == "lorentzian")
    s.kind = Lineshape::Kind::lorentzian;
  else if (kind == "gaussian")
    s.kind = Lineshape::Kind::gaussian;
  else
    throw ConfigError(r.path_of("kind"), "expected 'lorentzian' or 'gaussian'");
  s.hwhm = r.number("hwhm_hz");
  require(s.hwhm > 0.0, r.path_of("hwhm_hz"), "must be positive");
  r.finish();
  return s;
}

FreqWindow parse_freq_window(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  FreqWindow w;
  w.span_hz = r.number_or("span_hz", w.span_hz);
  require(w.span_hz >= 0.0, r.path_of("span_hz"), "must be non-negative");
  w.points = r.integer_or("points", w.points);
  require(w.points >= 1, r.path_of("points"), "must be at least 1");
  r.finish();
  return w;
}

QuadrupoleContext parse_context(ObjectReader& r, QuadrupoleContext ctx) {
  ctx.Q_barn = r.number_or("Q_barn", ctx.Q_barn);
  require(ctx.Q_barn != 0.0, r.path_of("Q_barn"), "must be non-zero");
  ctx.I = r.number_or("I", ctx.I);
  require(is_half_integer(ctx.I) && ctx.I >= 1.0, r.path_of("I"), "must be a half-integer >= 1");
  ctx.R_q = r.number_or("R_q", ctx.R_q);
  require(ctx.R_q >= 0.0 && ctx.R_q < 1.0, r.path_of("R_q"), "must lie in [0, 1)");
  return ctx;
}

ResonanceSettings parse_resonance(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ResonanceSettings s;
  s.scan_points = r.integer_or("scan_points", s.scan_points);
  require(s.scan_points >= 2, r.path_of("scan_points"), "must be at least 2");
  s.tolerance_hz = r.number_or("tolerance_hz", s.tolerance_hz);
  require(s.tolerance_hz > 0.0, r.path_of("tolerance_hz"), "must be positive");
  if (const json* pm = r.maybe("per_mi")) {
    const std::string ppath = r.path_of("per_mi");
    require(pm->is_array(), ppath, "expected an array");
    for (std::size_t i = 0; i < pm->size(); ++i) {
      ObjectReader e((*pm)[i], detail::index_path(ppath, i));
      PerMiPair p;
      p.mi = e.number("mi");
      require(is_half_integer(std::abs(p.mi)), e.path_of("mi"), "must be a half-integer");
      p.g = e.number("g");
      require(p.g > 0.0, e.path_of("g"), "must be positive");
      p.A = hyperfine(e, "A_1e-4_cm-1");
      e.finish();
      s.per_mi.push_back(p);
    }
  }
  r.finish();
  return s;
}

FitSettings parse_fit(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  FitSettings s;
  s.sign = r.integer_or("sign", s.sign);
  require(s.sign == 1 || s.sign == -1, r.path_of("sign"), "must be +1 or -1");
  s.quadrupole = parse_context(r, s.quadrupole);
  s.I = s.quadrupole.I;
  r.finish();
  return s;
}

JTSettings parse_jt(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  JTSettings s;
  s.lambda_over_delta = r.opt_number("lambda_over_delta");
  s.phi = r.number_or("phi_deg", 0.0) * std::numbers::pi / 180.0;
  require(std::abs(s.phi) <= std::numbers::pi, r.path_of("phi_deg"), "must lie in [-180, 180]");
  s.g_s = r.number_or("g_s", s.g_s);
  s.widths = r.numbers("widths");
  if (!s.widths.empty()) {
    require(s.widths.size() == 4, r.path_of("widths"), "expected four multiplet widths");
    for (std::size_t i = 0; i < 4; ++i)
      require(s.widths[i] > 0.0, detail::index_path(r.path_of("widths"), i), "must be positive");
  }
  s.width_unit = r.opt_string("width_unit").value_or("gauss");
  require(s.width_unit == "gauss" || s.width_unit == "mT" || s.width_unit == "tesla", r.path_of("width_unit"),
          "expected 'gauss', 'mT' or 'tesla'");
  r.finish();
  return s;
}

QuadrupoleSettings parse_quadrupole(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  QuadrupoleSettings s;
  if (auto p = r.opt_number("P_par_1e-4_cm-1")) s.p_par = units::hyperfine_to_joule(*p);
  for (double a : r.numbers("A_per_mi_1e-4_cm-1")) s.A_per_mi.push_back(units::hyperfine_to_joule(a));
  require(s.A_per_mi.empty() || s.A_per_mi.size() == 4, r.path_of("A_per_mi_1e-4_cm-1"),
          "expected four values ordered M_I = +3/2 ... -3/2");
  s.context = parse_context(r, s.context);
  s.r3_au = r.opt_number("r3_au");
  r.finish();
  return s;
}

LatticeParams parse_lattice(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  LatticeParams l;
  l.a = units::angstrom_to_m(r.number("a_angstrom"));
  require(l.a > 0.0, r.path_of("a_angstrom"), "must be positive");
  l.b = units::angstrom_to_m(r.number("b_angstrom"));
  require(l.b > 0.0, r.path_of("b_angstrom"), "must be positive");
  l.c = units::angstrom_to_m(r.number("c_angstrom"));
  require(l.c > 0.0, r.path_of("c_angstrom"), "must be positive");
  l.formula_units_per_cell = r.integer_or("formula_units_per_cell", 2);
  require(l.formula_units_per_cell >= 1, r.path_of("formula_units_per_cell"), "must be at least 1");
  l.sites_per_formula = r.integer_or("sites_per_formula", 1);
  require(l.sites_per_formula >= 1, r.path_of("sites_per_formula"), "must be at least 1");
  r.finish();
  return l;
}

SensitivitySettings parse_sensitivity(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  SensitivitySettings s;
  DetectionSetup& d = s.setup;
  d.temperature = r.number("temperature_k");
  require(d.temperature > 0.0, r.path_of("temperature_k"), "must be positive");
  d.agg_width = r.number_or("agg_width_hz", d.agg_width);
  require(d.agg_width >= 0.0, r.path_of("agg_width_hz"), "must be non-negative");
  d.noise_ratio = r.number_or("noise_ratio", d.noise_ratio);
  require(d.noise_ratio >= 0.0, r.path_of("noise_ratio"), "must be non-negative");
  d.electron_g = r.number_or("electron_g", d.electron_g);
  require(d.electron_g > 0.0, r.path_of("electron_g"), "must be positive");
  d.effective_spin = r.number_or("effective_spin", d.effective_spin);
  require(d.effective_spin > 0.0 && is_half_integer(d.effective_spin), r.path_of("effective_spin"),
          "must be a positive half-integer");
  if (const json* by = r.maybe("agg_width_hz_by_mode")) {
    const std::string bpath = r.path_of("agg_width_hz_by_mode");
    require(by->is_object(), bpath, "expected an object of mode label to width");
    for (auto it = by->begin(); it != by->end(); ++it) {
      const double w = ObjectReader::as_number(it.value(), detail::join_path(bpath, it.key()));
      require(w >= 0.0, detail::join_path(bpath, it.key()), "must be non-negative");
      s.agg_width_by_mode[it.key()] = w;
    }
  }
  if (const json* lat = r.maybe("lattice")) s.lattice = parse_lattice(*lat, r.path_of("lattice"));
  if (const json* ff = r.maybe("field_form")) {
    ObjectReader f(*ff, r.path_of("field_form"));
    FieldForm form;
    form.line_width = f.number("line_width_tesla");
    require(form.line_width >= 0.0, f.path_of("line_width_tesla"), "must be non-negative");
    form.resonant_field = f.number("resonant_tesla");
    require(form.resonant_field > 0.0, f.path_of("resonant_tesla"), "must be positive");
    f.finish();
    s.field_form = form;
  }
  r.finish();
  return s;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return std::filesystem::absolute(path).lexically_normal();
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "?";
}

std::optional<Command> command_from_string(std::string_view name) {
  for (const auto& [cmd, n] : kCommands)
    if (n == name) return cmd;
  return std::nullopt;
}

std::vector<double> FieldGrid::values() const {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = i + 1 == points ? max : min + (max - min) * i / (points - 1);
  return v;
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  ObjectReader r(doc, "");
  RunConfig cfg;

  const std::string name = r.string("command");
  const auto cmd = command_from_string(name);
  if (!cmd) throw ConfigError("command", "unknown command '" + name + "'");
  cfg.command = *cmd;

  if (const json* s = r.maybe("spin_system")) cfg.spin_system = parse_spin_system(*s, "spin_system");

  const json* modes = r.maybe("modes");
  const json* modes_path = r.maybe("modes_path");
  if (modes && modes_path) throw ConfigError("modes_path", "give either modes or modes_path, not both");
  if (modes) cfg.modes = modes_from_json(*modes, "modes");
  if (modes_path) {
    const auto file = resolve(base_dir, ObjectReader::as_string(*modes_path, "modes_path"));
    if (!std::filesystem::exists(file)) throw ConfigError("modes_path", "file not found: " + file.string());
    cfg.modes = load_mode_catalog(file);
  }

  if (const json* g = r.maybe("field_grid")) cfg.field_grid = parse_field_grid(*g, "field_grid");
  if (const json* d = r.maybe("field_direction")) {
    require(d->is_array() && d->size() == 3, "field_direction", "expected [x, y, z]");
    cfg.field_direction = {ObjectReader::as_number((*d)[0], "field_direction[0]"),
                           ObjectReader::as_number((*d)[1], "field_direction[1]"),
                           ObjectReader::as_number((*d)[2], "field_direction[2]")};
    require(cfg.field_direction.norm() > 0.0, "field_direction", "must be non-zero");
  }
  if (const json* l = r.maybe("lineshape")) cfg.lineshape = parse_lineshape(*l, "lineshape");
  if (const json* w = r.maybe("freq_window")) cfg.freq_window = parse_freq_window(*w, "freq_window");
  cfg.hidden_mi = r.numbers("hidden_mi");
  if (auto p = r.opt_string("dataset_path")) {
    const auto file = resolve(base_dir, *p);
    if (!std::filesystem::exists(file)) throw ConfigError("dataset_path", "file not found: " + file.string());
    cfg.dataset_path = file;
  }
  cfg.output_path = r.opt_string("output_path");

  if (const json* s = r.maybe("resonance")) cfg.resonance = parse_resonance(*s, "resonance");
  if (const json* s = r.maybe("fit")) cfg.fit = parse_fit(*s, "fit");
  if (const json* s = r.maybe("jt")) cfg.jt = parse_jt(*s, "jt");
  if (const json* s = r.maybe("quadrupole")) cfg.quadrupole = parse_quadrupole(*s, "quadrupole");
  if (const json* s = r.maybe("sensitivity")) cfg.sensitivity = parse_sensitivity(*s, "sensitivity");
  const bool has_sensitivity = doc.contains("sensitivity");
  const bool has_jt = doc.contains("jt");
  const bool has_quadrupole = doc.contains("quadrupole");
  r.finish();

  switch (cfg.command) {
    case Command::simulate:
      require(cfg.spin_system.has_value(), "spin_system", "missing required key");
      require(doc.contains("modes") || doc.contains("modes_path"), "modes", "missing required key");
      require(cfg.field_grid.has_value(), "field_grid", "missing required key");
      require(doc.contains("lineshape"), "lineshape", "missing required key");
      break;
    case Command::resonance:
      if (cfg.resonance.per_mi.empty()) {
        require(cfg.spin_system.has_value(), "spin_system", "missing required key");
        require(!cfg.modes.empty(), "modes", "missing required key");
        require(cfg.field_grid.has_value(), "field_grid", "missing required key");
      } else {
        require(!cfg.modes.empty(), "modes", "missing required key");
      }
      break;
    case Command::fit:
      require(cfg.dataset_path.has_value() || cfg.spin_system.has_value(), "dataset_path",
              "missing required key (or give spin_system for mean values)");
      break;
    case Command::jt:
      require(has_jt, "jt", "missing required key");
      require(cfg.jt.lambda_over_delta.has_value() || !cfg.jt.widths.empty(), "jt.lambda_over_delta",
              "missing required key (or give jt.widths)");
      break;
    case Command::quadrupole:
      require(has_quadrupole, "quadrupole", "missing required key");
      require(cfg.quadrupole.p_par.has_value() || !cfg.quadrupole.A_per_mi.empty(), "quadrupole.P_par_1e-4_cm-1",
              "missing required key (or give A_per_mi_1e-4_cm-1)");
      break;
    case Command::sensitivity:
      require(has_sensitivity, "sensitivity", "missing required key");
      require(!cfg.modes.empty(), "modes", "missing required key");
      break;
  }
  return cfg;
}

RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }))
    return parse_config(json::object(), base_dir);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON document: ") + e.what());
  }
  return parse_config(doc, base_dir);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), std::filesystem::absolute(path).parent_path());
}

json serialize_config(const RunConfig& cfg) {
  json doc;
  doc["command"] = std::string(to_string(cfg.command));
  if (cfg.spin_system) {
    const auto& s = *cfg.spin_system;
    doc["spin_system"] = {{"S", s.S},
                          {"I", s.I},
                          {"g_par", s.g_par},
                          {"g_perp", s.g_perp},
                          {"A_par_1e-4_cm-1", units::joule_to_hyperfine(s.A_par)},
                          {"A_perp_1e-4_cm-1", units::joule_to_hyperfine(s.A_perp)},
                          {"P_par_1e-4_cm-1", units::joule_to_hyperfine(s.P_par)},
                          {"gI_par", s.gI_par}};
  }
  doc["modes"] = modes_to_json(cfg.modes);
  if (cfg.field_grid)
    doc["field_grid"] = {
        {"min_tesla", cfg.field_grid->min}, {"max_tesla", cfg.field_grid->max}, {"points", cfg.field_grid->points}};
  doc["field_direction"] = {cfg.field_direction.bx, cfg.field_direction.by, cfg.field_direction.bz};
  doc["lineshape"] = {{"kind", cfg.lineshape.kind == Lineshape::Kind::gaussian ? "gaussian" : "lorentzian"},
                      {"hwhm_hz", cfg.lineshape.hwhm}};
  doc["freq_window"] = {{"span_hz", cfg.freq_window.span_hz}, {"points", cfg.freq_window.points}};
  doc["hidden_mi"] = cfg.hidden_mi;
  if (cfg.dataset_path) doc["dataset_path"] = cfg.dataset_path->string();
  if (cfg.output_path) doc["output_path"] = *cfg.output_path;

  json per_mi = json::array();
  for (const auto& p : cfg.resonance.per_mi)
    per_mi.push_back({{"mi", p.mi}, {"g", p.g}, {"A_1e-4_cm-1", units::joule_to_hyperfine(p.A)}});
  doc["resonance"] = {
      {"scan_points", cfg.resonance.scan_points}, {"tolerance_hz", cfg.resonance.tolerance_hz}, {"per_mi", per_mi}};

  const auto& fq = cfg.fit.quadrupole;
  doc["fit"] = {{"sign", cfg.fit.sign}, {"Q_barn", fq.Q_barn}, {"I", fq.I}, {"R_q", fq.R_q}};

  json jt = {{"phi_deg", cfg.jt.phi * 180.0 / std::numbers::pi},
             {"g_s", cfg.jt.g_s},
             {"widths", cfg.jt.widths},
             {"width_unit", cfg.jt.width_unit}};
  if (cfg.jt.lambda_over_delta) jt["lambda_over_delta"] = *cfg.jt.lambda_over_delta;
  doc["jt"] = jt;

  const auto& q = cfg.quadrupole;
  json quad = {{"Q_barn", q.context.Q_barn}, {"I", q.context.I}, {"R_q", q.context.R_q}};
  if (q.p_par) quad["P_par_1e-4_cm-1"] = units::joule_to_hyperfine(*q.p_par);
  if (!q.A_per_mi.empty()) {
    json a = json::array();
    for (double v : q.A_per_mi) a.push_back(units::joule_to_hyperfine(v));
    quad["A_per_mi_1e-4_cm-1"] = a;
  }
  if (q.r3_au) quad["r3_au"] = *q.r3_au;
  doc["quadrupole"] = quad;

  const auto& se = cfg.sensitivity;
  json sens = {{"temperature_k", se.setup.temperature},
               {"agg_width_hz", se.setup.agg_width},
               {"noise_ratio", se.setup.noise_ratio},
               {"electron_g", se.setup.electron_g},
               {"effective_spin", se.setup.effective_spin}};
  if (!se.agg_width_by_mode.empty()) sens["agg_width_hz_by_mode"] = se.agg_width_by_mode;
  if (se.lattice)
    sens["lattice"] = {{"a_angstrom", se.lattice->a * 1e10},
                       {"b_angstrom", se.lattice->b * 1e10},
                       {"c_angstrom", se.lattice->c * 1e10},
                       {"formula_units_per_cell", se.lattice->formula_units_per_cell},
                       {"sites_per_formula", se.lattice->sites_per_formula}};
  if (se.field_form)
    sens["field_form"] = {{"line_width_tesla", se.field_form->line_width},
                          {"resonant_tesla", se.field_form->resonant_field}};
  doc["sensitivity"] = sens;
  return doc;
}

}  // namespace spinres
