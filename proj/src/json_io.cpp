#include "spinres/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json_reader.hpp"
#include "spinres/units.hpp"

namespace spinres {

using nlohmann::json;
using detail::ObjectReader;
using detail::require;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(file.string(), std::string("malformed JSON: ") + e.what());
  }
}

ResonatorMode mode_from_json(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ResonatorMode m;
  m.label = r.string("label");
  m.freq = r.number("freq_ghz") * 1e9;
  require(m.freq > 0.0, r.path_of("freq_ghz"), "must be positive");
  m.q_loaded = r.number("q_loaded");
  require(m.q_loaded > 0.0, r.path_of("q_loaded"), "must be positive");
  m.mode_volume = r.number("mode_volume_m3");
  require(m.mode_volume > 0.0, r.path_of("mode_volume_m3"), "must be positive");
  m.filling_factor = r.number_or("filling_factor", 1.0);
  require(m.filling_factor > 0.0 && m.filling_factor <= 1.0, r.path_of("filling_factor"), "must lie in (0, 1]");
  r.finish();
  return m;
}

}  // namespace

std::vector<ResonatorMode> modes_from_json(const json& doc, const std::string& path) {
  require(doc.is_array(), path, "expected an array of mode records");
  std::vector<ResonatorMode> modes;
  for (std::size_t i = 0; i < doc.size(); ++i) modes.push_back(mode_from_json(doc[i], detail::index_path(path, i)));
  return modes;
}

std::vector<ResonatorMode> load_mode_catalog(const std::filesystem::path& file) {
  return modes_from_json(read_json_file(file), file.filename().string());
}

json modes_to_json(std::span<const ResonatorMode> modes) {
  json arr = json::array();
  for (const auto& m : modes) {
    arr.push_back({{"label", m.label},
                   {"freq_ghz", m.freq / 1e9},
                   {"q_loaded", m.q_loaded},
                   {"mode_volume_m3", m.mode_volume},
                   {"filling_factor", m.filling_factor}});
  }
  return arr;
}

MultipletDataset dataset_from_json(const json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  MultipletDataset d;
  d.mode_freq = r.number("mode_freq_hz");
  require(d.mode_freq > 0.0, r.path_of("mode_freq_hz"), "must be positive");
  const json& entries = r.raw("entries");
  const std::string epath = r.path_of("entries");
  require(entries.is_array() && !entries.empty(), epath, "expected a non-empty array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ObjectReader e(entries[i], detail::index_path(epath, i));
    MultipletEntry m;
    m.mi = e.number("mi");
    require(is_half_integer(std::abs(m.mi)), e.path_of("mi"), "must be a half-integer");
    m.b_line = e.number("b_line_tesla");
    require(m.b_line > 0.0, e.path_of("b_line_tesla"), "must be positive");
    m.width = e.number("width_tesla");
    require(m.width > 0.0, e.path_of("width_tesla"), "must be positive");
    if (auto a = e.opt_number("A_1e-4_cm-1")) m.A_measured = units::hyperfine_to_joule(*a);
    e.finish();
    d.entries.push_back(m);
  }
  r.finish();
  d.normalize();
  return d;
}

MultipletDataset load_dataset(const std::filesystem::path& file) {
  return dataset_from_json(read_json_file(file), file.filename().string());
}

json dataset_to_json(const MultipletDataset& data) {
  json entries = json::array();
  for (const auto& e : data.entries) {
    json j = {{"mi", e.mi}, {"b_line_tesla", e.b_line}, {"width_tesla", e.width}};
    if (e.A_measured) j["A_1e-4_cm-1"] = units::joule_to_hyperfine(*e.A_measured);
    entries.push_back(j);
  }
  return {{"mode_freq_hz", data.mode_freq}, {"entries", entries}};
}

json result_to_json(const ExtractionResult& r) {
  json per_mi = json::array();
  for (const auto& p : r.per_mi) {
    json j = {{"mi", p.mi},
              {"g", p.g},
              {"A_1e-4_cm-1", units::joule_to_hyperfine(p.A)},
              {"A_joule", p.A},
              {"b_line_tesla", p.b_line},
              {"width_tesla", p.width}};
    if (p.A_measured) j["A_measured_1e-4_cm-1"] = units::joule_to_hyperfine(*p.A_measured);
    per_mi.push_back(j);
  }
  json out = {{"mode_freq_hz", r.mode_freq},
              {"complete_multiplet", r.complete},
              {"per_mi", per_mi},
              {"beta_fit_j_per_t", r.beta_fit.beta},
              {"beta_rel_err", r.beta_fit.rel_err},
              {"beta_fit_residuals_j", r.beta_fit.residuals},
              {"beta_fit_uses_measured_A", r.beta_fit_uses_measured_A},
              {"per_mi_average_g", r.per_mi_average_g},
              {"per_mi_average_A_1e-4_cm-1", units::joule_to_hyperfine(r.per_mi_average_A)},
              {"p_par_convention", r.p_par_convention}};
  if (r.p_par) out["p_par_1e-4_cm-1"] = units::joule_to_hyperfine(*r.p_par);
  if (r.r3) {
    out["r3_q_au"] = r.r3->r3_q;
    out["r3_unscreened_au"] = r.r3->r3_unscreened;
  }
  if (r.mean_g) out["mean_g"] = *r.mean_g;
  if (r.mean_A) out["mean_A_1e-4_cm-1"] = units::joule_to_hyperfine(*r.mean_A);
  return out;
}

std::string result_table(const ExtractionResult& r) {
  std::ostringstream os;
  os << std::fixed;
  os << "mode frequency " << std::setprecision(6) << r.mode_freq / 1e9 << " GHz"
     << (r.complete ? "" : "  (incomplete multiplet)") << "\n";
  os << std::setw(6) << "M_I" << std::setw(10) << "g" << std::setw(14) << "width/mT" << std::setw(16) << "A/1e-4cm-1"
     << std::setw(18) << "A_meas/1e-4cm-1" << "\n";
  for (const auto& p : r.per_mi) {
    os << std::setw(6) << std::setprecision(1) << p.mi << std::setw(10) << std::setprecision(4) << p.g
       << std::setw(14) << std::setprecision(3) << p.width * 1e3 << std::setw(16) << std::setprecision(2)
       << units::joule_to_hyperfine(p.A) << std::setw(18);
    if (p.A_measured)
      os << units::joule_to_hyperfine(*p.A_measured);
    else
      os << "-";
    os << "\n";
  }
  os << std::scientific << std::setprecision(4);
  os << "beta fit     " << r.beta_fit.beta << " J/T  (" << std::fixed << std::setprecision(3)
     << 100.0 * r.beta_fit.rel_err << " % vs CODATA)\n";
  if (r.p_par) os << "P_par        " << std::setprecision(2) << units::joule_to_hyperfine(*r.p_par) << " 1e-4 cm-1\n";
  if (r.r3)
    os << "<r_q^-3>     " << std::setprecision(3) << r.r3->r3_q << " a.u.  (unscreened " << r.r3->r3_unscreened
       << ")\n";
  if (r.mean_g) os << "mean g       " << std::setprecision(4) << *r.mean_g << "\n";
  if (r.mean_A) os << "mean A       " << std::setprecision(2) << units::joule_to_hyperfine(*r.mean_A) << " 1e-4 cm-1\n";
  return os.str();
}

void write_map_csv(std::ostream& out, std::span<const SpectrumMap> maps) {
  for (const auto& m : maps) {
    out << "# mode=" << m.mode.label << "\n";
    out << "# freq_hz=" << format_number(m.mode.freq) << "\n";
    out << "# q_loaded=" << format_number(m.mode.q_loaded) << "\n";
    out << "# mode_volume_m3=" << format_number(m.mode.mode_volume) << "\n";
    out << "# filling_factor=" << format_number(m.mode.filling_factor) << "\n";
    out << "# field_points=" << m.field_axis.size() << "\n";
    out << "# freq_points=" << m.freq_axis.size() << "\n";
    out << "B_tesla,f_hz,response\n";
    for (std::size_t i = 0; i < m.field_axis.size(); ++i)
      for (std::size_t j = 0; j < m.freq_axis.size(); ++j)
        out << format_number(m.field_axis[i]) << ',' << format_number(m.freq_axis[j]) << ','
            << format_number(m.at(i, j)) << '\n';
  }
}

}  // namespace spinres
