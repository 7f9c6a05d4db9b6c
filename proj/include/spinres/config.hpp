#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spinres/eigen_transitions.hpp"
#include "spinres/extraction.hpp"
#include "spinres/sensitivity.hpp"
#include "spinres/spin_algebra.hpp"
#include "spinres/units.hpp"

namespace spinres {

enum class Command { simulate, resonance, fit, jt, quadrupole, sensitivity };

std::string_view to_string(Command c);
std::optional<Command> command_from_string(std::string_view name);

struct FieldGrid {
  double min = 0.0;  // T
  double max = 0.0;
  int points = 2;

  std::vector<double> values() const;

  friend bool operator==(const FieldGrid&, const FieldGrid&) = default;
};

struct FreqWindow {
  double span_hz = 2e6;
  int points = 201;

  friend bool operator==(const FreqWindow&, const FreqWindow&) = default;
};

struct PerMiPair {
  double mi = 0.0;
  double g = 0.0;
  double A = 0.0;  // J

  friend bool operator==(const PerMiPair&, const PerMiPair&) = default;
};

struct ResonanceSettings {
  int scan_points = 2000;
  double tolerance_hz = 1.0;
  std::vector<PerMiPair> per_mi;

  friend bool operator==(const ResonanceSettings&, const ResonanceSettings&) = default;
};

struct FitSettings {
  int sign = -1;
  double I = 1.5;
  QuadrupoleContext quadrupole;

  friend bool operator==(const FitSettings&, const FitSettings&) = default;
};

struct JTSettings {
  std::optional<double> lambda_over_delta;
  double phi = 0.0;  // rad (degrees in the document)
  double g_s = units::constants().free_electron_g;
  std::vector<double> widths;  // as given, any single unit
  std::string width_unit = "gauss";

  friend bool operator==(const JTSettings&, const JTSettings&) = default;
};

struct QuadrupoleSettings {
  std::optional<double> p_par;  // J
  std::vector<double> A_per_mi;  // J, mi = +3/2 ... -3/2
  QuadrupoleContext context;
  std::optional<double> r3_au;

  friend bool operator==(const QuadrupoleSettings&, const QuadrupoleSettings&) = default;
};

struct FieldForm {
  double line_width = 0.0;  // T
  double resonant_field = 0.0;

  friend bool operator==(const FieldForm&, const FieldForm&) = default;
};

struct SensitivitySettings {
  DetectionSetup setup;
  std::map<std::string, double> agg_width_by_mode;  // Hz
  std::optional<LatticeParams> lattice;
  std::optional<FieldForm> field_form;

  friend bool operator==(const SensitivitySettings&, const SensitivitySettings&) = default;
};

/// A validated run description. All quantities are canonical SI
/// (joule, tesla, hertz, metre); the document units live only in the parser.
struct RunConfig {
  Command command = Command::simulate;
  std::optional<SpinSystem> spin_system;
  std::vector<ResonatorMode> modes;
  std::optional<FieldGrid> field_grid;
  FieldVector field_direction{0, 0, 1};
  Lineshape lineshape;
  FreqWindow freq_window;
  std::vector<double> hidden_mi;
  std::optional<std::filesystem::path> dataset_path;  // absolute
  std::optional<std::string> output_path;
  ResonanceSettings resonance;
  FitSettings fit;
  JTSettings jt;
  QuadrupoleSettings quadrupole;
  SensitivitySettings sensitivity;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Validates `doc` and converts it to canonical units. Relative file paths are
/// resolved against `base_dir`. Throws ConfigError carrying the JSON path of
/// the first problem (missing key, unknown key, wrong type, out of range,
/// missing file).
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Parses JSON text; malformed text is a ConfigError. Blank text is treated as
/// an empty document.
RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir = {});

RunConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config, in document units.
nlohmann::json serialize_config(const RunConfig& cfg);

}  // namespace spinres
