#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinres/eigen_transitions.hpp"
#include "spinres/extraction.hpp"
#include "spinres/resonator_mode.hpp"

namespace spinres {

/// Decimal text with 12 significant digits, '.' separator.
std::string format_number(double v);

/// Mode records: {label, freq_ghz, q_loaded, mode_volume_m3, filling_factor}.
/// `path` prefixes error messages.
std::vector<ResonatorMode> modes_from_json(const nlohmann::json& doc, const std::string& path = "modes");
std::vector<ResonatorMode> load_mode_catalog(const std::filesystem::path& file);
nlohmann::json modes_to_json(std::span<const ResonatorMode> modes);

/// {mode_freq_hz, entries: [{mi, b_line_tesla, width_tesla, A_1e-4_cm-1?}]}
MultipletDataset dataset_from_json(const nlohmann::json& doc, const std::string& path = "");
MultipletDataset load_dataset(const std::filesystem::path& file);
nlohmann::json dataset_to_json(const MultipletDataset& data);

nlohmann::json result_to_json(const ExtractionResult& r);
std::string result_table(const ExtractionResult& r);

/// Per map: `# key=value` metadata rows, the `B_tesla,f_hz,response` header,
/// then one row per grid point (field-major). LF line endings.
void write_map_csv(std::ostream& out, std::span<const SpectrumMap> maps);

}  // namespace spinres
