#pragma once

#include <string>

namespace spinres {

/// One whispering-gallery mode of the dielectric resonator.
struct ResonatorMode {
  std::string label;            // e.g. WGH_{4,1,2}
  double freq = 0.0;            // Hz
  double q_loaded = 0.0;
  double mode_volume = 0.0;     // m^3
  double filling_factor = 1.0;  // (0, 1]

  /// Throws InvalidInput naming the first out-of-range field.
  void validate() const;

  friend bool operator==(const ResonatorMode&, const ResonatorMode&) = default;
};

}  // namespace spinres
