#include "spinres/units.hpp"

#include <cmath>
#include <string>

#include "spinres/errors.hpp"

namespace spinres::units {

double joules_per(const Unit& u) {
  const auto& c = constants();
  switch (u.kind) {
    case UnitKind::joule:
      return 1.0;
    case UnitKind::wavenumber:
      return c.hc_per_cm;
    case UnitKind::gigahertz:
      return c.planck_h * 1e9;
    case UnitKind::tesla_at_g:
      if (!(u.g > 0.0) || !std::isfinite(u.g)) {
        throw InvalidInput("tesla-at-g unit requires g > 0, got " + std::to_string(u.g));
      }
      return u.g * c.bohr_magneton;
  }
  throw InvalidInput("unknown energy unit tag " + std::to_string(static_cast<int>(u.kind)));
}

double to_joule(double magnitude, const Unit& u) { return magnitude * joules_per(u); }

double from_joule(double joules, const Unit& u) { return joules / joules_per(u); }

EnergyValue convert_energy(const EnergyValue& v, const Unit& target) {
  if (v.unit == target) {
    (void)joules_per(target);  // still validate the tag
    return v;
  }
  return EnergyValue{from_joule(to_joule(v.magnitude, v.unit), target), target};
}

Unit parse_unit(std::string_view tag, double g) {
  if (tag == "J") return joule;
  if (tag == "cm-1") return wavenumber;
  if (tag == "GHz") return gigahertz;
  if (tag == "T") {
    Unit u = tesla_at(g);
    (void)joules_per(u);
    return u;
  }
  throw InvalidInput("unknown energy unit '" + std::string(tag) + "'");
}

}  // namespace spinres::units
