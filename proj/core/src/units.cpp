#include "qdeco/units.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qdeco/error.hpp"

namespace qdeco::units {

namespace {

void expect(const PhysicalQuantity& q, Dimension d, const char* what) {
  if (q.dimension != d) {
    throw DomainError(std::string(what) + ": expected " + std::string(to_string(d)) + ", got " +
                      std::string(to_string(q.dimension)));
  }
}

}  // namespace

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::length: return "length";
    case Dimension::time: return "time";
    case Dimension::volume: return "volume";
    case Dimension::energy: return "energy";
    case Dimension::electric_field: return "electric_field";
    case Dimension::dimensionless: return "dimensionless";
  }
  return "unknown";
}

std::string_view to_string(UnitSystem s) { return s == UnitSystem::si ? "si" : "natural"; }

double ConstantsTable::elementary_charge() const {
  return std::sqrt(4.0 * std::numbers::pi * fine_structure());
}

double field_conversion_via_schwinger(const ConstantsTable& c) {
  const double m = c.electron_mass_mev;
  return m * m / c.elementary_charge() / c.schwinger_field_v_per_m;
}

double field_conversion_via_energy_density(const ConstantsTable& c) {
  // 1 J/m^3 in MeV^4: J -> MeV, and 1 m = 1e15 fm = 1e15 / hbar_c MeV^-1.
  const double metre = 1e15 / c.hbar_c_mev_fm;
  const double joule_per_m3 = 1.0 / c.mev_in_joule / (metre * metre * metre);
  return std::sqrt(c.vacuum_permittivity_f_per_m * joule_per_m3);
}

double si_to_natural_factor(Dimension d, const ConstantsTable& c) {
  const double metre = 1e15 / c.hbar_c_mev_fm;
  switch (d) {
    case Dimension::length: return metre;
    case Dimension::time: return 1.0 / c.hbar_mev_s;
    case Dimension::volume: return metre * metre * metre;
    case Dimension::energy: return 1.0 / c.mev_in_joule;
    case Dimension::electric_field: return c.volt_per_metre_in_mev2;
    case Dimension::dimensionless: return 1.0;
  }
  throw DomainError("si_to_natural_factor: unsupported dimension");
}

PhysicalQuantity convert(const PhysicalQuantity& q, UnitSystem target, const ConstantsTable& c) {
  if (q.system == target) return q;
  const double factor = si_to_natural_factor(q.dimension, c);
  const double magnitude = target == UnitSystem::natural ? q.magnitude * factor : q.magnitude / factor;
  return {magnitude, q.dimension, target};
}

PhysicalQuantity metres(double v) { return {v, Dimension::length, UnitSystem::si}; }
PhysicalQuantity centimetres(double v) { return {v * 1e-2, Dimension::length, UnitSystem::si}; }
PhysicalQuantity seconds(double v) { return {v, Dimension::time, UnitSystem::si}; }
PhysicalQuantity cubic_centimetres(double v) { return {v * 1e-6, Dimension::volume, UnitSystem::si}; }
PhysicalQuantity volts_per_metre(double v) { return {v, Dimension::electric_field, UnitSystem::si}; }
PhysicalQuantity volts_per_centimetre(double v) { return {v * 1e2, Dimension::electric_field, UnitSystem::si}; }
PhysicalQuantity natural(double v, Dimension d) { return {v, d, UnitSystem::natural}; }

double in_centimetres(const PhysicalQuantity& q) {
  expect(q, Dimension::length, "in_centimetres");
  return convert(q, UnitSystem::si).magnitude * 1e2;
}

double in_seconds(const PhysicalQuantity& q) {
  expect(q, Dimension::time, "in_seconds");
  return convert(q, UnitSystem::si).magnitude;
}

double in_natural(const PhysicalQuantity& q, Dimension expected) {
  expect(q, expected, "in_natural");
  return convert(q, UnitSystem::natural).magnitude;
}

}  // namespace qdeco::units
