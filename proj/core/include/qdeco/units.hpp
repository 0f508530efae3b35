#pragma once

// SI <-> natural units (hbar = c = 1, Heaviside-Lorentz, energies in MeV).
//
// SI magnitudes are stored in base units: m, s, m^3, J, V/m. Natural
// magnitudes: lengths and times in MeV^-1, volumes in MeV^-3, energies in MeV,
// electric fields in MeV^2.

#include <string_view>

namespace qdeco::units {

enum class Dimension { length, time, volume, energy, electric_field, dimensionless };
enum class UnitSystem { si, natural };

std::string_view to_string(Dimension d);
std::string_view to_string(UnitSystem s);

struct PhysicalQuantity {
  double magnitude = 0.0;
  Dimension dimension = Dimension::dimensionless;
  UnitSystem system = UnitSystem::si;
};

struct ConstantsTable {
  double electron_mass_mev = 0.5109989;
  double inverse_fine_structure = 137.035999;
  double hbar_c_mev_fm = 197.3269804;
  double hbar_mev_s = 6.582119569e-22;
  // Exact SI definitions.
  double mev_in_joule = 1.602176634e-13;
  double elementary_charge_coulomb = 1.602176634e-19;
  double vacuum_permittivity_f_per_m = 8.8541878128e-12;
  // Schwinger critical field m^2 c^3 / (e hbar).
  double schwinger_field_v_per_m = 1.3233e18;
  // 1 V/m in MeV^2. Frozen from the energy-density reduction; the Schwinger
  // route reproduces it to about 1e-5.
  double volt_per_metre_in_mev2 = 6.5162670349963022e-19;

  double fine_structure() const { return 1.0 / inverse_fine_structure; }
  // Heaviside-Lorentz: e = sqrt(4 pi alpha).
  double elementary_charge() const;
};

inline constexpr ConstantsTable kConstants{};

// 1 V/m in MeV^2 via (m^2 / e) / E_crit.
double field_conversion_via_schwinger(const ConstantsTable& c = kConstants);
// 1 V/m in MeV^2 via eps0 E^2 (SI energy density) = E^2 (natural), with the
// joule and the cubic metre reduced to MeV and MeV^-3.
double field_conversion_via_energy_density(const ConstantsTable& c = kConstants);

// Multiplier taking an SI magnitude of `d` to its natural-unit magnitude.
double si_to_natural_factor(Dimension d, const ConstantsTable& c = kConstants);

PhysicalQuantity convert(const PhysicalQuantity& q, UnitSystem target, const ConstantsTable& c = kConstants);

PhysicalQuantity metres(double v);
PhysicalQuantity centimetres(double v);
PhysicalQuantity seconds(double v);
PhysicalQuantity cubic_centimetres(double v);
PhysicalQuantity volts_per_metre(double v);
PhysicalQuantity volts_per_centimetre(double v);
PhysicalQuantity natural(double v, Dimension d);

// Magnitude in the named unit; throws DomainError on a dimension mismatch.
double in_centimetres(const PhysicalQuantity& q);
double in_seconds(const PhysicalQuantity& q);
double in_natural(const PhysicalQuantity& q, Dimension expected);

}  // namespace qdeco::units
