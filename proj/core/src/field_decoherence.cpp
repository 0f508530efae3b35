#include "qdeco/field_decoherence.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qdeco/error.hpp"

namespace qdeco::field {

using units::Dimension;
using units::kConstants;
using units::UnitSystem;

namespace {

void check_volume(double volume) {
  if (!(volume >= 0.0)) throw DomainError("field decoherence: volume must be non-negative");
}

void check_nonzero_field(double field) {
  if (field == 0.0 || !std::isfinite(field)) throw DomainError("field decoherence: field must be finite and nonzero");
}

}  // namespace

double suppression_exponent_natural(double volume, double field) {
  check_volume(volume);
  const double e = kConstants.elementary_charge();
  return volume * e * e * field * field / (512.0 * std::numbers::pi * kConstants.electron_mass_mev);
}

double decoherence_factor_natural(double volume, double field) {
  return std::exp(-suppression_exponent_natural(volume, field));
}

std::complex<double> offdiagonal_element_natural(double volume, double field, double potential) {
  const double magnitude = decoherence_factor_natural(volume, field);
  return std::polar(magnitude, 2.0 * volume * potential * field);
}

double threshold_volume_natural(double field, double threshold_exponent) {
  check_nonzero_field(field);
  if (!(threshold_exponent > 0.0)) throw DomainError("coherence_length: threshold exponent must be positive");
  const double e = kConstants.elementary_charge();
  return 512.0 * std::numbers::pi * kConstants.electron_mass_mev * threshold_exponent / (e * e * field * field);
}

double coherence_length_natural(double field, double threshold_exponent) {
  return std::cbrt(threshold_volume_natural(field, threshold_exponent));
}

double validity_time_natural(double field) {
  check_nonzero_field(field);
  return kConstants.electron_mass_mev / (kConstants.elementary_charge() * std::abs(field));
}

double decoherence_factor(const PhysicalQuantity& volume, const PhysicalQuantity& field) {
  return decoherence_factor_natural(units::in_natural(volume, Dimension::volume),
                                    units::in_natural(field, Dimension::electric_field));
}

std::complex<double> offdiagonal_element(const PhysicalQuantity& volume, const PhysicalQuantity& field,
                                         double potential_mev) {
  return offdiagonal_element_natural(units::in_natural(volume, Dimension::volume),
                                     units::in_natural(field, Dimension::electric_field), potential_mev);
}

PhysicalQuantity coherence_length(const PhysicalQuantity& field, double threshold_exponent) {
  const double length = coherence_length_natural(units::in_natural(field, Dimension::electric_field),
                                                 threshold_exponent);
  return units::natural(length, Dimension::length);
}

PhysicalQuantity validity_time(const PhysicalQuantity& field) {
  return units::natural(validity_time_natural(units::in_natural(field, Dimension::electric_field)),
                        Dimension::time);
}

double thermal_coherence_length_cm(double time_s, const ThermalModel& model) {
  if (!(time_s > 0.0)) throw DomainError("thermal_coherence_length: time must be positive");
  if (!(model.localization_rate_cm2_s > 0.0)) {
    throw DomainError("thermal_coherence_length: localization rate must be positive");
  }
  return 1.0 / std::sqrt(model.localization_rate_cm2_s * time_s);
}

PhysicalQuantity thermal_coherence_length(const PhysicalQuantity& time, const ThermalModel& model) {
  return units::centimetres(thermal_coherence_length_cm(units::in_seconds(time), model));
}

}  // namespace qdeco::field
