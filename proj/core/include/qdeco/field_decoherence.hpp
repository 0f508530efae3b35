#pragma once

// Decoherence of a superposition of two macroscopic electric fields by the
// charged matter they couple to, and the thermal localization of free
// electrons.
//
// The interference term between the branches E and -E over a volume V is
//
//   rho_+- = exp(2 i V A E) exp(-V e^2 E^2 / (512 pi m))
//
// in natural Heaviside-Lorentz units, valid once t >> m / (e E).

#include <complex>

#include "qdeco/units.hpp"

namespace qdeco::field {

using units::PhysicalQuantity;

// --- natural-unit kernels (volume MeV^-3, field MeV^2, potential MeV) ---

// V e^2 E^2 / (512 pi m).
double suppression_exponent_natural(double volume, double field);
double decoherence_factor_natural(double volume, double field);
std::complex<double> offdiagonal_element_natural(double volume, double field, double potential);
// Volume at which the exponent equals `threshold_exponent`.
double threshold_volume_natural(double field, double threshold_exponent = 1.0);
double coherence_length_natural(double field, double threshold_exponent = 1.0);
double validity_time_natural(double field);

// --- SI-facing forms; inputs are converted to natural units internally ---

double decoherence_factor(const PhysicalQuantity& volume, const PhysicalQuantity& field);
// The vector-potential amplitude is taken in natural units (MeV).
std::complex<double> offdiagonal_element(const PhysicalQuantity& volume, const PhysicalQuantity& field,
                                         double potential_mev);
// Edge L of the cube whose suppression factor is exp(-threshold_exponent).
PhysicalQuantity coherence_length(const PhysicalQuantity& field, double threshold_exponent = 1.0);
// t_min = m / (e |E|).
PhysicalQuantity validity_time(const PhysicalQuantity& field);

// Thermal localization: l(t) = 1 / sqrt(Lambda t). The default rate is
// calibrated so that l(1 s) = 0.1 cm; it has no temperature dependence.
struct ThermalModel {
  double localization_rate_cm2_s = 100.0;
  double reference_temperature_k = 300.0;  // label only
};

double thermal_coherence_length_cm(double time_s, const ThermalModel& model = {});
PhysicalQuantity thermal_coherence_length(const PhysicalQuantity& time, const ThermalModel& model = {});

}  // namespace qdeco::field
