#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdeco/error.hpp"
#include "qdeco/field_decoherence.hpp"

using namespace qdeco;
using namespace qdeco::field;
using units::Dimension;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// e^2 / (512 pi m) in natural units, spelled out from the raw constants.
double rate_per_volume_field2() {
  const double e2 = 4.0 * std::numbers::pi / 137.035999;
  return e2 / (512.0 * std::numbers::pi * 0.5109989);
}

}  // namespace

TEST_SUITE("field_decoherence") {

TEST_CASE("factor examples") {
  CHECK(decoherence_factor_natural(0.0, 3.0) == 1.0);
  CHECK(decoherence_factor_natural(5.0, 0.0) == 1.0);
  const double field = 2.0;
  const double v = threshold_volume_natural(field);
  CHECK(rel(decoherence_factor_natural(v, field), std::exp(-1.0)) <= 1e-12);
  CHECK(decoherence_factor_natural(1e6, 1.0) < decoherence_factor_natural(1e5, 1.0));
  CHECK(decoherence_factor_natural(1e3, -1.5) == decoherence_factor_natural(1e3, 1.5));
}

TEST_CASE("exponent is additive in the volume") {
  for (double f : {0.1, 1.0, 7.5}) {
    const double a = suppression_exponent_natural(123.0, f);
    const double b = suppression_exponent_natural(456.0, f);
    CHECK(rel(suppression_exponent_natural(579.0, f), a + b) <= 1e-14);
    CHECK(rel(decoherence_factor_natural(579.0, f),
              decoherence_factor_natural(123.0, f) * decoherence_factor_natural(456.0, f)) <= 1e-12);
  }
}

TEST_CASE("log-linearity in V and in E^2") {
  const double k = rate_per_volume_field2();
  const double field = 0.8;
  const double v1 = 10.0, v2 = 250.0;
  const double slope_v =
      (std::log(decoherence_factor_natural(v2, field)) - std::log(decoherence_factor_natural(v1, field))) / (v2 - v1);
  CHECK(rel(slope_v, -k * field * field) <= 1e-10);

  const double volume = 40.0;
  const double f1 = 0.5, f2 = 1.7;
  const double slope_e2 = (std::log(decoherence_factor_natural(volume, f2)) -
                           std::log(decoherence_factor_natural(volume, f1))) /
                          (f2 * f2 - f1 * f1);
  CHECK(rel(slope_e2 / volume, -k) <= 1e-10);
}

TEST_CASE("off-diagonal element carries the phase 2 V A E") {
  const double volume = 3.0, field = 0.5;
  const double potential = std::numbers::pi / (2.0 * volume * field);
  const auto element = offdiagonal_element_natural(volume, field, potential);
  const double magnitude = decoherence_factor_natural(volume, field);
  CHECK(std::abs(element - std::complex<double>(-magnitude, 0.0)) <= 1e-15);
  CHECK(std::abs(offdiagonal_element_natural(volume, field, 0.0).imag()) == 0.0);
  CHECK(std::abs(std::abs(offdiagonal_element_natural(volume, field, 0.37)) - magnitude) <= 1e-15);
}

TEST_CASE("coherence length at 10^7 V/cm") {
  const auto field = units::volts_per_centimetre(1e7);
  const double length_cm = units::in_centimetres(coherence_length(field));
  CHECK(rel(length_cm, 5.4535e-4) <= 1e-4);
  CHECK(rel(length_cm, 5.4535013248183e-4) <= 1e-10);
  CHECK(rel(units::in_centimetres(coherence_length(field, 8.0)), 2.0 * length_cm) <= 1e-12);
  CHECK(rel(units::in_centimetres(coherence_length(units::volts_per_centimetre(1e8))),
            length_cm / std::pow(10.0, 2.0 / 3.0)) <= 1e-12);
}

TEST_CASE("coherence length solves the threshold equation") {
  for (double f : {1e-9, 1e-6, 1e-3, 0.7, 30.0}) {
    for (double threshold : {0.1, 1.0, 8.0}) {
      const double l = coherence_length_natural(f, threshold);
      CHECK(rel(decoherence_factor_natural(l * l * l, f), std::exp(-threshold)) <= 1e-10);
    }
  }
}

TEST_CASE("validity time") {
  const auto field = units::volts_per_centimetre(1e7);
  const auto t = validity_time(field);
  CHECK(t.dimension == Dimension::time);
  CHECK(rel(units::in_seconds(t), 1.7045e-12) <= 1e-4);
  CHECK(rel(units::in_seconds(t), 1.7045088573709768e-12) <= 1e-10);
  CHECK(rel(units::in_seconds(validity_time(units::volts_per_centimetre(2e7))), units::in_seconds(t) / 2.0) <= 1e-12);
  CHECK(rel(t.magnitude * units::kConstants.hbar_mev_s, units::in_seconds(t)) <= 1e-12);
  CHECK(validity_time_natural(-2.0) == validity_time_natural(2.0));
}

TEST_CASE("thermal coherence length") {
  CHECK(thermal_coherence_length_cm(1.0) == 0.1);
  CHECK(thermal_coherence_length_cm(100.0) == 0.01);
  CHECK(thermal_coherence_length_cm(4.0) == 0.05);
  for (double t : {1e-6, 0.3, 1.0, 17.0, 1e5}) {
    CHECK(rel(thermal_coherence_length_cm(t) * std::sqrt(t), 0.1) <= 1e-12);
  }
  CHECK(thermal_coherence_length_cm(1.0, ThermalModel{400.0, 300.0}) == 0.05);
  CHECK(rel(units::in_centimetres(thermal_coherence_length(units::seconds(1.0))), 0.1) <= 1e-15);
}

TEST_CASE("SI and natural forms agree") {
  const auto volume = units::cubic_centimetres(1e-10);
  const auto field = units::volts_per_centimetre(3e6);
  const double v = units::in_natural(volume, Dimension::volume);
  const double f = units::in_natural(field, Dimension::electric_field);
  CHECK(rel(decoherence_factor(volume, field), decoherence_factor_natural(v, f)) <= 1e-9);
  CHECK(std::abs(offdiagonal_element(volume, field, 1e-30) - offdiagonal_element_natural(v, f, 1e-30)) <= 1e-9);
  CHECK(rel(coherence_length(field).magnitude, coherence_length_natural(f)) <= 1e-9);
  CHECK(rel(validity_time(field).magnitude, validity_time_natural(f)) <= 1e-9);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(decoherence_factor_natural(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(coherence_length_natural(0.0), DomainError);
  CHECK_THROWS_AS(coherence_length_natural(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(validity_time_natural(0.0), DomainError);
  CHECK_THROWS_AS(thermal_coherence_length_cm(0.0), DomainError);
  CHECK_THROWS_AS(thermal_coherence_length_cm(1.0, ThermalModel{-1.0, 300.0}), DomainError);
  CHECK_THROWS_AS(decoherence_factor(units::metres(1.0), units::volts_per_metre(1.0)), DomainError);
  CHECK_THROWS_AS(thermal_coherence_length(units::metres(1.0)), DomainError);
}

}  // TEST_SUITE
