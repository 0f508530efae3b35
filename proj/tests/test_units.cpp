#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdeco/error.hpp"
#include "qdeco/units.hpp"

using namespace qdeco;
using namespace qdeco::units;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1 V/m in MeV^2 from the Coulomb field of a point charge: in SI it is
// e / (4 pi eps0 r^2), in Heaviside-Lorentz natural units e / (4 pi r^2).
double coulomb_route() {
  const double hbar_c_mev_m = 197.3269804e-15;
  const double metre_in_mev_inv = 1.0 / hbar_c_mev_m;
  const double e_natural = std::sqrt(4.0 * std::numbers::pi / 137.035999);
  const double e_si = 1.602176634e-19;
  const double eps0 = 8.8541878128e-12;
  return e_natural * eps0 / (e_si * metre_in_mev_inv * metre_in_mev_inv);
}

}  // namespace

TEST_SUITE("units") {

TEST_CASE("length and time conversions") {
  CHECK(rel(in_natural(centimetres(1.0), Dimension::length), 5.0677e10) <= 1e-3);
  CHECK(rel(in_natural(seconds(1.0), Dimension::time), 1.5193e21) <= 1e-3);
  CHECK(rel(in_natural(centimetres(1.0), Dimension::length), 5.06773071767939e10) <= 1e-12);
  CHECK(rel(in_natural(seconds(1.0), Dimension::time), 1.5192674479961274e21) <= 1e-12);
  CHECK(rel(in_natural(cubic_centimetres(1.0), Dimension::volume), std::pow(5.06773071767939e10, 3)) <= 1e-12);
  CHECK(rel(in_natural(PhysicalQuantity{1.602176634e-13, Dimension::energy, UnitSystem::si}, Dimension::energy),
            1.0) <= 1e-15);
}

TEST_CASE("round trips") {
  for (double v : {1e-12, 3.7e-4, 1.0, 42.0, 6.02e23}) {
    for (auto q : {metres(v), seconds(v), cubic_centimetres(v), volts_per_metre(v)}) {
      const auto back = convert(convert(q, UnitSystem::natural), UnitSystem::si);
      CHECK(back.system == UnitSystem::si);
      CHECK(back.dimension == q.dimension);
      CHECK(rel(back.magnitude, q.magnitude) <= 1e-12);
    }
    CHECK(rel(in_centimetres(centimetres(v)), v) <= 1e-12);
    CHECK(rel(in_seconds(natural(in_natural(seconds(v), Dimension::time), Dimension::time)), v) <= 1e-12);
  }
  const auto same = convert(metres(2.0), UnitSystem::si);
  CHECK(same.magnitude == 2.0);
}

TEST_CASE("field conversion routes agree") {
  const double schwinger = field_conversion_via_schwinger();
  const double energy = field_conversion_via_energy_density();
  const double coulomb = coulomb_route();
  CHECK(rel(schwinger, energy) <= 1e-3);
  // The measured alpha and eps0 are consistent to a few parts in 1e10.
  CHECK(rel(coulomb, energy) <= 1e-9);
  CHECK(rel(kConstants.volt_per_metre_in_mev2, energy) <= 1e-15);
  CHECK(rel(in_natural(volts_per_centimetre(1.0), Dimension::electric_field), 100.0 * energy) <= 1e-15);
}

TEST_CASE("constants") {
  CHECK(rel(kConstants.elementary_charge(), 0.30282212) <= 1e-7);
  CHECK(kConstants.fine_structure() * kConstants.inverse_fine_structure == doctest::Approx(1.0));
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(in_centimetres(seconds(1.0)), DomainError);
  CHECK_THROWS_AS(in_seconds(metres(1.0)), DomainError);
  CHECK_THROWS_AS(in_natural(metres(1.0), Dimension::volume), DomainError);
}

TEST_CASE("names") {
  CHECK(to_string(Dimension::electric_field) == "electric_field");
  CHECK(to_string(UnitSystem::natural) == "natural");
}

}  // TEST_SUITE
