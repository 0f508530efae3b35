#pragma once

// One-dimensional lattice QED with static charges and truncated link fields.
//
// Sites x = 1..N carry a charge q_x in {-1, 0, +1}. Link x sits to the right of
// site x and carries an integer electric field E_x in [-E_max, E_max]. The
// field E_0 left of site 1 is a fixed classical boundary value; link N is the
// boundary link whose flux measures the total charge.
//
// Configuration basis order is lexicographic in (q_1..q_N, E_1..E_N), which is
// the flat order of the layout (3, ..., 3, 2E_max+1, ..., 2E_max+1).

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "qdeco/hilbert.hpp"

namespace qdeco::lattice {

using hilbert::Complex;
using hilbert::Operator;
using hilbert::StateVector;
using hilbert::TensorLayout;

inline constexpr std::size_t kMaxEnumerationDim = 20000;
inline constexpr std::size_t kMaxDenseDim = 400;
inline constexpr double kExactTolerance = 1e-12;

class LatticeSpec {
 public:
  LatticeSpec(std::size_t sites, int max_field, int left_field);

  std::size_t sites() const { return sites_; }
  int max_field() const { return max_field_; }
  int left_field() const { return left_field_; }
  std::size_t link_dim() const { return static_cast<std::size_t>(2 * max_field_ + 1); }
  // 3^N (2 E_max + 1)^N, saturating at SIZE_MAX.
  std::size_t flat_dim() const { return flat_dim_; }
  // Throws DimensionError above kMaxEnumerationDim.
  TensorLayout layout() const;

  std::size_t site_factor(std::size_t site) const;  // 1-based site -> factor
  std::size_t link_factor(std::size_t link) const;  // 1-based link -> factor

 private:
  std::size_t sites_;
  int max_field_;
  int left_field_;
  std::size_t flat_dim_;
};

struct Configuration {
  std::vector<int> charges;  // q_1..q_N
  std::vector<int> fields;   // E_1..E_N

  bool operator==(const Configuration&) const = default;
};

Configuration configuration_at(const LatticeSpec& spec, std::size_t flat);
std::size_t flat_index(const LatticeSpec& spec, const Configuration& config);

std::vector<Configuration> enumerate_basis(const LatticeSpec& spec);

// G_x = E_x - E_{x-1} - q_x with E_0 = left boundary field.
int gauss_value(const LatticeSpec& spec, const Configuration& config, std::size_t site);

// E_N - E_0.
int boundary_flux(const LatticeSpec& spec, const Configuration& config);

// Gauge parameter: values xi_1..xi_N on sites plus the boundary values at the
// left (xi_L) and right (xi_infinity) ends.
struct GaugeFunction {
  std::vector<double> values;
  double left = 0.0;
  double infinity = 0.0;
};

// Operator that is diagonal in the configuration basis. All constraint, charge
// and generator operators of the model are of this kind.
struct DiagonalOperator {
  TensorLayout layout;
  std::vector<double> diagonal;

  std::size_t dim() const { return diagonal.size(); }
  Operator to_dense() const;
};

double max_abs_difference(const DiagonalOperator& a, const DiagonalOperator& b);

DiagonalOperator gauss_operator(const LatticeSpec& spec, std::size_t site);

// Joint kernel of every G_x, found by filtering the enumerated basis.
class PhysicalSubspace {
 public:
  explicit PhysicalSubspace(const LatticeSpec& spec);

  const LatticeSpec& spec() const { return spec_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  bool contains(std::size_t flat) const;
  // Position of a flat index inside basis(); throws if not physical.
  std::size_t position(std::size_t flat) const;

  StateVector embed(const hilbert::Vector& physical_coordinates) const;
  hilbert::Vector coordinates(const StateVector& state) const;
  // Largest amplitude magnitude outside the kernel.
  double leakage(const StateVector& state) const;

 private:
  LatticeSpec spec_;
  std::vector<std::size_t> basis_;
  std::vector<long> position_;  // flat -> position, -1 when unphysical
};

PhysicalSubspace physical_subspace(const LatticeSpec& spec);

// Q^xi = sum_{l=0..N} E_l (xi_{l+1} - xi_l) + sum_x q_x xi_x, with
// xi_0 = xi_L, xi_{N+1} = xi_infinity and E_0 the left boundary field.
DiagonalOperator gauge_generator(const LatticeSpec& spec, const GaugeFunction& xi);

struct BoundaryDecomposition {
  DiagonalOperator surface;  // xi_infinity E_N - xi_L E_0
  DiagonalOperator bulk;     // -sum_x xi_x G_x
};

BoundaryDecomposition boundary_decomposition(const LatticeSpec& spec, const GaugeFunction& xi);

// max |Q^xi - surface - bulk| over the whole configuration basis.
double identity_residual(const LatticeSpec& spec, const GaugeFunction& xi);

// max |Q^xi - surface| over the physical subspace.
double kernel_residual(const PhysicalSubspace& physical, const GaugeFunction& xi);

// Q = E_N - E_0.
DiagonalOperator total_charge(const LatticeSpec& spec);

// Charge Q -> flat indices of the physical basis states carrying it.
struct SectorDecomposition {
  std::map<int, std::vector<std::size_t>> sectors;

  // Charge of a physical flat index; throws if the index is not in any sector.
  int charge_of(std::size_t flat) const;
  std::map<int, std::size_t> sizes() const;
};

SectorDecomposition sector_decomposition(const PhysicalSubspace& physical);

// String operator from site x to the right boundary: raises q_x by one and
// every E_l with l >= x by one. Transitions leaving the truncated range are
// dropped, so the operator annihilates states at the truncation edge.
Operator wilson_line(const LatticeSpec& spec, std::size_t site);

// Configurations on which wilson_line(spec, site) is not clipped.
std::vector<std::size_t> wilson_unclipped(const LatticeSpec& spec, std::size_t site);

// Sites and links (both 1-based) on which an operator acts.
struct Region {
  std::set<std::size_t> sites;
  std::set<std::size_t> links;
};

// Every site and every link except the boundary link N.
Region maximal_interior(const LatticeSpec& spec);
Region whole_lattice(const LatticeSpec& spec);

// Spanning set of Hermitian operators supported on `interior` that commute
// with every G_x. The identity comes first; the rest are orthonormal in the
// Hilbert-Schmidt inner product on the interior and orthogonal to it.
// Rejects regions containing the boundary link.
std::vector<Operator> gauge_invariant_local_basis(const LatticeSpec& spec, const Region& interior);

// As above without the boundary restriction.
std::vector<Operator> gauge_invariant_operator_basis(const LatticeSpec& spec, const Region& region);

struct SuperselectionReport {
  std::size_t physical_dim = 0;
  std::map<int, std::size_t> sector_sizes;
  int charge_plus = 0;
  int charge_minus = 0;
  bool distinct_sectors = false;
  std::size_t observable_count = 0;
  // max_O |<Psi_+|O|Psi_->|
  double max_cross = 0.0;
  // max_O |<O>_superposition - <O>_mixture|
  double max_mixture_deviation = 0.0;
  // max_O max_ij |[O, Q]_ij|
  double max_charge_commutator = 0.0;
};

// Checks every gauge-invariant operator on the maximal interior.
SuperselectionReport superselection_report(const LatticeSpec& spec, const StateVector& psi_plus,
                                           const StateVector& psi_minus);

// Same checks against an explicit observable list.
SuperselectionReport superselection_report(const LatticeSpec& spec, const StateVector& psi_plus,
                                           const StateVector& psi_minus,
                                           const std::vector<Operator>& observables);

// Multiplies the charge-Q component of a physical state by exp(i Q theta).
StateVector charge_phase_action(const SectorDecomposition& decomposition, const StateVector& state,
                                double theta);

// exp(i Q^xi) applied to an arbitrary state.
StateVector apply_gauge_transformation(const LatticeSpec& spec, const GaugeFunction& xi,
                                       const StateVector& state);

}  // namespace qdeco::lattice
