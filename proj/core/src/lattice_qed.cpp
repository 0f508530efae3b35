#include "qdeco/lattice_qed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "qdeco/error.hpp"

namespace qdeco::lattice {

using hilbert::Matrix;
using hilbert::Vector;

namespace {

constexpr std::size_t kSiteDim = 3;

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

void check_site(const LatticeSpec& spec, std::size_t site, const char* what) {
  if (site < 1 || site > spec.sites()) {
    throw IndexError(std::string(what) + ": site " + std::to_string(site) + " outside 1.." +
                     std::to_string(spec.sites()));
  }
}

void check_dense(const LatticeSpec& spec, const char* what) {
  if (spec.flat_dim() > kMaxDenseDim) {
    throw DimensionError(std::string(what) + ": flat dimension " + std::to_string(spec.flat_dim()) +
                         " exceeds the dense limit of " + std::to_string(kMaxDenseDim));
  }
}

void check_gauge_function(const LatticeSpec& spec, const GaugeFunction& xi) {
  if (xi.values.size() != spec.sites()) {
    throw DimensionError("GaugeFunction: expected " + std::to_string(spec.sites()) + " site values, got " +
                         std::to_string(xi.values.size()));
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(xi.values.begin(), xi.values.end(), finite) || !finite(xi.left) ||
      !finite(xi.infinity)) {
    throw DomainError("GaugeFunction: non-finite value");
  }
}

// Applies f(config) to every basis configuration and collects the diagonal.
template <typename F>
DiagonalOperator diagonal_from(const LatticeSpec& spec, F&& f) {
  DiagonalOperator op{spec.layout(), {}};
  op.diagonal.reserve(spec.flat_dim());
  for (const auto& config : enumerate_basis(spec)) op.diagonal.push_back(f(config));
  return op;
}

void check_region(const LatticeSpec& spec, const Region& region) {
  for (auto s : region.sites) {
    if (s < 1 || s > spec.sites()) throw IndexError("Region: site " + std::to_string(s) + " out of range");
  }
  for (auto l : region.links) {
    if (l < 1 || l > spec.sites()) throw IndexError("Region: link " + std::to_string(l) + " out of range");
  }
}

// Squared weight of a state in each charge sector.
std::map<int, double> sector_weights(const SectorDecomposition& decomposition, const StateVector& state) {
  std::map<int, double> weights;
  for (const auto& [charge, members] : decomposition.sectors) {
    double w = 0.0;
    for (auto f : members) w += std::norm(state.amplitudes()(static_cast<Eigen::Index>(f)));
    weights[charge] = w;
  }
  return weights;
}

int sector_of_state(const PhysicalSubspace& physical, const SectorDecomposition& decomposition,
                    const StateVector& state, const char* name) {
  if (state.dim() != physical.spec().flat_dim()) {
    throw DimensionError(std::string("superselection_report: ") + name + " has the wrong dimension");
  }
  if (!state.is_normalized()) {
    throw NormalizationError(std::string("superselection_report: ") + name + " is not normalized");
  }
  if (physical.leakage(state) > kExactTolerance) {
    throw DomainError(std::string("superselection_report: ") + name + " has support outside the physical subspace");
  }
  const auto weights = sector_weights(decomposition, state);
  auto best = std::max_element(weights.begin(), weights.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
  for (const auto& [charge, w] : weights) {
    if (charge != best->first && w > kExactTolerance) {
      throw DomainError(std::string("superselection_report: ") + name + " is not a charge eigenstate");
    }
  }
  return best->first;
}

}  // namespace

LatticeSpec::LatticeSpec(std::size_t sites, int max_field, int left_field)
    : sites_(sites), max_field_(max_field), left_field_(left_field) {
  if (sites_ < 1) throw DomainError("LatticeSpec: need at least one site");
  if (max_field_ < 1) throw DomainError("LatticeSpec: E_max must be a positive integer");
  if (left_field_ < -max_field_ || left_field_ > max_field_) {
    throw DomainError("LatticeSpec: left boundary field " + std::to_string(left_field_) + " outside [-" +
                      std::to_string(max_field_) + ", " + std::to_string(max_field_) + "]");
  }
  flat_dim_ = 1;
  for (std::size_t x = 0; x < sites_; ++x) {
    flat_dim_ = saturating_mul(flat_dim_, saturating_mul(kSiteDim, link_dim()));
  }
}

TensorLayout LatticeSpec::layout() const {
  if (flat_dim_ > kMaxEnumerationDim) {
    throw DimensionError("LatticeSpec: flat dimension " +
                         (flat_dim_ == std::numeric_limits<std::size_t>::max() ? std::string("overflow")
                                                                                : std::to_string(flat_dim_)) +
                         " exceeds the enumeration limit of " + std::to_string(kMaxEnumerationDim));
  }
  std::vector<std::size_t> dims(sites_, kSiteDim);
  dims.insert(dims.end(), sites_, link_dim());
  return TensorLayout(std::move(dims));
}

std::size_t LatticeSpec::site_factor(std::size_t site) const {
  check_site(*this, site, "LatticeSpec::site_factor");
  return site - 1;
}

std::size_t LatticeSpec::link_factor(std::size_t link) const {
  if (link < 1 || link > sites_) throw IndexError("LatticeSpec::link_factor: link out of range");
  return sites_ + link - 1;
}

Configuration configuration_at(const LatticeSpec& spec, std::size_t flat) {
  const auto multi = spec.layout().unflatten(flat);
  const std::size_t n = spec.sites();
  Configuration c;
  c.charges.resize(n);
  c.fields.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    c.charges[x] = static_cast<int>(multi[x]) - 1;
    c.fields[x] = static_cast<int>(multi[n + x]) - spec.max_field();
  }
  return c;
}

std::size_t flat_index(const LatticeSpec& spec, const Configuration& config) {
  const std::size_t n = spec.sites();
  if (config.charges.size() != n || config.fields.size() != n) {
    throw DimensionError("flat_index: configuration size does not match the lattice");
  }
  std::vector<std::size_t> multi(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (config.charges[x] < -1 || config.charges[x] > 1) throw IndexError("flat_index: charge out of range");
    if (std::abs(config.fields[x]) > spec.max_field()) throw IndexError("flat_index: field out of range");
    multi[x] = static_cast<std::size_t>(config.charges[x] + 1);
    multi[n + x] = static_cast<std::size_t>(config.fields[x] + spec.max_field());
  }
  return spec.layout().flatten(multi);
}

std::vector<Configuration> enumerate_basis(const LatticeSpec& spec) {
  const TensorLayout layout = spec.layout();
  std::vector<Configuration> basis;
  basis.reserve(layout.flat_dim());
  for (std::size_t f = 0; f < layout.flat_dim(); ++f) basis.push_back(configuration_at(spec, f));
  return basis;
}

int gauss_value(const LatticeSpec& spec, const Configuration& config, std::size_t site) {
  check_site(spec, site, "gauss_value");
  const int left = site == 1 ? spec.left_field() : config.fields[site - 2];
  return config.fields[site - 1] - left - config.charges[site - 1];
}

int boundary_flux(const LatticeSpec& spec, const Configuration& config) {
  return config.fields.back() - spec.left_field();
}

Operator DiagonalOperator::to_dense() const {
  if (diagonal.size() > kMaxDenseDim) throw DimensionError("DiagonalOperator::to_dense: too large");
  Vector d(static_cast<Eigen::Index>(diagonal.size()));
  for (std::size_t i = 0; i < diagonal.size(); ++i) d(static_cast<Eigen::Index>(i)) = diagonal[i];
  return Operator(layout, d.asDiagonal().toDenseMatrix());
}

double max_abs_difference(const DiagonalOperator& a, const DiagonalOperator& b) {
  if (a.diagonal.size() != b.diagonal.size()) throw DimensionError("max_abs_difference: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.diagonal.size(); ++i) {
    worst = std::max(worst, std::abs(a.diagonal[i] - b.diagonal[i]));
  }
  return worst;
}

DiagonalOperator gauss_operator(const LatticeSpec& spec, std::size_t site) {
  check_site(spec, site, "gauss_operator");
  return diagonal_from(spec, [&](const Configuration& c) { return double(gauss_value(spec, c, site)); });
}

PhysicalSubspace::PhysicalSubspace(const LatticeSpec& spec) : spec_(spec) {
  const auto configs = enumerate_basis(spec_);
  position_.assign(configs.size(), -1);
  for (std::size_t f = 0; f < configs.size(); ++f) {
    bool physical = true;
    for (std::size_t x = 1; x <= spec_.sites() && physical; ++x) {
      physical = gauss_value(spec_, configs[f], x) == 0;
    }
    if (physical) {
      position_[f] = static_cast<long>(basis_.size());
      basis_.push_back(f);
    }
  }
}

bool PhysicalSubspace::contains(std::size_t flat) const {
  return flat < position_.size() && position_[flat] >= 0;
}

std::size_t PhysicalSubspace::position(std::size_t flat) const {
  if (!contains(flat)) throw IndexError("PhysicalSubspace: flat index is not a physical state");
  return static_cast<std::size_t>(position_[flat]);
}

StateVector PhysicalSubspace::embed(const Vector& physical_coordinates) const {
  if (static_cast<std::size_t>(physical_coordinates.size()) != basis_.size()) {
    throw DimensionError("PhysicalSubspace::embed: expected " + std::to_string(basis_.size()) + " coordinates");
  }
  Vector full = Vector::Zero(static_cast<Eigen::Index>(spec_.flat_dim()));
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    full(static_cast<Eigen::Index>(basis_[k])) = physical_coordinates(static_cast<Eigen::Index>(k));
  }
  return StateVector(spec_.layout(), std::move(full));
}

Vector PhysicalSubspace::coordinates(const StateVector& state) const {
  if (state.dim() != spec_.flat_dim()) throw DimensionError("PhysicalSubspace::coordinates: wrong dimension");
  Vector out(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    out(static_cast<Eigen::Index>(k)) = state.amplitudes()(static_cast<Eigen::Index>(basis_[k]));
  }
  return out;
}

double PhysicalSubspace::leakage(const StateVector& state) const {
  if (state.dim() != spec_.flat_dim()) throw DimensionError("PhysicalSubspace::leakage: wrong dimension");
  double worst = 0.0;
  for (std::size_t f = 0; f < position_.size(); ++f) {
    if (position_[f] < 0) worst = std::max(worst, std::abs(state.amplitudes()(static_cast<Eigen::Index>(f))));
  }
  return worst;
}

PhysicalSubspace physical_subspace(const LatticeSpec& spec) { return PhysicalSubspace(spec); }

DiagonalOperator gauge_generator(const LatticeSpec& spec, const GaugeFunction& xi) {
  check_gauge_function(spec, xi);
  const std::size_t n = spec.sites();
  // Extended gauge parameter xi_0..xi_{N+1}.
  std::vector<double> ext(n + 2);
  ext[0] = xi.left;
  std::copy(xi.values.begin(), xi.values.end(), ext.begin() + 1);
  ext[n + 1] = xi.infinity;
  return diagonal_from(spec, [&](const Configuration& c) {
    double q = spec.left_field() * (ext[1] - ext[0]);
    for (std::size_t l = 1; l <= n; ++l) q += c.fields[l - 1] * (ext[l + 1] - ext[l]);
    for (std::size_t x = 1; x <= n; ++x) q += c.charges[x - 1] * ext[x];
    return q;
  });
}

BoundaryDecomposition boundary_decomposition(const LatticeSpec& spec, const GaugeFunction& xi) {
  check_gauge_function(spec, xi);
  BoundaryDecomposition out;
  out.surface = diagonal_from(spec, [&](const Configuration& c) {
    return xi.infinity * c.fields.back() - xi.left * spec.left_field();
  });
  out.bulk = diagonal_from(spec, [&](const Configuration& c) {
    double b = 0.0;
    for (std::size_t x = 1; x <= spec.sites(); ++x) b -= xi.values[x - 1] * gauss_value(spec, c, x);
    return b;
  });
  return out;
}

double identity_residual(const LatticeSpec& spec, const GaugeFunction& xi) {
  const auto generator = gauge_generator(spec, xi);
  const auto parts = boundary_decomposition(spec, xi);
  double worst = 0.0;
  for (std::size_t f = 0; f < generator.dim(); ++f) {
    worst = std::max(worst, std::abs(generator.diagonal[f] - parts.surface.diagonal[f] - parts.bulk.diagonal[f]));
  }
  return worst;
}

double kernel_residual(const PhysicalSubspace& physical, const GaugeFunction& xi) {
  const auto generator = gauge_generator(physical.spec(), xi);
  const auto surface = boundary_decomposition(physical.spec(), xi).surface;
  double worst = 0.0;
  for (auto f : physical.basis()) worst = std::max(worst, std::abs(generator.diagonal[f] - surface.diagonal[f]));
  return worst;
}

DiagonalOperator total_charge(const LatticeSpec& spec) {
  return diagonal_from(spec, [&](const Configuration& c) { return double(boundary_flux(spec, c)); });
}

int SectorDecomposition::charge_of(std::size_t flat) const {
  for (const auto& [charge, members] : sectors) {
    if (std::binary_search(members.begin(), members.end(), flat)) return charge;
  }
  throw IndexError("SectorDecomposition: flat index " + std::to_string(flat) + " is not physical");
}

std::map<int, std::size_t> SectorDecomposition::sizes() const {
  std::map<int, std::size_t> out;
  for (const auto& [charge, members] : sectors) out[charge] = members.size();
  return out;
}

SectorDecomposition sector_decomposition(const PhysicalSubspace& physical) {
  SectorDecomposition out;
  for (auto f : physical.basis()) {
    out.sectors[boundary_flux(physical.spec(), configuration_at(physical.spec(), f))].push_back(f);
  }
  return out;
}

std::vector<std::size_t> wilson_unclipped(const LatticeSpec& spec, std::size_t site) {
  check_site(spec, site, "wilson_unclipped");
  std::vector<std::size_t> out;
  const auto configs = enumerate_basis(spec);
  for (std::size_t f = 0; f < configs.size(); ++f) {
    const auto& c = configs[f];
    bool ok = c.charges[site - 1] < 1;
    for (std::size_t l = site; l <= spec.sites() && ok; ++l) ok = c.fields[l - 1] < spec.max_field();
    if (ok) out.push_back(f);
  }
  return out;
}

Operator wilson_line(const LatticeSpec& spec, std::size_t site) {
  check_site(spec, site, "wilson_line");
  check_dense(spec, "wilson_line");
  const auto n = static_cast<Eigen::Index>(spec.flat_dim());
  Matrix w = Matrix::Zero(n, n);
  for (auto f : wilson_unclipped(spec, site)) {
    Configuration c = configuration_at(spec, f);
    c.charges[site - 1] += 1;
    for (std::size_t l = site; l <= spec.sites(); ++l) c.fields[l - 1] += 1;
    w(static_cast<Eigen::Index>(flat_index(spec, c)), static_cast<Eigen::Index>(f)) = 1.0;
  }
  return Operator(spec.layout(), std::move(w));
}

Region maximal_interior(const LatticeSpec& spec) {
  Region r;
  for (std::size_t x = 1; x <= spec.sites(); ++x) r.sites.insert(x);
  for (std::size_t l = 1; l < spec.sites(); ++l) r.links.insert(l);
  return r;
}

Region whole_lattice(const LatticeSpec& spec) {
  Region r = maximal_interior(spec);
  r.links.insert(spec.sites());
  return r;
}

std::vector<Operator> gauge_invariant_local_basis(const LatticeSpec& spec, const Region& interior) {
  if (interior.links.count(spec.sites())) {
    throw DomainError("gauge_invariant_local_basis: interior must exclude the boundary link " +
                      std::to_string(spec.sites()));
  }
  return gauge_invariant_operator_basis(spec, interior);
}

std::vector<Operator> gauge_invariant_operator_basis(const LatticeSpec& spec, const Region& region) {
  check_region(spec, region);
  check_dense(spec, "gauge_invariant_operator_basis");
  const TensorLayout layout = spec.layout();
  const std::size_t dim = layout.flat_dim();
  const std::size_t n = spec.sites();

  std::vector<std::size_t> inside;
  for (auto s : region.sites) inside.push_back(spec.site_factor(s));
  for (auto l : region.links) inside.push_back(spec.link_factor(l));
  std::sort(inside.begin(), inside.end());
  std::vector<std::size_t> outside;
  for (std::size_t k = 0; k < layout.factor_count(); ++k) {
    if (!std::binary_search(inside.begin(), inside.end(), k)) outside.push_back(k);
  }
  const TensorLayout in_layout = layout.select(inside);
  const TensorLayout out_layout = layout.select(outside);
  const std::size_t ni = in_layout.flat_dim();
  const std::size_t no = out_layout.flat_dim();

  // full[r * ni + i] = flat index with interior part i and exterior part r.
  std::vector<std::size_t> full(dim);
  std::vector<std::vector<int>> gauss(dim, std::vector<int>(n));
  {
    std::vector<std::size_t> im(inside.size());
    std::vector<std::size_t> om(outside.size());
    for (std::size_t f = 0; f < dim; ++f) {
      const auto multi = layout.unflatten(f);
      for (std::size_t k = 0; k < inside.size(); ++k) im[k] = multi[inside[k]];
      for (std::size_t k = 0; k < outside.size(); ++k) om[k] = multi[outside[k]];
      full[out_layout.flatten(om) * ni + in_layout.flatten(im)] = f;
      const auto c = configuration_at(spec, f);
      for (std::size_t x = 1; x <= n; ++x) gauss[f][x - 1] = gauss_value(spec, c, x);
    }
  }

  // The lift of |i><j| (x) 1_exterior commutes with every diagonal G_x exactly
  // when G agrees on (i, r) and (j, r) for every exterior configuration r.
  const auto lift_commutes = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < no; ++r) {
      if (gauss[full[r * ni + i]] != gauss[full[r * ni + j]]) return false;
    }
    return true;
  };

  // Interior operators as sparse entry lists. Off-diagonal matrix units
  // (symmetric and antisymmetric pairs) are orthonormal to each other, to the
  // identity and to every diagonal unit, so Gram-Schmidt only has to act on
  // the diagonal units, which it does as vectors of length ni.
  struct Entry {
    std::size_t i;
    std::size_t j;
    Complex value;
  };
  std::vector<std::vector<Entry>> kept;
  {
    std::vector<Entry> identity;
    for (std::size_t i = 0; i < ni; ++i) identity.push_back({i, i, 1.0});
    kept.push_back(std::move(identity));
  }
  std::vector<Eigen::VectorXd> diagonal_basis{Eigen::VectorXd::Constant(static_cast<Eigen::Index>(ni),
                                                                        1.0 / std::sqrt(double(ni)))};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t j = i; j < ni; ++j) {
      if (!lift_commutes(i, j)) continue;
      if (i == j) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(ni), static_cast<Eigen::Index>(i));
        for (const auto& u : diagonal_basis) v -= u.dot(v) * u;
        const double norm = v.norm();
        if (norm < 1e-10) continue;
        v /= norm;
        diagonal_basis.push_back(v);
        std::vector<Entry> entries;
        for (std::size_t k = 0; k < ni; ++k) {
          if (v(static_cast<Eigen::Index>(k)) != 0.0) entries.push_back({k, k, v(static_cast<Eigen::Index>(k))});
        }
        kept.push_back(std::move(entries));
        continue;
      }
      kept.push_back({{i, j, inv_sqrt2}, {j, i, inv_sqrt2}});
      kept.push_back({{i, j, Complex(0.0, inv_sqrt2)}, {j, i, Complex(0.0, -inv_sqrt2)}});
    }
  }

  std::vector<Operator> out;
  out.reserve(kept.size());
  const auto dim_e = static_cast<Eigen::Index>(dim);
  for (const auto& entries : kept) {
    Matrix lifted = Matrix::Zero(dim_e, dim_e);
    for (std::size_t r = 0; r < no; ++r) {
      for (const auto& e : entries) {
        lifted(static_cast<Eigen::Index>(full[r * ni + e.i]), static_cast<Eigen::Index>(full[r * ni + e.j])) = e.value;
      }
    }
    out.emplace_back(layout, std::move(lifted));
  }
  return out;
}

SuperselectionReport superselection_report(const LatticeSpec& spec, const StateVector& psi_plus,
                                           const StateVector& psi_minus) {
  return superselection_report(spec, psi_plus, psi_minus,
                               gauge_invariant_local_basis(spec, maximal_interior(spec)));
}

SuperselectionReport superselection_report(const LatticeSpec& spec, const StateVector& psi_plus,
                                           const StateVector& psi_minus,
                                           const std::vector<Operator>& observables) {
  const PhysicalSubspace physical(spec);
  const SectorDecomposition sectors = sector_decomposition(physical);

  SuperselectionReport report;
  report.physical_dim = physical.dim();
  report.sector_sizes = sectors.sizes();
  report.charge_plus = sector_of_state(physical, sectors, psi_plus, "psi_plus");
  report.charge_minus = sector_of_state(physical, sectors, psi_minus, "psi_minus");
  report.distinct_sectors = report.charge_plus != report.charge_minus;
  report.observable_count = observables.size();

  const Vector& plus = psi_plus.amplitudes();
  const Vector& minus = psi_minus.amplitudes();
  const Vector superposed = (plus + minus) / std::sqrt(2.0);
  const double superposed_norm2 = superposed.squaredNorm();
  const std::vector<double> charge = total_charge(spec).diagonal;

  for (const auto& op : observables) {
    if (op.dim() != spec.flat_dim()) throw DimensionError("superselection_report: observable has wrong dimension");
    const Matrix& o = op.matrix();
    report.max_cross = std::max(report.max_cross, std::abs(plus.dot(o * minus)));

    const Complex in_superposition = superposed.dot(o * superposed) / superposed_norm2;
    const Complex in_mixture = 0.5 * (plus.dot(o * plus) + minus.dot(o * minus));
    report.max_mixture_deviation = std::max(report.max_mixture_deviation, std::abs(in_superposition - in_mixture));

    for (Eigen::Index a = 0; a < o.rows(); ++a) {
      for (Eigen::Index b = 0; b < o.cols(); ++b) {
        const double dq = charge[static_cast<std::size_t>(b)] - charge[static_cast<std::size_t>(a)];
        if (dq != 0.0) report.max_charge_commutator = std::max(report.max_charge_commutator, std::abs(o(a, b) * dq));
      }
    }
  }
  return report;
}

StateVector charge_phase_action(const SectorDecomposition& decomposition, const StateVector& state,
                                double theta) {
  std::unordered_map<std::size_t, int> charge_of;
  for (const auto& [charge, members] : decomposition.sectors) {
    for (auto f : members) charge_of.emplace(f, charge);
  }
  Vector out = state.amplitudes();
  for (Eigen::Index f = 0; f < out.size(); ++f) {
    if (out(f) == Complex(0.0)) continue;
    const auto it = charge_of.find(static_cast<std::size_t>(f));
    if (it == charge_of.end()) {
      if (std::abs(out(f)) > kExactTolerance) {
        throw DomainError("charge_phase_action: state has support outside the physical subspace");
      }
      continue;
    }
    out(f) *= std::exp(Complex(0.0, it->second * theta));
  }
  return StateVector(state.layout(), std::move(out));
}

StateVector apply_gauge_transformation(const LatticeSpec& spec, const GaugeFunction& xi,
                                       const StateVector& state) {
  if (state.dim() != spec.flat_dim()) throw DimensionError("apply_gauge_transformation: wrong dimension");
  const DiagonalOperator generator = gauge_generator(spec, xi);
  Vector out = state.amplitudes();
  for (Eigen::Index f = 0; f < out.size(); ++f) {
    out(f) *= std::exp(Complex(0.0, generator.diagonal[static_cast<std::size_t>(f)]));
  }
  return StateVector(state.layout(), std::move(out));
}

}  // namespace qdeco::lattice
