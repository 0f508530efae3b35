#pragma once

// System / apparatus / environment correlations and their reduced
// descriptions, plus a central qubit dephased by a finite spin bath.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qdeco/hilbert.hpp"

namespace qdeco::decoherence {

using hilbert::Complex;
using hilbert::DensityMatrix;
using hilbert::StateVector;

inline constexpr double kStateNormTolerance = 1e-9;
inline constexpr std::size_t kMaxDenseBathSize = 12;

// Branches of sum_n c_n |phi_n> (x) |Phi_n> (x) |E_n>. Environment states need
// not be orthogonal; the total norm is validated, never silently fixed.
struct CorrelatedStateSpec {
  std::vector<Complex> coefficients;
  std::vector<StateVector> system_states;
  std::vector<StateVector> apparatus_states;
  std::vector<StateVector> environment_states;
};

// Throws DimensionError for ragged lists or inconsistent dimensions.
void check_shape(const CorrelatedStateSpec& spec);

// sum_{n,m} conj(c_n) c_m <phi_n|phi_m><Phi_n|Phi_m><E_n|E_m>, from the Gram
// matrices alone.
double total_norm_squared(const CorrelatedStateSpec& spec);

StateVector build_correlated_state(const CorrelatedStateSpec& spec);

// Trace over the environment of an (S, A, E...) state: the first two factors
// are kept, every later factor belongs to the environment.
DensityMatrix reduce_to_apparatus(const StateVector& total);

Complex environment_overlap(const CorrelatedStateSpec& spec, std::size_t n, std::size_t m);

// Orthonormal system and apparatus pointer states |n>, and environment states
// with <E_n|E_m> = overlap for every n != m (0 <= overlap <= 1).
CorrelatedStateSpec uniform_overlap_spec(std::span<const Complex> coefficients, double overlap);

class SpinBathModel {
 public:
  SpinBathModel(std::vector<double> couplings, Complex c0, Complex c1);

  // c0 = c1 = 1/sqrt(2).
  static SpinBathModel equal_weights(std::vector<double> couplings);

  std::size_t bath_size() const { return couplings_.size(); }
  const std::vector<double>& couplings() const { return couplings_; }
  Complex c0() const { return c0_; }
  Complex c1() const { return c1_; }

 private:
  std::vector<double> couplings_;
  Complex c0_;
  Complex c1_;
};

struct DephasingCurve {
  std::vector<double> times;
  std::vector<double> coherence;
  std::vector<double> entropy;
};

// |r(t)| = prod_k |cos(g_k t)|.
double spin_bath_coherence(const SpinBathModel& model, double t);

// Full (system (x) bath) state at time t under
// H = sigma_z (x) sum_k (g_k / 2) sigma_z^(k), starting from
// (c0|0> + c1|1>) (x) |+>^N. Layout: system qubit first, then bath spins.
StateVector spin_bath_state(const SpinBathModel& model, double t);

DephasingCurve spin_bath_evolve(const SpinBathModel& model, std::span<const double> times);

// h(p) in nats.
double binary_entropy(double p);

struct EntropyCurveReport {
  std::size_t points = 0;
  // max_t |S(t) - h((1 - |r(t)|) / 2)|
  double max_deviation = 0.0;
  // S is nonincreasing when the samples are sorted by increasing |r|.
  bool monotone = true;

  bool passed(double tol = 1e-9) const { return monotone && max_deviation <= tol; }
};

EntropyCurveReport entropy_curve(const DephasingCurve& curve);

// n + 1 evenly spaced times covering [0, t_max].
std::vector<double> time_grid(double t_max, std::size_t steps);

}  // namespace qdeco::decoherence
