#include "qdeco/decoherence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "qdeco/error.hpp"

namespace qdeco::decoherence {

using hilbert::Matrix;
using hilbert::TensorLayout;
using hilbert::Vector;

namespace {

void check_list(const std::vector<StateVector>& states, std::size_t expected, const char* name) {
  if (states.size() != expected) {
    throw DimensionError(std::string("CorrelatedStateSpec: ") + name + " has " +
                         std::to_string(states.size()) + " entries, expected " +
                         std::to_string(expected));
  }
  for (const auto& s : states) {
    if (!(s.layout() == states.front().layout())) {
      throw DimensionError(std::string("CorrelatedStateSpec: ") + name +
                           " entries have different layouts");
    }
  }
}

Matrix gram(const std::vector<StateVector>& states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = hilbert::inner_product(states[static_cast<std::size_t>(i)],
                                       states[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

}  // namespace

void check_shape(const CorrelatedStateSpec& spec) {
  const std::size_t n = spec.coefficients.size();
  if (n == 0) throw DimensionError("CorrelatedStateSpec: no branches");
  check_list(spec.system_states, n, "system_states");
  check_list(spec.apparatus_states, n, "apparatus_states");
  check_list(spec.environment_states, n, "environment_states");
}

double total_norm_squared(const CorrelatedStateSpec& spec) {
  check_shape(spec);
  const Matrix gs = gram(spec.system_states);
  const Matrix ga = gram(spec.apparatus_states);
  const Matrix ge = gram(spec.environment_states);
  Complex total = 0.0;
  const auto n = static_cast<Eigen::Index>(spec.coefficients.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      total += std::conj(spec.coefficients[static_cast<std::size_t>(i)]) *
               spec.coefficients[static_cast<std::size_t>(j)] * gs(i, j) * ga(i, j) * ge(i, j);
    }
  }
  return total.real();
}

StateVector build_correlated_state(const CorrelatedStateSpec& spec) {
  const double norm2 = total_norm_squared(spec);
  if (std::abs(norm2 - 1.0) > kStateNormTolerance) {
    throw NormalizationError("build_correlated_state: branch sum has norm " +
                             std::to_string(std::sqrt(std::max(norm2, 0.0))) +
                             " (norm^2 " + std::to_string(norm2) + "), expected 1");
  }
  const TensorLayout layout = spec.system_states.front()
                                  .layout()
                                  .concat(spec.apparatus_states.front().layout())
                                  .concat(spec.environment_states.front().layout());
  Vector total = Vector::Zero(static_cast<Eigen::Index>(layout.flat_dim()));
  for (std::size_t n = 0; n < spec.coefficients.size(); ++n) {
    const std::array<StateVector, 3> factors{spec.system_states[n], spec.apparatus_states[n],
                                             spec.environment_states[n]};
    total += spec.coefficients[n] * hilbert::tensor_product(factors).amplitudes();
  }
  return StateVector(layout, std::move(total));
}

DensityMatrix reduce_to_apparatus(const StateVector& total) {
  if (total.layout().factor_count() < 3) {
    throw DimensionError("reduce_to_apparatus: expected a (system, apparatus, environment...) layout, got " +
                         std::to_string(total.layout().factor_count()) + " factors");
  }
  const std::array<std::size_t, 2> keep{0, 1};
  return hilbert::partial_trace(total, keep);
}

Complex environment_overlap(const CorrelatedStateSpec& spec, std::size_t n, std::size_t m) {
  const auto& env = spec.environment_states;
  if (n >= env.size() || m >= env.size()) {
    throw IndexError("environment_overlap: branch index out of range");
  }
  return hilbert::inner_product(env[n], env[m]);
}

CorrelatedStateSpec uniform_overlap_spec(std::span<const Complex> coefficients, double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw DomainError("uniform_overlap_spec: overlap must lie in [0, 1], got " + std::to_string(overlap));
  }
  const std::size_t n = coefficients.size();
  if (n == 0) throw DimensionError("uniform_overlap_spec: no coefficients");
  CorrelatedStateSpec spec;
  spec.coefficients.assign(coefficients.begin(), coefficients.end());
  const TensorLayout pointer({n});
  const TensorLayout environment({n + 1});
  for (std::size_t k = 0; k < n; ++k) {
    spec.system_states.push_back(StateVector::basis(pointer, k));
    spec.apparatus_states.push_back(StateVector::basis(pointer, k));
    // sqrt(r)|0> + sqrt(1 - r)|k + 1>: a shared component carries the overlap.
    Vector e = Vector::Zero(static_cast<Eigen::Index>(n + 1));
    e(0) = std::sqrt(overlap);
    e(static_cast<Eigen::Index>(k + 1)) = std::sqrt(1.0 - overlap);
    spec.environment_states.emplace_back(environment, std::move(e));
  }
  return spec;
}

SpinBathModel::SpinBathModel(std::vector<double> couplings, Complex c0, Complex c1)
    : couplings_(std::move(couplings)), c0_(c0), c1_(c1) {
  if (couplings_.empty()) throw DimensionError("SpinBathModel: bath must contain at least one spin");
  for (double g : couplings_) {
    if (!std::isfinite(g)) throw DomainError("SpinBathModel: non-finite coupling");
  }
  const double weight = std::norm(c0_) + std::norm(c1_);
  if (std::abs(weight - 1.0) > hilbert::kNormTolerance) {
    throw NormalizationError("SpinBathModel: |c0|^2 + |c1|^2 = " + std::to_string(weight));
  }
}

SpinBathModel SpinBathModel::equal_weights(std::vector<double> couplings) {
  const double a = 1.0 / std::sqrt(2.0);
  return SpinBathModel(std::move(couplings), a, a);
}

double spin_bath_coherence(const SpinBathModel& model, double t) {
  if (t < 0.0) throw DomainError("spin_bath_coherence: negative time");
  double r = 1.0;
  for (double g : model.couplings()) r *= std::abs(std::cos(g * t));
  return r;
}

StateVector spin_bath_state(const SpinBathModel& model, double t) {
  const std::size_t n = model.bath_size();
  if (n > kMaxDenseBathSize) {
    throw DimensionError("spin_bath_state: bath of " + std::to_string(n) +
                         " spins exceeds the dense limit of " + std::to_string(kMaxDenseBathSize));
  }
  if (t < 0.0) throw DomainError("spin_bath_state: negative time");

  const std::size_t bath_dim = std::size_t{1} << n;
  const double bath_amp = std::pow(0.5, 0.5 * static_cast<double>(n));
  const std::array<Complex, 2> system_amp{model.c0(), model.c1()};
  Vector psi(static_cast<Eigen::Index>(2 * bath_dim));

  // Basis state |s, b_1 ... b_N>: bit value 0 has sigma_z = +1. Bath spin k is
  // factor k + 1, i.e. bit (N - 1 - k) of the bath index.
  for (std::size_t s = 0; s < 2; ++s) {
    const double zs = s == 0 ? 1.0 : -1.0;
    for (std::size_t b = 0; b < bath_dim; ++b) {
      double field = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const bool down = (b >> (n - 1 - k)) & 1U;
        field += 0.5 * model.couplings()[k] * (down ? -1.0 : 1.0);
      }
      const double energy = zs * field;
      psi(static_cast<Eigen::Index>(s * bath_dim + b)) =
          system_amp[s] * bath_amp * std::exp(Complex(0.0, -energy * t));
    }
  }
  std::vector<std::size_t> dims(n + 1, 2);
  return StateVector(TensorLayout(std::move(dims)), std::move(psi));
}

DephasingCurve spin_bath_evolve(const SpinBathModel& model, std::span<const double> times) {
  if (model.bath_size() > kMaxDenseBathSize) {
    throw DimensionError("spin_bath_evolve: bath of " + std::to_string(model.bath_size()) +
                         " spins exceeds the dense limit of " + std::to_string(kMaxDenseBathSize));
  }
  DephasingCurve curve;
  curve.times.reserve(times.size());
  curve.coherence.reserve(times.size());
  curve.entropy.reserve(times.size());
  const std::array<std::size_t, 1> system{0};
  for (double t : times) {
    if (t < 0.0) throw DomainError("spin_bath_evolve: negative time");
    const StateVector psi = spin_bath_state(model, t);
    const DensityMatrix rho = hilbert::partial_trace(psi, system);
    curve.times.push_back(t);
    curve.coherence.push_back(hilbert::coherence_norm(rho));
    curve.entropy.push_back(hilbert::von_neumann_entropy(rho));
  }
  return curve;
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("binary_entropy: p outside [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

EntropyCurveReport entropy_curve(const DephasingCurve& curve) {
  const std::size_t n = curve.times.size();
  if (curve.coherence.size() != n || curve.entropy.size() != n) {
    throw DimensionError("entropy_curve: times, coherence and entropy lengths differ");
  }
  EntropyCurveReport report;
  report.points = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::clamp(curve.coherence[i], 0.0, 1.0);
    const double closed_form = binary_entropy(0.5 * (1.0 - r));
    report.max_deviation = std::max(report.max_deviation, std::abs(curve.entropy[i] - closed_form));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return curve.coherence[a] < curve.coherence[b]; });
  // Samples with (numerically) equal |r| may come in any order.
  constexpr double slack = 1e-9;
  for (std::size_t i = 1; i < n; ++i) {
    if (curve.entropy[order[i]] > curve.entropy[order[i - 1]] + slack) {
      report.monotone = false;
      break;
    }
  }
  return report;
}

std::vector<double> time_grid(double t_max, std::size_t steps) {
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw DomainError("time_grid: t_max must be >= 0");
  if (steps == 0) return {0.0};
  std::vector<double> times(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    times[i] = t_max * static_cast<double>(i) / static_cast<double>(steps);
  }
  return times;
}

}  // namespace qdeco::decoherence
