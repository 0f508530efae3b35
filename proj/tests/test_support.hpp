#pragma once

// Seeded generators shared by the unit and acceptance suites.

#include <cmath>
#include <random>
#include <vector>

#include "qdeco/hilbert.hpp"

namespace qdeco::testing {

using hilbert::Complex;
using hilbert::Matrix;
using hilbert::Vector;

inline Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v;
}

inline hilbert::StateVector random_state(std::mt19937_64& rng, std::vector<std::size_t> dims) {
  hilbert::TensorLayout layout(std::move(dims));
  Vector v = random_vector(rng, layout.flat_dim());
  v.normalize();
  return hilbert::StateVector(layout, v);
}

inline Matrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < a.cols(); ++j) a.col(j) = random_vector(rng, n);
  return 0.5 * (a + a.adjoint());
}

// Mixed state W W^dagger / Tr, with W of the given rank.
inline hilbert::DensityMatrix random_density(std::mt19937_64& rng, std::vector<std::size_t> dims,
                                             std::size_t rank) {
  hilbert::TensorLayout layout(std::move(dims));
  const auto n = static_cast<Eigen::Index>(layout.flat_dim());
  Matrix w(n, static_cast<Eigen::Index>(rank));
  for (Eigen::Index j = 0; j < w.cols(); ++j) w.col(j) = random_vector(rng, layout.flat_dim());
  Matrix rho = w * w.adjoint();
  rho /= rho.trace().real();
  return hilbert::DensityMatrix::from_matrix(layout, 0.5 * (rho + rho.adjoint()));
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace qdeco::testing
