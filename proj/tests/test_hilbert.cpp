#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qdeco/error.hpp"
#include "qdeco/hilbert.hpp"
#include "test_support.hpp"

using namespace qdeco;
using namespace qdeco::hilbert;
using qdeco::testing::max_abs;

namespace {

// Brute-force partial trace of a two-factor (dA x dB) matrix over B, written
// with explicit index arithmetic rather than through TensorLayout.
Matrix trace_second_factor(const Matrix& rho, std::size_t da, std::size_t db) {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t b = 0; b < db; ++b)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            rho(static_cast<Eigen::Index>(i * db + b), static_cast<Eigen::Index>(j * db + b));
  return out;
}

const double kSqrtHalf = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("tensor layout flat/multi index round trip") {
  const TensorLayout layout({2, 3, 4});
  CHECK(layout.flat_dim() == 24);
  for (std::size_t f = 0; f < layout.flat_dim(); ++f) {
    CHECK(layout.flatten(layout.unflatten(f)) == f);
  }
  // Leftmost factor slowest.
  const std::array<std::size_t, 3> multi{1, 0, 2};
  CHECK(layout.flatten(multi) == 1 * 12 + 0 * 4 + 2);
  CHECK_THROWS_AS(TensorLayout({2, 0}), DimensionError);
  CHECK_THROWS_AS(layout.unflatten(24), IndexError);
}

TEST_CASE("tensor product of basis states and superpositions") {
  const auto zero = StateVector::qubit(1.0, 0.0);
  const auto one = StateVector::qubit(0.0, 1.0);
  const auto p = tensor_product(zero, one);
  CHECK(p.layout().dims() == std::vector<std::size_t>{2, 2});
  CHECK(p.amplitudes()(1) == Complex(1.0));
  CHECK(p.amplitudes().cwiseAbs().sum() == doctest::Approx(1.0));

  const Complex alpha(0.6, 0.0), beta(0.0, 0.8);
  const auto q = tensor_product(StateVector::qubit(alpha, beta), zero);
  CHECK(q.amplitudes()(0) == alpha);
  CHECK(q.amplitudes()(1) == Complex(0.0));
  CHECK(q.amplitudes()(2) == beta);
  CHECK(q.amplitudes()(3) == Complex(0.0));

  std::mt19937_64 rng(11);
  const auto a = qdeco::testing::random_state(rng, {2});
  const auto b = qdeco::testing::random_state(rng, {3});
  CHECK(std::abs(tensor_product(a, b).norm() - 1.0) <= 1e-12);
}

TEST_CASE("outer product") {
  const auto rho0 = outer_product(StateVector::qubit(1.0, 0.0));
  CHECK(max_abs(rho0.matrix() - Matrix{{1.0, 0.0}, {0.0, 0.0}}) == 0.0);

  const auto plus = outer_product(StateVector::qubit(kSqrtHalf, kSqrtHalf));
  CHECK(max_abs(plus.matrix() - Matrix::Constant(2, 2, 0.5)) <= 1e-15);
  CHECK(purity(plus) == doctest::Approx(1.0).epsilon(1e-12));

  const auto r = outer_product(StateVector::qubit(std::sqrt(0.3), std::sqrt(0.7)));
  CHECK(r.matrix()(0, 0).real() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(r.matrix()(1, 1).real() == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(std::abs(r.matrix()(0, 1) - 0.458257569495584) <= 1e-14);  // sqrt(0.21)

  CHECK_THROWS_AS(outer_product(StateVector::qubit(1.0, 1.0)), NormalizationError);
}

TEST_CASE("partial trace examples") {
  const std::array<std::size_t, 1> first{0};
  Vector bell = Vector::Zero(4);
  bell(0) = kSqrtHalf;
  bell(3) = kSqrtHalf;
  const auto reduced = partial_trace(outer_product(StateVector(TensorLayout({2, 2}), bell)), first);
  CHECK(max_abs(reduced.matrix() - Matrix{{0.5, 0.0}, {0.0, 0.5}}) <= 1e-15);

  Vector skewed = Vector::Zero(4);
  skewed(0) = std::sqrt(0.3);
  skewed(3) = std::sqrt(0.7);
  const StateVector psi(TensorLayout({2, 2}), skewed);
  const auto r = partial_trace(outer_product(psi), first);
  const Matrix oracle = trace_second_factor(outer_product(psi).matrix(), 2, 2);
  CHECK(max_abs(r.matrix() - oracle) <= 1e-15);
  CHECK(r.matrix()(0, 0).real() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(std::abs(r.matrix()(0, 1)) == 0.0);

  std::mt19937_64 rng(7);
  const auto sigma = qdeco::testing::random_density(rng, {3}, 2);
  const auto tau = qdeco::testing::random_density(rng, {2}, 2);
  CHECK(max_abs(partial_trace(tensor_product(sigma, tau), first).matrix() - sigma.matrix()) <= 1e-12);
}

TEST_CASE("partial trace errors") {
  std::mt19937_64 rng(3);
  const auto rho = qdeco::testing::random_density(rng, {2, 2}, 2);
  CHECK_THROWS_AS(partial_trace(rho, std::span<const std::size_t>{}), IndexError);
  const std::array<std::size_t, 1> bad{2};
  CHECK_THROWS_AS(partial_trace(rho, bad), IndexError);
}

TEST_CASE("partial trace agrees with brute-force contraction on random states") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = qdeco::testing::random_state(rng, {3, 4});
    const std::array<std::size_t, 1> first{0};
    const Matrix oracle = trace_second_factor(outer_product(psi).matrix(), 3, 4);
    CHECK(max_abs(partial_trace(outer_product(psi), first).matrix() - oracle) <= 1e-12);
    CHECK(max_abs(partial_trace(psi, first).matrix() - oracle) <= 1e-12);
  }
}

TEST_CASE("partial trace: order of tracing does not matter") {
  std::mt19937_64 rng(99);
  const auto rho = qdeco::testing::random_density(rng, {2, 3, 2}, 4);
  const std::array<std::size_t, 1> s{0};
  const std::array<std::size_t, 2> sa{0, 1};
  const std::array<std::size_t, 2> se{0, 2};
  const std::array<std::size_t, 2> as_reversed{1, 0};

  const Matrix joint = partial_trace(rho, s).matrix();
  const Matrix e_then_a = partial_trace(partial_trace(rho, sa), s).matrix();
  const Matrix a_then_e = partial_trace(partial_trace(rho, se), s).matrix();
  CHECK(max_abs(joint - e_then_a) <= 1e-12);
  CHECK(max_abs(joint - a_then_e) <= 1e-12);
  // Listing order of kept factors is irrelevant.
  CHECK(max_abs(partial_trace(rho, sa).matrix() - partial_trace(rho, as_reversed).matrix()) == 0.0);
}

TEST_CASE("partial trace preserves trace and positivity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = qdeco::testing::random_density(rng, {2, 2, 3}, 3);
    const std::array<std::size_t, 2> keep{0, 2};
    const auto r = partial_trace(rho, keep);
    CHECK(std::abs(r.matrix().trace() - 1.0) <= 1e-12);
    CHECK(hermitian_eigendecomposition(r).values.front() >= -1e-9);
  }
}

TEST_CASE("hermitian eigendecomposition") {
  const auto diag = hermitian_eigendecomposition(Matrix{{0.3, 0.0}, {0.0, 0.7}});
  CHECK(diag.values[0] == doctest::Approx(0.3));
  CHECK(diag.values[1] == doctest::Approx(0.7));

  const auto pauli_x = hermitian_eigendecomposition(Matrix{{0.0, 1.0}, {1.0, 0.0}});
  CHECK(pauli_x.values[0] == doctest::Approx(-1.0));
  CHECK(pauli_x.values[1] == doctest::Approx(1.0));

  CHECK_THROWS_AS(hermitian_eigendecomposition(Matrix{{0.0, 1.0}, {0.0, 0.0}}), InvariantError);
}

TEST_CASE("hermitian eigendecomposition: reconstruction, unitarity, spectral sums") {
  std::mt19937_64 rng(8);
  for (std::size_t n : {2u, 5u, 8u, 40u}) {
    const Matrix m = qdeco::testing::random_hermitian(rng, n);
    const auto eig = hermitian_eigendecomposition(m);
    Vector lambda(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) lambda(static_cast<Eigen::Index>(k)) = eig.values[k];
    const Matrix rebuilt = eig.vectors * lambda.asDiagonal() * eig.vectors.adjoint();
    CHECK(max_abs(m - rebuilt) <= 1e-9);
    CHECK(max_abs(eig.vectors.adjoint() * eig.vectors - Matrix::Identity(m.rows(), m.cols())) <= 1e-9);
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));

    double sum = 0.0, sum_sq = 0.0;
    for (double v : eig.values) {
      sum += v;
      sum_sq += v * v;
    }
    CHECK(std::abs(sum - m.trace().real()) <= 1e-10);
    CHECK(std::abs(sum_sq - m.squaredNorm()) <= 1e-9);
  }
}

TEST_CASE("von Neumann entropy") {
  std::mt19937_64 rng(21);
  CHECK(von_neumann_entropy(outer_product(qdeco::testing::random_state(rng, {5}))) <= 1e-9);
  const auto mixed = DensityMatrix::from_matrix(TensorLayout({2}), Matrix{{0.5, 0.0}, {0.0, 0.5}});
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  const auto skewed = DensityMatrix::from_matrix(TensorLayout({2}), Matrix{{0.3, 0.0}, {0.0, 0.7}});
  // -0.3 ln 0.3 - 0.7 ln 0.7
  CHECK(std::abs(von_neumann_entropy(skewed) - 0.6108643020548935) <= 1e-12);
}

TEST_CASE("entropy bounds and additivity") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sigma = qdeco::testing::random_density(rng, {3}, 3);
    const auto tau = qdeco::testing::random_density(rng, {2}, 2);
    const double s_joint = von_neumann_entropy(tensor_product(sigma, tau));
    CHECK(std::abs(s_joint - von_neumann_entropy(sigma) - von_neumann_entropy(tau)) <= 1e-9);
    CHECK(s_joint >= 0.0);
    CHECK(s_joint <= std::log(6.0) + 1e-9);
  }
}

TEST_CASE("product state has zero reduced entropy") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = tensor_product(qdeco::testing::random_state(rng, {2}), qdeco::testing::random_state(rng, {3}));
    const std::array<std::size_t, 1> first{0};
    CHECK(von_neumann_entropy(partial_trace(outer_product(psi), first)) <= 1e-9);
  }
}

TEST_CASE("coherence norm") {
  const auto diag = DensityMatrix::from_matrix(TensorLayout({2}), Matrix{{0.3, 0.0}, {0.0, 0.7}});
  CHECK(coherence_norm(diag) == 0.0);
  CHECK(coherence_norm(outer_product(StateVector::qubit(kSqrtHalf, kSqrtHalf))) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // Branches with environment overlap 0.2 and equal weights: rho_01 = 0.5 * 0.2.
  const auto partly = DensityMatrix::from_matrix(TensorLayout({2}), Matrix{{0.5, 0.1}, {0.1, 0.5}});
  CHECK(coherence_norm(partly) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("purity") {
  std::mt19937_64 rng(6);
  CHECK(purity(outer_product(qdeco::testing::random_state(rng, {4}))) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(DensityMatrix::from_matrix(TensorLayout({2}), Matrix{{0.5, 0.0}, {0.0, 0.5}})) ==
        doctest::Approx(0.5));
  CHECK(purity(DensityMatrix::from_matrix(TensorLayout({2}), Matrix{{0.3, 0.0}, {0.0, 0.7}})) ==
        doctest::Approx(0.58).epsilon(1e-14));
  const auto r = qdeco::testing::random_density(rng, {5}, 3);
  CHECK(purity(r) >= 0.2 - 1e-12);
  CHECK(purity(r) <= 1.0 + 1e-10);
}

TEST_CASE("density matrix invariants are enforced") {
  CHECK_THROWS_AS(DensityMatrix::from_matrix(TensorLayout({2}), Matrix{{0.5, 0.1}, {0.2, 0.5}}), InvariantError);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(TensorLayout({2}), Matrix{{0.6, 0.0}, {0.0, 0.6}}), InvariantError);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(TensorLayout({2}), Matrix{{1.2, 0.0}, {0.0, -0.2}}), InvariantError);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(TensorLayout({3}), Matrix{{1.0, 0.0}, {0.0, 0.0}}), DimensionError);
}

TEST_CASE("operator predicates") {
  const Operator x(TensorLayout({2}), Matrix{{0.0, 1.0}, {1.0, 0.0}});
  CHECK(x.is_hermitian());
  CHECK(x.is_unitary());
  const Operator raise(TensorLayout({2}), Matrix{{0.0, 1.0}, {0.0, 0.0}});
  CHECK_FALSE(raise.is_hermitian());
  CHECK_FALSE(raise.is_unitary());
}

}  // TEST_SUITE
