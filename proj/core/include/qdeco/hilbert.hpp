#pragma once

// Dense linear algebra on finite tensor-product Hilbert spaces.
//
// Index convention: the leftmost tensor factor varies slowest in the flat
// index. Every other module in qdeco builds on this convention.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdeco::hilbert {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-10;

class TensorLayout {
 public:
  TensorLayout() = default;
  explicit TensorLayout(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t factor_count() const { return dims_.size(); }
  std::size_t dim(std::size_t factor) const;
  std::size_t flat_dim() const { return flat_dim_; }

  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const std::size_t> multi) const;

  TensorLayout concat(const TensorLayout& other) const;
  // Layout of the listed factors, in the order given.
  TensorLayout select(std::span<const std::size_t> factors) const;

  bool operator==(const TensorLayout& other) const { return dims_ == other.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t flat_dim_ = 1;
};

class StateVector {
 public:
  StateVector(TensorLayout layout, Vector amplitudes);

  static StateVector basis(TensorLayout layout, std::size_t flat_index);
  static StateVector qubit(Complex zero, Complex one);

  const TensorLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kNormTolerance) const;

 private:
  TensorLayout layout_;
  Vector amplitudes_;
};

class Operator {
 public:
  Operator(TensorLayout layout, Matrix entries);

  static Operator identity(TensorLayout layout);

  const TensorLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return entries_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }

  bool is_hermitian(double tol = kHermitianTolerance) const;
  bool is_unitary(double tol = 1e-9) const;

 private:
  TensorLayout layout_;
  Matrix entries_;
};

// Hermitian, unit trace, positive semidefinite; checked on construction.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(TensorLayout layout, Matrix entries);

  const TensorLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return entries_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }

 private:
  struct Trusted {};
  DensityMatrix(TensorLayout layout, Matrix entries, Trusted);

  TensorLayout layout_;
  Matrix entries_;

  friend DensityMatrix outer_product(const StateVector& psi);
  friend DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
};

struct Eigensystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
};

// Largest elementwise |m - m^dagger|.
double hermiticity_defect(const Matrix& m);

Complex inner_product(const StateVector& bra, const StateVector& ket);
Complex matrix_element(const StateVector& bra, const Operator& op, const StateVector& ket);
Complex expectation(const DensityMatrix& rho, const Operator& op);

StateVector tensor_product(const StateVector& a, const StateVector& b);
StateVector tensor_product(std::span<const StateVector> factors);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// |psi><psi|; psi must be normalized to kNormTolerance.
DensityMatrix outer_product(const StateVector& psi);

// Traces out every factor not listed in `keep`. The kept factors stay in
// their original order regardless of the order they are listed in.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
// Same result as partial_trace(outer_product(psi), keep) without forming the
// full projector.
DensityMatrix partial_trace(const StateVector& psi, std::span<const std::size_t> keep);

Eigensystem hermitian_eigendecomposition(const Matrix& m);
Eigensystem hermitian_eigendecomposition(const Operator& op);
Eigensystem hermitian_eigendecomposition(const DensityMatrix& rho);

// Entropy in nats (k_B = 1).
double von_neumann_entropy(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);
// max_{i != j} |rho_ij| / sqrt(rho_ii rho_jj).
double coherence_norm(const DensityMatrix& rho);

}  // namespace qdeco::hilbert
