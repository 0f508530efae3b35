#include "qdeco/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "qdeco/error.hpp"

namespace qdeco::hilbert {

namespace {

std::string describe(const TensorLayout& layout) {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < layout.factor_count(); ++k) {
    out << (k ? "," : "") << layout.dim(k);
  }
  out << ')';
  return out.str();
}

std::vector<std::size_t> normalize_keep(const TensorLayout& layout,
                                        std::span<const std::size_t> keep) {
  if (keep.empty()) throw IndexError("partial_trace: keep set is empty");
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.back() >= layout.factor_count()) {
    throw IndexError("partial_trace: factor " + std::to_string(sorted.back()) +
                     " out of range for layout " + describe(layout));
  }
  return sorted;
}

// Splits every flat index of `layout` into (kept flat index, traced flat index).
struct Split {
  TensorLayout kept;
  TensorLayout traced;
  std::vector<std::size_t> kept_index;
  std::vector<std::size_t> traced_index;
};

Split split_layout(const TensorLayout& layout, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < layout.factor_count(); ++k) {
    if (!std::binary_search(keep.begin(), keep.end(), k)) rest.push_back(k);
  }
  Split s{layout.select(keep), layout.select(rest), {}, {}};
  s.kept_index.resize(layout.flat_dim());
  s.traced_index.resize(layout.flat_dim());
  std::vector<std::size_t> km(keep.size());
  std::vector<std::size_t> rm(rest.size());
  for (std::size_t f = 0; f < layout.flat_dim(); ++f) {
    const auto multi = layout.unflatten(f);
    for (std::size_t i = 0; i < keep.size(); ++i) km[i] = multi[keep[i]];
    for (std::size_t i = 0; i < rest.size(); ++i) rm[i] = multi[rest[i]];
    s.kept_index[f] = s.kept.flatten(km);
    s.traced_index[f] = s.traced.flatten(rm);
  }
  return s;
}

void check_square(const TensorLayout& layout, const Matrix& m, const char* what) {
  const auto n = static_cast<Eigen::Index>(layout.flat_dim());
  if (m.rows() != m.cols() || m.rows() != n) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " but layout " + describe(layout) +
                         " has flat dimension " + std::to_string(n));
  }
}

}  // namespace

TensorLayout::TensorLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  strides_.assign(dims_.size(), 1);
  flat_dim_ = 1;
  for (std::size_t k = dims_.size(); k-- > 0;) {
    if (dims_[k] == 0) throw DimensionError("TensorLayout: factor dimensions must be >= 1");
    strides_[k] = flat_dim_;
    flat_dim_ *= dims_[k];
  }
}

std::size_t TensorLayout::dim(std::size_t factor) const {
  if (factor >= dims_.size()) {
    throw IndexError("TensorLayout: factor " + std::to_string(factor) + " out of range");
  }
  return dims_[factor];
}

std::vector<std::size_t> TensorLayout::unflatten(std::size_t flat) const {
  if (flat >= flat_dim_) throw IndexError("TensorLayout: flat index out of range");
  std::vector<std::size_t> multi(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    multi[k] = flat / strides_[k];
    flat %= strides_[k];
  }
  return multi;
}

std::size_t TensorLayout::flatten(std::span<const std::size_t> multi) const {
  if (multi.size() != dims_.size()) {
    throw DimensionError("TensorLayout: multi-index has wrong number of factors");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (multi[k] >= dims_[k]) throw IndexError("TensorLayout: multi-index out of range");
    flat += multi[k] * strides_[k];
  }
  return flat;
}

TensorLayout TensorLayout::concat(const TensorLayout& other) const {
  auto dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return TensorLayout(std::move(dims));
}

TensorLayout TensorLayout::select(std::span<const std::size_t> factors) const {
  std::vector<std::size_t> dims;
  dims.reserve(factors.size());
  for (auto f : factors) dims.push_back(dim(f));
  return TensorLayout(std::move(dims));
}

StateVector::StateVector(TensorLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.flat_dim()) {
    throw DimensionError("StateVector: " + std::to_string(amplitudes_.size()) +
                         " amplitudes for layout " + describe(layout_));
  }
  if (!amplitudes_.allFinite()) throw DomainError("StateVector: non-finite amplitude");
}

StateVector StateVector::basis(TensorLayout layout, std::size_t flat_index) {
  if (flat_index >= layout.flat_dim()) throw IndexError("StateVector::basis: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.flat_dim()));
  v(static_cast<Eigen::Index>(flat_index)) = 1.0;
  return StateVector(std::move(layout), std::move(v));
}

StateVector StateVector::qubit(Complex zero, Complex one) {
  Vector v(2);
  v << zero, one;
  return StateVector(TensorLayout({2}), std::move(v));
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Operator::Operator(TensorLayout layout, Matrix entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
  check_square(layout_, entries_, "Operator");
}

Operator Operator::identity(TensorLayout layout) {
  const auto n = static_cast<Eigen::Index>(layout.flat_dim());
  return Operator(std::move(layout), Matrix::Identity(n, n));
}

bool Operator::is_hermitian(double tol) const { return hermiticity_defect(entries_) <= tol; }

bool Operator::is_unitary(double tol) const {
  const Matrix defect = entries_.adjoint() * entries_ - Matrix::Identity(entries_.rows(), entries_.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(TensorLayout layout, Matrix entries, Trusted)
    : layout_(std::move(layout)), entries_(std::move(entries)) {}

DensityMatrix DensityMatrix::from_matrix(TensorLayout layout, Matrix entries) {
  check_square(layout, entries, "DensityMatrix");
  const double herm = hermiticity_defect(entries);
  if (herm > kHermitianTolerance) {
    throw InvariantError("DensityMatrix: not Hermitian (max deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = entries.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw InvariantError("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  const auto eig = hermitian_eigendecomposition(entries);
  if (!eig.values.empty() && eig.values.front() < -kPositivityTolerance) {
    throw InvariantError("DensityMatrix: negative eigenvalue " + std::to_string(eig.values.front()));
  }
  return DensityMatrix(std::move(layout), std::move(entries), Trusted{});
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermiticity_defect: matrix is not square");
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.dim() != ket.dim()) throw DimensionError("inner_product: dimension mismatch");
  return bra.amplitudes().dot(ket.amplitudes());  // Eigen conjugates the left argument
}

Complex matrix_element(const StateVector& bra, const Operator& op, const StateVector& ket) {
  if (bra.dim() != op.dim() || ket.dim() != op.dim()) {
    throw DimensionError("matrix_element: dimension mismatch");
  }
  return bra.amplitudes().dot(op.matrix() * ket.amplitudes());
}

Complex expectation(const DensityMatrix& rho, const Operator& op) {
  if (rho.dim() != op.dim()) throw DimensionError("expectation: dimension mismatch");
  return (rho.matrix() * op.matrix()).trace();
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  const auto na = a.amplitudes().size();
  const auto nb = b.amplitudes().size();
  Vector v(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  }
  return StateVector(a.layout().concat(b.layout()), std::move(v));
}

StateVector tensor_product(std::span<const StateVector> factors) {
  if (factors.empty()) throw DimensionError("tensor_product: no factors");
  StateVector out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor_product(out, factors[k]);
  return out;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const auto na = a.matrix().rows();
  const auto nb = b.matrix().rows();
  Matrix m(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      m.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    }
  }
  return DensityMatrix(a.layout().concat(b.layout()), std::move(m), DensityMatrix::Trusted{});
}

DensityMatrix outer_product(const StateVector& psi) {
  if (!psi.is_normalized()) {
    throw NormalizationError("outer_product: state norm " + std::to_string(psi.norm()) + " != 1");
  }
  Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(psi.layout(), std::move(m), DensityMatrix::Trusted{});
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const auto kept = normalize_keep(rho.layout(), keep);
  const Split s = split_layout(rho.layout(), kept);
  const std::size_t nk = s.kept.flat_dim();
  const std::size_t nt = s.traced.flat_dim();

  // full_index[t * nk + k] is the flat index with kept part k and traced part t.
  std::vector<std::size_t> full_index(nk * nt);
  for (std::size_t f = 0; f < rho.layout().flat_dim(); ++f) {
    full_index[s.traced_index[f] * nk + s.kept_index[f]] = f;
  }

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t* row = &full_index[t * nk];
    for (std::size_t i = 0; i < nk; ++i) {
      for (std::size_t j = 0; j < nk; ++j) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            m(static_cast<Eigen::Index>(row[i]), static_cast<Eigen::Index>(row[j]));
      }
    }
  }
  return DensityMatrix::from_matrix(s.kept, std::move(out));
}

DensityMatrix partial_trace(const StateVector& psi, std::span<const std::size_t> keep) {
  if (!psi.is_normalized()) {
    throw NormalizationError("partial_trace: state norm " + std::to_string(psi.norm()) + " != 1");
  }
  const auto kept = normalize_keep(psi.layout(), keep);
  const Split s = split_layout(psi.layout(), kept);
  const auto nk = static_cast<Eigen::Index>(s.kept.flat_dim());
  const auto nt = static_cast<Eigen::Index>(s.traced.flat_dim());

  // Reshape psi into a (kept x traced) matrix; rho_kept = M M^dagger.
  Matrix reshaped = Matrix::Zero(nk, nt);
  for (std::size_t f = 0; f < psi.dim(); ++f) {
    reshaped(static_cast<Eigen::Index>(s.kept_index[f]), static_cast<Eigen::Index>(s.traced_index[f])) =
        psi.amplitudes()(static_cast<Eigen::Index>(f));
  }
  Matrix out = reshaped * reshaped.adjoint();
  return DensityMatrix::from_matrix(s.kept, std::move(out));
}

Eigensystem hermitian_eigendecomposition(const Matrix& m) {
  const double herm = hermiticity_defect(m);
  if (herm > kHermitianTolerance) {
    throw InvariantError("hermitian_eigendecomposition: input not Hermitian (max deviation " +
                         std::to_string(herm) + ")");
  }
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw InvariantError("hermitian_eigendecomposition: solver did not converge");
  }
  Eigensystem out;
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  out.vectors = solver.eigenvectors();
  return out;
}

Eigensystem hermitian_eigendecomposition(const Operator& op) {
  return hermitian_eigendecomposition(op.matrix());
}

Eigensystem hermitian_eigendecomposition(const DensityMatrix& rho) {
  return hermitian_eigendecomposition(rho.matrix());
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto eig = hermitian_eigendecomposition(rho);
  double s = 0.0;
  for (double lambda : eig.values) {
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double coherence_norm(const DensityMatrix& rho) {
  const Matrix& m = rho.matrix();
  const Eigen::Index n = m.rows();
  double best = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pi = m(i, i).real();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double weight = pi * m(j, j).real();
      if (weight <= 1e-30) continue;
      best = std::max(best, std::abs(m(i, j)) / std::sqrt(weight));
    }
  }
  return best;
}

}  // namespace qdeco::hilbert
