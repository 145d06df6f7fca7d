// linalg.hpp: dense complex kernel for small multipartite density matrices.
//
// Index convention: in a tensor product A (x) B the index of A varies slowest,
// so for subsystem dims [d0, d1, ..., dk] the flat index is
//   i = ((i0 * d1 + i1) * d2 + i2) ...
// Every module in the library relies on this ordering; the auxiliary qubit of
// the SWAP test is subsystem 0 and therefore selects the 2x2 block structure.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "swapcorr/errors.hpp"

namespace swapcorr {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;
using SubsystemSet = std::vector<std::size_t>;

namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-9;
inline constexpr double rank = 1e-10;
inline constexpr double orth = 1e-9;
inline constexpr double recon = 1e-8;
}  // namespace tol

namespace detail {

inline std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

inline bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Mask over subsystems; throws on out-of-range indices.
inline std::vector<bool> subsystem_mask(const Dims& dims,
                                        const SubsystemSet& subsystems,
                                        const char* what) {
  std::vector<bool> mask(dims.size(), false);
  for (auto s : subsystems) {
    if (s >= dims.size())
      throw InvalidInput(std::string(what) + ": subsystem index " +
                         std::to_string(s) + " out of range (have " +
                         std::to_string(dims.size()) + " subsystems)");
    mask[s] = true;
  }
  return mask;
}

// Row-major digit expansion of a flat index over `dims`.
inline void digits_of(std::size_t index, const Dims& dims,
                      std::vector<std::size_t>& out) {
  out.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
}

inline std::size_t index_of(const std::vector<std::size_t>& digits,
                            const Dims& dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

}  // namespace detail

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in decreasing order.
struct EigDecomposition {
  RealVector values;
  Matrix vectors;  // column i belongs to values[i]
  std::size_t rank = 0;

  Matrix reconstruct() const {
    return vectors * values.cast<cplx>().asDiagonal() * vectors.adjoint();
  }
};

/// Solves the Hermitian eigenproblem for (M + M^dagger) / 2.
inline EigDecomposition eig_hermitian(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw InvalidInput("eig_hermitian: matrix must be square and non-empty");
  if (!detail::all_finite(m))
    throw InvalidInput("eig_hermitian: matrix has non-finite entries");
  const Matrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("eig_hermitian: eigensolver did not converge");

  EigDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  out.rank = static_cast<std::size_t>(
      std::count_if(out.values.begin(), out.values.end(),
                    [](double v) { return v > tol::rank; }));
  return out;
}

/// Eigenvalues only, decreasing.
inline RealVector eigenvalues_hermitian(const Matrix& m) {
  const Matrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("eigenvalues_hermitian: eigensolver did not converge");
  return solver.eigenvalues().reverse();
}

/// Shannon entropy in bits of a spectrum; entries <= tol::rank count as zero.
inline double entropy_bits(const RealVector& spectrum) {
  double s = 0.0;
  for (double p : spectrum)
    if (p > tol::rank) s -= p * std::log2(p);
  return std::max(s, 0.0);
}

inline double binary_entropy(double p) {
  RealVector v(2);
  v << p, 1.0 - p;
  return entropy_bits(v);
}

/// A validated density matrix carrying its subsystem structure.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  DensityMatrix(Matrix entries, Dims dims)
      : entries_(std::move(entries)), dims_(std::move(dims)) {
    check_shape();
    if (!detail::all_finite(entries_))
      throw InvalidInput("density matrix has non-finite entries");
    if (detail::hermiticity_defect(entries_) > tol::herm)
      throw InvalidInput("density matrix is not Hermitian");
    entries_ = (entries_ + entries_.adjoint()).eval() * 0.5;
    if (std::abs(entries_.trace() - cplx(1.0)) > tol::trace)
      throw InvalidInput("density matrix trace is not 1");
    const RealVector ev = eigenvalues_hermitian(entries_);
    if (ev.minCoeff() < -tol::psd)
      throw InvalidInput("density matrix is not positive semidefinite (min eigenvalue " +
                         std::to_string(ev.minCoeff()) + ")");
  }

  /// Single-register convenience: dims = {rows}.
  explicit DensityMatrix(Matrix entries)
      : DensityMatrix(entries, Dims{static_cast<std::size_t>(entries.rows())}) {}

  /// Skips the positivity/trace checks. Only for results of operations that
  /// provably map valid states to valid states (tensor, partial trace,
  /// unitary conjugation).
  static DensityMatrix assume_valid(Matrix entries, Dims dims) {
    DensityMatrix out;
    out.entries_ = std::move(entries);
    out.dims_ = std::move(dims);
    out.check_shape();
    return out;
  }

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return entries_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  DensityMatrix() = default;

  void check_shape() const {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
      throw InvalidInput("density matrix must be square and non-empty");
    if (dims_.empty() ||
        std::any_of(dims_.begin(), dims_.end(), [](auto d) { return d == 0; }))
      throw InvalidInput("subsystem dimensions must be positive");
    if (detail::product(dims_) != static_cast<std::size_t>(entries_.rows()))
      throw InvalidInput("subsystem dimensions do not multiply to the matrix size");
  }

  Matrix entries_;
  Dims dims_;
};

/// Pure state |psi><psi| of a normalized ket.
inline DensityMatrix pure_state(const Vector& ket) {
  const double norm = ket.norm();
  if (norm == 0.0) throw InvalidInput("pure_state: zero vector");
  const Vector v = ket / norm;
  return DensityMatrix::assume_valid(v * v.adjoint(),
                                     Dims{static_cast<std::size_t>(v.size())});
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::assume_valid(kron(a.matrix(), b.matrix()), std::move(dims));
}

/// Traces out every subsystem not listed in `keep`. Kept subsystems retain
/// their original relative order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemSet& keep) {
  if (keep.empty()) throw InvalidInput("partial_trace: keep set is empty");
  const Dims& dims = rho.dims();
  const auto mask = detail::subsystem_mask(dims, keep, "partial_trace");

  Dims kept_dims, traced_dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    (mask[k] ? kept_dims : traced_dims).push_back(dims[k]);

  const std::size_t n = rho.dim();
  std::vector<std::size_t> kept_index(n), traced_index(n);
  std::vector<std::size_t> digits, kd, td;
  for (std::size_t i = 0; i < n; ++i) {
    detail::digits_of(i, dims, digits);
    kd.clear();
    td.clear();
    for (std::size_t k = 0; k < dims.size(); ++k)
      (mask[k] ? kd : td).push_back(digits[k]);
    kept_index[i] = detail::index_of(kd, kept_dims);
    traced_index[i] = detail::index_of(td, traced_dims);
  }

  const auto m = static_cast<Eigen::Index>(detail::product(kept_dims));
  Matrix out = Matrix::Zero(m, m);
  const Matrix& src = rho.matrix();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (traced_index[r] == traced_index[c])
        out(static_cast<Eigen::Index>(kept_index[r]),
            static_cast<Eigen::Index>(kept_index[c])) +=
            src(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return DensityMatrix::assume_valid(std::move(out), std::move(kept_dims));
}

/// Transposes the indices of the listed subsystems. The result is Hermitian
/// but in general not positive, hence a plain matrix.
inline Matrix partial_transpose(const Matrix& m, const Dims& dims,
                                const SubsystemSet& subsystems) {
  if (m.rows() != m.cols() ||
      detail::product(dims) != static_cast<std::size_t>(m.rows()))
    throw InvalidInput("partial_transpose: matrix size does not match dims");
  const auto mask = detail::subsystem_mask(dims, subsystems, "partial_transpose");

  const std::size_t n = static_cast<std::size_t>(m.rows());
  std::vector<std::vector<std::size_t>> digits(n);
  for (std::size_t i = 0; i < n; ++i) detail::digits_of(i, dims, digits[i]);

  Matrix out(m.rows(), m.cols());
  std::vector<std::size_t> rd, cd;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      rd = digits[r];
      cd = digits[c];
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (mask[k]) std::swap(rd[k], cd[k]);
      out(static_cast<Eigen::Index>(detail::index_of(rd, dims)),
          static_cast<Eigen::Index>(detail::index_of(cd, dims))) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

inline Matrix partial_transpose(const DensityMatrix& rho, const SubsystemSet& subsystems) {
  return partial_transpose(rho.matrix(), rho.dims(), subsystems);
}

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_bits(eigenvalues_hermitian(rho.matrix()));
}

}  // namespace swapcorr
