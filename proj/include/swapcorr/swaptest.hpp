// swaptest.hpp: the post-circuit state of the SWAP test (Hadamard on an
// auxiliary qubit, controlled swap of two equal-size registers, readout in
// the sigma_x basis) and its measurement statistics.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "swapcorr/linalg.hpp"
#include "swapcorr/random_states.hpp"

namespace swapcorr {

/// Post-circuit state on subsystems [a, 1, 2] with dims [2, d, d].
class TripartiteState {
 public:
  TripartiteState(DensityMatrix state, std::size_t d) : state_(std::move(state)), d_(d) {
    if (state_.dims() != Dims{2, d, d})
      throw InvalidInput("TripartiteState: dims must be [2, d, d]");
  }

  const DensityMatrix& state() const { return state_; }
  const Matrix& matrix() const { return state_.matrix(); }
  /// Register dimension d (d1 = d2 = d).
  std::size_t d() const { return d_; }
  std::size_t register_dim() const { return d_ * d_; }

  /// Operator <m| rho |n> on the (12) registers, m, n in {0, 1}.
  Matrix block(int m, int n) const {
    const auto r = static_cast<Eigen::Index>(register_dim());
    return state_.matrix().block(m * r, n * r, r, r);
  }

 private:
  DensityMatrix state_;
  std::size_t d_;
};

struct MeasurementStats {
  double p_plus = 0.0;
  double p_minus = 0.0;
  double overlap = 0.0;
};

struct ShotEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t n_shots = 0;
  std::uint64_t n_plus = 0;
  std::uint64_t seed = 0;
};

/// Permutation S |i>|j> = |j>|i> on C^d (x) C^d.
inline Matrix swap_operator(std::size_t d) {
  if (d == 0) throw InvalidInput("swap_operator: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix s = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      s(static_cast<Eigen::Index>(j * d + i), static_cast<Eigen::Index>(i * d + j)) = 1.0;
  return s;
}

namespace detail {

inline std::size_t common_register_dim(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim())
    throw InvalidInput("input registers must have equal dimension (got " +
                       std::to_string(rho1.dim()) + " and " + std::to_string(rho2.dim()) + ")");
  return rho1.dim();
}

}  // namespace detail

/// Block form: 1/2 [[P, P S], [S P, S P S]] with P = rho1 (x) rho2, where
/// S P S = rho2 (x) rho1.
inline TripartiteState build_closed_form(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const std::size_t d = detail::common_register_dim(rho1, rho2);
  const Matrix p = kron(rho1.matrix(), rho2.matrix());
  const Matrix s = swap_operator(d);
  const auto n = p.rows();

  Matrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = 0.5 * p;
  out.topRightCorner(n, n) = 0.5 * p * s;
  out.bottomLeftCorner(n, n) = 0.5 * s * p;
  out.bottomRightCorner(n, n) = 0.5 * kron(rho2.matrix(), rho1.matrix());
  return TripartiteState(DensityMatrix::assume_valid(std::move(out), Dims{2, d, d}), d);
}

/// Explicit circuit: C_swap (H (x) 1)(|0><0| (x) rho1 (x) rho2)(H (x) 1)^dagger C_swap^dagger.
inline TripartiteState build_by_gates(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const std::size_t d = detail::common_register_dim(rho1, rho2);
  const auto n = static_cast<Eigen::Index>(d * d);

  Matrix hadamard(2, 2);
  const double h = 1.0 / std::sqrt(2.0);
  hadamard << h, h, h, -h;

  Matrix ket0 = Matrix::Zero(2, 2);
  ket0(0, 0) = 1.0;

  Matrix cswap = Matrix::Zero(2 * n, 2 * n);
  cswap.topLeftCorner(n, n) = Matrix::Identity(n, n);
  cswap.bottomRightCorner(n, n) = swap_operator(d);

  const Matrix initial = kron(ket0, kron(rho1.matrix(), rho2.matrix()));
  const Matrix u = cswap * kron(hadamard, Matrix::Identity(n, n));
  Matrix out = u * initial * u.adjoint();
  return TripartiteState(DensityMatrix::assume_valid(std::move(out), Dims{2, d, d}), d);
}

/// Reads p(+) = <+| rho_a |+> off the reduced auxiliary state.
inline MeasurementStats measure_stats(const TripartiteState& rho) {
  const DensityMatrix aux = partial_trace(rho.state(), {0});
  const double p_plus = 0.5 * (aux(0, 0) + aux(0, 1) + aux(1, 0) + aux(1, 1)).real();
  MeasurementStats stats;
  stats.p_plus = p_plus;
  stats.p_minus = 1.0 - p_plus;
  stats.overlap = 2.0 * p_plus - 1.0;
  return stats;
}

/// Emulates n_shots sigma_x readouts of the auxiliary qubit.
inline ShotEstimate sample_shots(const TripartiteState& rho, std::uint64_t n_shots, std::uint64_t seed) {
  if (n_shots == 0) throw InvalidInput("sample_shots: n_shots must be >= 1");
  const double p_plus = std::clamp(measure_stats(rho).p_plus, 0.0, 1.0);
  Rng rng(seed);
  std::bernoulli_distribution outcome(p_plus);
  std::uint64_t plus = 0;
  for (std::uint64_t k = 0; k < n_shots; ++k)
    if (outcome(rng)) ++plus;

  const double n = static_cast<double>(n_shots);
  const double f = static_cast<double>(plus) / n;
  ShotEstimate est;
  est.estimate = 2.0 * f - 1.0;
  est.standard_error = 2.0 * std::sqrt(f * (1.0 - f) / n);
  est.n_shots = n_shots;
  est.n_plus = plus;
  est.seed = seed;
  return est;
}

}  // namespace swapcorr
