// random_states.hpp: reproducible random density matrices (Ginibre ensemble)
// and engineered input pairs that exercise each branch of the witness
// construction.

#pragma once

#include <Eigen/QR>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "swapcorr/linalg.hpp"

namespace swapcorr {

/// The library's seedable generator. All randomized routines take one by
/// reference so a single seed reproduces a whole run.
using Rng = std::mt19937_64;

inline Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = cplx(normal(rng), normal(rng));
  return g;
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal absorbed into Q.
inline Matrix random_unitary(std::size_t d, Rng& rng) {
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const cplx diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

/// G G^dagger / Tr(G G^dagger) with G of shape d x rank.
inline DensityMatrix random_density(std::size_t d, std::size_t rank, Rng& rng) {
  if (rank == 0 || rank > d) throw InvalidInput("random_density: rank must be in [1, d]");
  const Matrix g = ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() * 0.5;
  return DensityMatrix::assume_valid(std::move(rho), Dims{d});
}

inline DensityMatrix random_mixed(std::size_t d, Rng& rng) { return random_density(d, d, rng); }
inline DensityMatrix random_pure(std::size_t d, Rng& rng) { return random_density(d, 1, rng); }

/// Strictly decreasing positive spectrum of the given length, summing to 1.
inline std::vector<double> random_spectrum(std::size_t length, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  std::vector<double> s(length);
  for (;;) {
    double total = 0.0;
    for (auto& x : s) total += (x = uniform(rng));
    std::sort(s.begin(), s.end(), std::greater<>());
    bool distinct = true;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i - 1] - s[i] < 1e-3) distinct = false;
    if (!distinct) continue;
    for (auto& x : s) x /= total;
    return s;
  }
}

/// U diag(spectrum, 0, ...) U^dagger.
inline DensityMatrix with_spectrum(const Matrix& unitary, const std::vector<double>& spectrum) {
  const auto d = unitary.rows();
  RealVector diag = RealVector::Zero(d);
  for (std::size_t i = 0; i < spectrum.size(); ++i) diag(static_cast<Eigen::Index>(i)) = spectrum[i];
  Matrix rho = unitary * diag.cast<cplx>().asDiagonal() * unitary.adjoint();
  rho = (rho + rho.adjoint()).eval() * 0.5;
  return DensityMatrix::assume_valid(std::move(rho), Dims{static_cast<std::size_t>(d)});
}

/// Which branch of the witness construction a generated pair should hit.
enum class PairKind {
  generic,        // independent full-rank states: n = 0
  shared_prefix,  // first n eigenvectors shared, then diverging (needs d >= 3)
  rank_low_first, // shared eigenbasis, rank(rho1) < rank(rho2)
  rank_low_second,// shared eigenbasis, rank(rho2) < rank(rho1)
  same_basis,     // shared eigenbasis, equal rank, different spectra
};

/// Builds a pair of distinct states of dimension d of the requested kind.
inline std::pair<DensityMatrix, DensityMatrix> random_pair(PairKind kind, std::size_t d, Rng& rng) {
  if (d < 2) throw InvalidInput("random_pair: d must be >= 2");
  std::uniform_int_distribution<std::size_t> pick_rank(1, d - 1);
  switch (kind) {
    case PairKind::generic:
      return {random_mixed(d, rng), random_mixed(d, rng)};
    case PairKind::shared_prefix: {
      if (d < 3) throw InvalidInput("random_pair: shared_prefix needs d >= 3");
      std::uniform_int_distribution<std::size_t> pick_n(1, d - 2);
      const std::size_t n = pick_n(rng);
      const Matrix u = random_unitary(d, rng);
      Matrix v = u;
      const auto tail = static_cast<Eigen::Index>(d - n);
      v.rightCols(tail) = u.rightCols(tail) * random_unitary(d - n, rng);
      return {with_spectrum(u, random_spectrum(d, rng)), with_spectrum(v, random_spectrum(d, rng))};
    }
    case PairKind::rank_low_first:
    case PairKind::rank_low_second: {
      const std::size_t low = pick_rank(rng);
      std::uniform_int_distribution<std::size_t> pick_high(low + 1, d);
      const std::size_t high = pick_high(rng);
      const Matrix u = random_unitary(d, rng);
      auto a = with_spectrum(u, random_spectrum(low, rng));
      auto b = with_spectrum(u, random_spectrum(high, rng));
      if (kind == PairKind::rank_low_first) return {std::move(a), std::move(b)};
      return {std::move(b), std::move(a)};
    }
    case PairKind::same_basis: {
      std::uniform_int_distribution<std::size_t> pick_r(2, d);
      const std::size_t r = pick_r(rng);
      const Matrix u = random_unitary(d, rng);
      return {with_spectrum(u, random_spectrum(r, rng)), with_spectrum(u, random_spectrum(r, rng))};
    }
  }
  throw InvalidInput("random_pair: unknown kind");
}

}  // namespace swapcorr
