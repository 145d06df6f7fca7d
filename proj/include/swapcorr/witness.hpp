// witness.hpp: explicit vectors |x> with <x| rho^T12 |x> < 0 for the SWAP-test
// state of two distinct inputs.
//
// With rho1* = sum_i lambda_i |phi_i><phi_i| and rho2* = sum_i sigma_i
// |psi_i><psi_i| (decreasing order) and n the number of leading matched
// eigenvector pairs, the vector has the form
//
//   |x> = ( -|psi_p>|phi_q> , |phi_q>|psi_p> ) / sqrt(2)
//
// over the two auxiliary blocks, with (p, q) picked by one of four cases:
//   i    n < min(r1, r2)   p = q = n
//   ii   n = r1 < r2       p = n,      q = n - 1    value -lambda_{n-1} sigma_n / 2
//   iii  n = r2 < r1       p = n - 1,  q = n        value -lambda_n sigma_{n-1} / 2
//   iv   n = r1 = r2       p = l, q = k with lambda_k sigma_l > lambda_l sigma_k
// (indices 0-based here).

#pragma once

#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "swapcorr/linalg.hpp"
#include "swapcorr/swaptest.hpp"

namespace swapcorr {

namespace witness_tol {
/// |<phi_i|psi_i>| >= 1 - match counts as the same eigenvector.
inline constexpr double match = 1e-6;
/// Inputs closer than this (max entrywise) are refused as indistinguishable.
inline constexpr double distinct = 1e-8;
/// Eigenvalues closer than this are treated as one degenerate block.
inline constexpr double degenerate = 1e-8;
}  // namespace witness_tol

enum class WitnessCase { i, ii, iii, iv };

inline const char* to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::i: return "i";
    case WitnessCase::ii: return "ii";
    case WitnessCase::iii: return "iii";
    case WitnessCase::iv: return "iv";
  }
  return "?";
}

/// Eigendecompositions of rho1* and rho2* with matched leading eigenvectors
/// made identical (up to numerical noise) and phase-aligned.
struct MatchResult {
  std::size_t n = 0;
  EigDecomposition first;
  EigDecomposition second;
};

struct WitnessCertificate {
  WitnessCase case_id = WitnessCase::i;
  std::size_t n_matched = 0;
  std::size_t rank1 = 0, rank2 = 0;
  /// Case i/ii/iii: {p}; case iv: {k, l}. 0-based eigen-indices.
  std::vector<std::size_t> indices;
  Vector vector;
  /// <x| rho^T12 |x> evaluated against the actual partial transpose.
  double value = 0.0;
  /// Closed-form prediction of `value` from the two spectra and overlaps.
  double predicted = 0.0;
};

namespace detail {

// Index one past the degenerate block that starts at `start`.
inline Eigen::Index block_end(const RealVector& values, Eigen::Index start) {
  Eigen::Index end = start + 1;
  while (end < values.size() && std::abs(values(end) - values(start)) <= witness_tol::degenerate) ++end;
  return end;
}

inline MatchResult match_eigenbases(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                    bool conjugate) {
  common_register_dim(rho1, rho2);
  MatchResult m;
  m.first = eig_hermitian(conjugate ? Matrix(rho1.matrix().conjugate()) : rho1.matrix());
  m.second = eig_hermitian(conjugate ? Matrix(rho2.matrix().conjugate()) : rho2.matrix());

  const auto limit = static_cast<Eigen::Index>(std::min(m.first.rank, m.second.rank));
  for (Eigen::Index i = 0; i < limit; ++i) {
    // Remaining (not yet matched) part of the degenerate blocks holding index i.
    const Eigen::Index e1 = block_end(m.first.values, i), e2 = block_end(m.second.values, i);
    auto phi = m.first.vectors.middleCols(i, e1 - i);
    auto psi = m.second.vectors.middleCols(i, e2 - i);

    // The best-aligned pair of unit vectors from the two spans comes from the
    // top singular triple of Phi^dagger Psi; rotating each block by its
    // singular vectors puts that pair in column i.
    const Matrix overlap = phi.adjoint() * psi;
    Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(0) < 1.0 - witness_tol::match) break;

    const Matrix rotated_phi = phi * svd.matrixU();
    const Matrix rotated_psi = psi * svd.matrixV();
    phi = rotated_phi;
    psi = rotated_psi;
    const cplx phase = m.first.vectors.col(i).dot(m.second.vectors.col(i));
    m.second.vectors.col(i) *= std::conj(phase) / std::abs(phase);
    ++m.n;
  }
  return m;
}

inline Vector witness_vector(const Vector& psi, const Vector& phi) {
  const auto r = psi.size() * phi.size();
  Vector x(2 * r);
  const Matrix psi_m = psi, phi_m = phi;
  x.head(r) = -kron(psi_m, phi_m).col(0);
  x.tail(r) = kron(phi_m, psi_m).col(0);
  return x / std::sqrt(2.0);
}

inline WitnessCertificate construct_witness(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                            bool conjugate) {
  common_register_dim(rho1, rho2);
  if ((rho1.matrix() - rho2.matrix()).cwiseAbs().maxCoeff() <= witness_tol::distinct)
    throw InvalidInput("construct_witness: inputs are indistinguishable");

  const MatchResult m = match_eigenbases(rho1, rho2, conjugate);
  const RealVector& lambda = m.first.values;
  const RealVector& sigma = m.second.values;
  const Matrix& phi = m.first.vectors;
  const Matrix& psi = m.second.vectors;
  const std::size_t n = m.n, r1 = m.first.rank, r2 = m.second.rank;
  const auto at = [](std::size_t i) { return static_cast<Eigen::Index>(i); };

  WitnessCertificate cert;
  cert.n_matched = n;
  cert.rank1 = r1;
  cert.rank2 = r2;
  std::size_t p = 0, q = 0;  // psi index, phi index

  if (n < std::min(r1, r2)) {
    cert.case_id = WitnessCase::i;
    p = q = n;
    cert.indices = {n};
    const Matrix rho1c = conjugate ? Matrix(rho1.matrix().conjugate()) : rho1.matrix();
    const Matrix rho2c = conjugate ? Matrix(rho2.matrix().conjugate()) : rho2.matrix();
    const double psi_in_1 = psi.col(at(p)).dot(rho1c * psi.col(at(p))).real();
    const double phi_in_2 = phi.col(at(q)).dot(rho2c * phi.col(at(q))).real();
    cert.predicted = (psi_in_1 * phi_in_2 - lambda(at(q)) * sigma(at(p))) / 2;
  } else if (n == r1 && r1 < r2) {
    cert.case_id = WitnessCase::ii;
    p = n;
    q = n - 1;
    cert.indices = {n};
    cert.predicted = -lambda(at(q)) * sigma(at(p)) / 2;
  } else if (n == r2 && r2 < r1) {
    cert.case_id = WitnessCase::iii;
    p = n - 1;
    q = n;
    cert.indices = {n};
    cert.predicted = -lambda(at(q)) * sigma(at(p)) / 2;
  } else {
    cert.case_id = WitnessCase::iv;
    double best = 0.0;
    bool found = false;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const double gap = lambda(at(k)) * sigma(at(l)) - lambda(at(l)) * sigma(at(k));
        if (gap > best) {
          best = gap;
          q = k;
          p = l;
          found = true;
        }
      }
    if (!found)
      throw NumericalFailure(
          "construct_witness: inputs differ but share eigenvectors and spectrum; "
          "eigenvector matching tolerance is miscalibrated");
    cert.indices = {q, p};
    cert.predicted = -best / 2;
  }

  cert.vector = witness_vector(psi.col(at(p)), phi.col(at(q)));
  const Matrix pt = partial_transpose(build_closed_form(rho1, rho2).state(), {1, 2});
  cert.value = cert.vector.dot(pt * cert.vector).real();
  return cert;
}

}  // namespace detail

/// Number of leading matched eigenvector pairs of rho1* and rho2*, with
/// degenerate blocks rotated to maximize matches.
inline MatchResult match_count(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return detail::match_eigenbases(rho1, rho2, true);
}

/// Builds and evaluates the entanglement witness for rho1 != rho2.
inline WitnessCertificate construct_witness(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return detail::construct_witness(rho1, rho2, true);
}

inline nlohmann::json to_json(const WitnessCertificate& c) {
  std::vector<double> re(static_cast<std::size_t>(c.vector.size())), im(re.size());
  for (Eigen::Index i = 0; i < c.vector.size(); ++i) {
    re[static_cast<std::size_t>(i)] = c.vector(i).real();
    im[static_cast<std::size_t>(i)] = c.vector(i).imag();
  }
  return {{"case", to_string(c.case_id)},
          {"n_matched", c.n_matched},
          {"rank1", c.rank1},
          {"rank2", c.rank2},
          {"indices", c.indices},
          {"value", c.value},
          {"predicted", c.predicted},
          {"vector", {{"re", re}, {"im", im}}}};
}

}  // namespace swapcorr
