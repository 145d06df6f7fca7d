// measures.hpp: correlations across the a | (12) cut of the SWAP-test state.
//
// Discord is the entropic one-way deficit with rank-one projective
// measurements on the auxiliary qubit a:
//
//   D = I(a:12) - max_{theta,phi} J(theta, phi),
//   J = S(rho_12) - sum_k p_k S(rho_12|k),
//
// where k labels the outcomes of the basis {|n>, |n_perp>} with
// |n> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>. The maximization runs a
// deterministic theta x phi grid followed by a coordinate pattern search.

#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "swapcorr/linalg.hpp"
#include "swapcorr/swaptest.hpp"

namespace swapcorr {

namespace thresholds {
/// Below this the mutual information counts as zero (product state).
inline constexpr double correlation = 1e-8;
/// Above this the negativity certifies entanglement.
inline constexpr double negativity = 1e-9;
/// Discord above this with no negativity would be quantum dissonance.
inline constexpr double dissonance = 1e-5;
/// Frobenius residual of the off-diagonal block accepted as classical-quantum.
inline constexpr double classical_quantum = 1e-8;
/// Target accuracy of the discord maximization, bits.
inline constexpr double optimizer = 1e-7;
/// Eigenvalues of the partial transpose above -floor are solver noise.
inline constexpr double eigen_noise_floor = 1e-12;
/// Values in (-clamp, 0) are reported as 0.
inline constexpr double negative_zero = 1e-9;
}  // namespace thresholds

/// Scaled negativity (negativity_paper) is this multiple of the sum of
/// negative partial-transpose eigenvalues, i.e. N = 2 (||rho^T12||_1 - 1),
/// so that it equals |a1 - a2| on the depolarizing example.
inline constexpr double negativity_convention = 4.0;

inline double clamp_negative_zero(double v) {
  return (v < 0.0 && v > -thresholds::negative_zero) ? 0.0 : v;
}

/// Rank-one projective measurement on a qubit.
struct QubitMeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  /// k = 0: cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>; k = 1: its complement.
  Eigen::Vector2cd ket(int k) const {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const cplx phase = std::polar(1.0, phi);
    Eigen::Vector2cd v;
    if (k == 0)
      v << c, phase * s;
    else
      v << -std::conj(phase) * s, c;
    return v;
  }

  Eigen::Matrix2cd projector(int k) const {
    const Eigen::Vector2cd v = ket(k);
    return v * v.adjoint();
  }

  /// Same kets up to global phase, with theta in [0, pi] and phi in [0, 2 pi).
  QubitMeasurementBasis canonical() const {
    constexpr double two_pi = 2 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    double p = phi;
    if (t < 0) t += two_pi;
    if (t > std::numbers::pi) {
      t = two_pi - t;
      p += std::numbers::pi;
    }
    p = std::fmod(p, two_pi);
    if (p < 0) p += two_pi;
    if (p >= two_pi) p -= two_pi;
    return {t, p};
  }
};

struct NegativityResult {
  double sum = 0.0;    // sum of |negative eigenvalues| of rho^T12
  double paper = 0.0;  // negativity_convention * sum
};

/// Grid and polish settings for the discord and classical-quantum searches.
struct DiscordOptions {
  std::size_t theta_points = 64;
  std::size_t phi_points = 128;
  /// Seed 0 keeps the grid anchored at theta = phi = 0; any other seed
  /// shifts it by a reproducible random sub-cell offset.
  std::uint64_t seed = 0;
  /// Optional starting point for the polish (e.g. the neighbouring point of a sweep).
  std::optional<QubitMeasurementBasis> warm_start;
};

struct DiscordResult {
  double discord = 0.0;
  double mutual_information = 0.0;
  double classical_information = 0.0;  // max J
  QubitMeasurementBasis optimal_basis;
};

struct ClassicalQuantumResult {
  bool classical_quantum = false;
  double residual = 0.0;
  QubitMeasurementBasis basis;
};

enum class Classification { product, classical_only, entangled };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::product: return "product";
    case Classification::classical_only: return "classical-only";
    case Classification::entangled: return "entangled";
  }
  return "unknown";
}

struct CorrelationReport {
  double total_correlation = 0.0;
  double negativity_sum = 0.0;
  double negativity_paper = 0.0;
  double discord = 0.0;
  double classical_correlation = 0.0;
  Classification classification = Classification::product;
  /// Nonzero discord without negativity: the class that should never occur.
  bool anomaly = false;
  QubitMeasurementBasis discord_basis;
};

inline NegativityResult negativity(const TripartiteState& rho) {
  const RealVector ev = eigenvalues_hermitian(partial_transpose(rho.state(), {1, 2}));
  double sum = 0.0;
  for (double v : ev)
    if (v < -thresholds::eigen_noise_floor) sum -= v;
  return {sum, negativity_convention * sum};
}

inline double mutual_information(const TripartiteState& rho) {
  const double s_a = von_neumann_entropy(partial_trace(rho.state(), {0}));
  const double s_12 = von_neumann_entropy(partial_trace(rho.state(), {1, 2}));
  const double s_all = von_neumann_entropy(rho.state());
  return std::max(0.0, s_a + s_12 - s_all);
}

namespace detail {

// The four (12)-blocks <m|rho|n> of a tripartite state.
struct AuxBlocks {
  Matrix b00, b01, b10, b11;

  explicit AuxBlocks(const TripartiteState& rho)
      : b00(rho.block(0, 0)), b01(rho.block(0, 1)), b10(rho.block(1, 0)), b11(rho.block(1, 1)) {}

  // sum_{mn} conj(u_m) v_n <m|rho|n> = <u|rho|v> on the auxiliary factor.
  Matrix sandwich(const Eigen::Vector2cd& u, const Eigen::Vector2cd& v) const {
    const cplx c00 = std::conj(u(0)) * v(0), c01 = std::conj(u(0)) * v(1);
    const cplx c10 = std::conj(u(1)) * v(0), c11 = std::conj(u(1)) * v(1);
    return c00 * b00 + c01 * b01 + c10 * b10 + c11 * b11;
  }
};

// p * S(M / p) for an unnormalized conditional state M with trace p.
inline double weighted_conditional_entropy(const Matrix& m) {
  const RealVector mu = eigenvalues_hermitian(m);
  const double p = mu.sum();
  if (p <= tol::rank) return 0.0;
  return p * entropy_bits(mu / p);
}

// Maximizes (sign = +1) or minimizes (sign = -1) f over (theta, phi):
// exhaustive grid, then a compass search from the best grid point. The grid
// is scanned theta-major with a strict comparison so ties resolve to the
// lexicographically smallest (theta, phi).
template <class F>
QubitMeasurementBasis optimize_on_sphere(F&& f, double sign, const DiscordOptions& opt) {
  if (opt.theta_points == 0 || opt.phi_points == 0)
    throw InvalidInput("optimizer grid must have at least one point per axis");
  const double d_theta = std::numbers::pi / static_cast<double>(opt.theta_points);
  const double d_phi = 2 * std::numbers::pi / static_cast<double>(opt.phi_points);

  double u_theta = 0.0, u_phi = 0.0;
  if (opt.seed != 0) {
    Rng rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    u_theta = unit(rng);
    u_phi = unit(rng);
  }

  // Both objectives are invariant under exchanging the two outcomes, i.e.
  // (theta, phi) -> (pi - theta, phi + pi). On the anchored grid that maps
  // row i onto row G - i shifted by half a turn, so those rows are reused.
  const std::size_t rows = opt.theta_points, cols = opt.phi_points;
  const bool mirrored = u_theta == 0.0 && u_phi == 0.0 && cols % 2 == 0;
  std::vector<double> grid(rows * cols);

  double best_t = 0.0, best_p = 0.0, best_v = -INFINITY;
  for (std::size_t i = 0; i < rows; ++i) {
    const double t = (static_cast<double>(i) + u_theta) * d_theta;
    const bool reuse = mirrored && 2 * i > rows;
    for (std::size_t j = 0; j < cols; ++j) {
      const double p = (static_cast<double>(j) + u_phi) * d_phi;
      const double v = reuse ? grid[(rows - i) * cols + (j + cols / 2) % cols] : sign * f(t, p);
      grid[i * cols + j] = v;
      if (v > best_v) {
        best_v = v;
        best_t = t;
        best_p = p;
      }
    }
  }

  if (opt.warm_start) {
    const double v = sign * f(opt.warm_start->theta, opt.warm_start->phi);
    if (v > best_v) {
      best_v = v;
      best_t = opt.warm_start->theta;
      best_p = opt.warm_start->phi;
    }
  }

  double h_t = d_theta, h_p = d_phi;
  constexpr double min_step = 1e-10;
  while (h_t > min_step || h_p > min_step) {
    const double cand[4][2] = {{best_t + h_t, best_p}, {best_t - h_t, best_p},
                               {best_t, best_p + h_p}, {best_t, best_p - h_p}};
    int pick = -1;
    double pick_v = best_v;
    for (int c = 0; c < 4; ++c) {
      const double v = sign * f(cand[c][0], cand[c][1]);
      if (v > pick_v) {
        pick_v = v;
        pick = c;
      }
    }
    if (pick >= 0) {
      best_t = cand[pick][0];
      best_p = cand[pick][1];
      best_v = pick_v;
    } else {
      h_t *= 0.5;
      h_p *= 0.5;
    }
  }
  return QubitMeasurementBasis{best_t, best_p}.canonical();
}

}  // namespace detail

/// Discord with measurement on the auxiliary qubit.
inline DiscordResult discord_via_measurement(const TripartiteState& rho,
                                             const DiscordOptions& opt = {}) {
  const detail::AuxBlocks blocks(rho);
  const Matrix rho_12 = blocks.b00 + blocks.b11;
  const double s_12 = entropy_bits(eigenvalues_hermitian(rho_12));

  auto classical_info = [&](double theta, double phi) {
    const QubitMeasurementBasis basis{theta, phi};
    const Eigen::Vector2cd v = basis.ket(0);
    const Matrix m0 = blocks.sandwich(v, v);
    return s_12 - detail::weighted_conditional_entropy(m0) -
           detail::weighted_conditional_entropy(rho_12 - m0);
  };

  DiscordResult out;
  out.optimal_basis = detail::optimize_on_sphere(classical_info, +1.0, opt);
  out.classical_information = classical_info(out.optimal_basis.theta, out.optimal_basis.phi);
  out.mutual_information = mutual_information(rho);
  out.discord = std::max(0.0, out.mutual_information - out.classical_information);
  return out;
}

/// Tests whether rho = sum_k |k><k| (x) rho_k for some qubit basis {|k>}:
/// minimizes the Frobenius norm of the rotated off-diagonal block.
inline ClassicalQuantumResult is_classical_quantum(const TripartiteState& rho,
                                                   const DiscordOptions& opt = {}) {
  const detail::AuxBlocks blocks(rho);
  auto off_diagonal = [&](double theta, double phi) {
    const QubitMeasurementBasis basis{theta, phi};
    return blocks.sandwich(basis.ket(0), basis.ket(1)).squaredNorm();
  };
  ClassicalQuantumResult out;
  out.basis = detail::optimize_on_sphere(off_diagonal, -1.0, opt);
  out.residual = std::sqrt(off_diagonal(out.basis.theta, out.basis.phi));
  out.classical_quantum = out.residual <= thresholds::classical_quantum;
  return out;
}

inline CorrelationReport classify(const TripartiteState& rho, const DiscordOptions& opt = {}) {
  const NegativityResult neg = negativity(rho);
  const DiscordResult disc = discord_via_measurement(rho, opt);

  CorrelationReport r;
  r.total_correlation = disc.mutual_information;
  r.negativity_sum = neg.sum;
  r.negativity_paper = neg.paper;
  r.discord = clamp_negative_zero(disc.discord);
  r.classical_correlation = std::max(0.0, r.total_correlation - r.discord);
  r.discord_basis = disc.optimal_basis;

  if (r.total_correlation <= thresholds::correlation)
    r.classification = Classification::product;
  else if (r.negativity_sum > thresholds::negativity)
    r.classification = Classification::entangled;
  else
    r.classification = Classification::classical_only;
  r.anomaly = r.discord > thresholds::dissonance && r.negativity_sum <= thresholds::negativity;
  return r;
}

inline nlohmann::json to_json(const QubitMeasurementBasis& b) {
  return {{"theta", b.theta}, {"phi", b.phi}};
}

inline nlohmann::json to_json(const CorrelationReport& r) {
  return {
      {"total_correlation_bits", r.total_correlation},
      {"negativity_sum", r.negativity_sum},
      {"negativity_paper", r.negativity_paper},
      {"discord_bits", r.discord},
      {"classical_correlation_bits", r.classical_correlation},
      {"classification", to_string(r.classification)},
      {"anomaly", r.anomaly},
      {"discord_basis", to_json(r.discord_basis)},
      {"tolerances",
       {{"correlation", thresholds::correlation},
        {"negativity", thresholds::negativity},
        {"dissonance", thresholds::dissonance},
        {"optimizer", thresholds::optimizer},
        {"eigen_noise_floor", thresholds::eigen_noise_floor},
        {"negativity_convention", negativity_convention}}},
  };
}

inline nlohmann::json to_json(const ClassicalQuantumResult& r) {
  return {{"classical_quantum", r.classical_quantum},
          {"residual", r.residual},
          {"basis", to_json(r.basis)},
          {"threshold", thresholds::classical_quantum}};
}

}  // namespace swapcorr
