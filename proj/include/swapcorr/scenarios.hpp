// scenarios.hpp: two qubits prepared in |0>, each sent through a depolarizing
// channel chi -> a chi + (1 - a)/2 * 1, then fed to the SWAP test. Provides
// the (a1, a2) correlation surfaces and the time trajectory in which
// negativity and discord vanish together.

#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "swapcorr/linalg.hpp"
#include "swapcorr/measures.hpp"
#include "swapcorr/swaptest.hpp"

namespace swapcorr {

struct DepolarizingParams {
  double a1 = 1.0;
  double a2 = 1.0;

  void validate() const {
    if (!(a1 >= -1.0 && a1 <= 1.0) || !(a2 >= -1.0 && a2 <= 1.0))
      throw InvalidInput("depolarizing parameters must lie in [-1, 1]");
  }
};

/// How a_i(t) continues after the rate switch.
enum class LateSegment {
  carry,   // a_i(t) = a_i(t_switch) exp(-gamma_late (t - t_switch))
  global,  // a_i(t) = a_i0 exp(-gamma_late t)
};

struct TrajectoryConfig {
  double gamma1_early = 10.0;
  double gamma2_early = 5.0;
  double gamma1_late = 10.0;
  double gamma2_late = 10.0;
  double a10 = 1.0;
  double a20 = std::exp(-1.0);
  double t_switch = 0.2;
  double t_max = 0.5;
  std::size_t n_steps = 101;
  LateSegment late = LateSegment::carry;

  void validate() const {
    if (gamma1_early < 0 || gamma2_early < 0 || gamma1_late < 0 || gamma2_late < 0)
      throw InvalidInput("trajectory: decay rates must be non-negative");
    if (!(t_switch > 0 && t_switch < t_max))
      throw InvalidInput("trajectory: need 0 < t_switch < t_max");
    if (n_steps < 2) throw InvalidInput("trajectory: n_steps must be >= 2");
    DepolarizingParams{a10, a20}.validate();
  }
};

struct SweepRow {
  double a1 = 0.0, a2 = 0.0;
  double total_correlation = 0.0;
  double negativity_sum = 0.0;
  double discord = 0.0;
  Classification classification = Classification::product;
  bool anomaly = false;
};

struct TrajectoryPoint {
  double t = 0.0;
  SweepRow row;
};

struct TrajectoryResult {
  std::vector<TrajectoryPoint> points;
  /// First time both discord and negativity are gone (bisection-refined).
  std::optional<double> death_time;
  /// Onset of exactly zero discord: the state becomes classical-quantum on a.
  std::optional<double> discord_death_time;
  /// First time the optimized discord drops below trajectory_tol::discord.
  /// Discord vanishes quadratically in |a1 - a2|, so this runs ahead of the
  /// true zero.
  std::optional<double> discord_threshold_time;
  std::optional<double> negativity_death_time;
};

/// a chi + (1 - a)/2 * 1 on a qubit.
inline DensityMatrix depolarize(const DensityMatrix& chi, double a) {
  if (!(a >= -1.0 && a <= 1.0)) throw InvalidInput("depolarize: a must lie in [-1, 1]");
  if (chi.dim() != 2) throw InvalidInput("depolarize: only qubit states are supported");
  Matrix out = a * chi.matrix() + (1.0 - a) / 2.0 * Matrix::Identity(2, 2);
  const RealVector ev = eigenvalues_hermitian(out);
  if (ev.minCoeff() < -tol::psd)
    throw InvalidInput("depolarize: result is not positive semidefinite");
  return DensityMatrix::assume_valid(std::move(out), chi.dims());
}

inline DensityMatrix ket0_state() {
  Vector v = Vector::Zero(2);
  v(0) = 1.0;
  return pure_state(v);
}

inline TripartiteState example_state(const DepolarizingParams& params) {
  params.validate();
  const DensityMatrix zero = ket0_state();
  return build_closed_form(depolarize(zero, params.a1), depolarize(zero, params.a2));
}

inline SweepRow evaluate_point(double a1, double a2, const DiscordOptions& opt = {},
                               QubitMeasurementBasis* basis_out = nullptr) {
  const CorrelationReport r = classify(example_state({a1, a2}), opt);
  if (basis_out) *basis_out = r.discord_basis;
  return {a1, a2, r.total_correlation, r.negativity_sum, r.discord, r.classification, r.anomaly};
}

/// Uniform resolution x resolution grid over [-1, 1]^2, a1 outer, a2 inner.
inline std::vector<SweepRow> sweep(std::size_t resolution, const DiscordOptions& base = {}) {
  if (resolution < 2) throw InvalidInput("sweep: resolution must be >= 2");
  const auto axis = [&](std::size_t i) {
    return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(resolution - 1);
  };
  std::vector<SweepRow> rows;
  rows.reserve(resolution * resolution);
  DiscordOptions opt = base;
  for (std::size_t i = 0; i < resolution; ++i) {
    for (std::size_t j = 0; j < resolution; ++j) {
      QubitMeasurementBasis basis;
      rows.push_back(evaluate_point(axis(i), axis(j), opt, &basis));
      opt.warm_start = basis;
    }
  }
  return rows;
}

/// Piecewise-exponential a_1(t), a_2(t).
inline DepolarizingParams trajectory_params(const TrajectoryConfig& c, double t) {
  const auto one = [&](double a0, double early, double late) {
    if (t <= c.t_switch) return a0 * std::exp(-early * t);
    if (c.late == LateSegment::carry)
      return a0 * std::exp(-early * c.t_switch) * std::exp(-late * (t - c.t_switch));
    return a0 * std::exp(-late * t);
  };
  return {one(c.a10, c.gamma1_early, c.gamma1_late), one(c.a20, c.gamma2_early, c.gamma2_late)};
}

namespace trajectory_tol {
inline constexpr double discord = 1e-5;
inline constexpr double negativity = 1e-9;
inline constexpr double bisection = 1e-4;
}  // namespace trajectory_tol

namespace detail {

// First grid time where `dead` holds, refined by bisection against the
// preceding grid time.
inline std::optional<double> first_death(const std::vector<double>& times,
                                         const std::vector<bool>& dead_on_grid,
                                         const std::function<bool(double)>& dead) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!dead_on_grid[k]) continue;
    if (k == 0) return times[0];
    double lo = times[k - 1], hi = times[k];
    while (hi - lo > trajectory_tol::bisection) {
      const double mid = 0.5 * (lo + hi);
      (dead(mid) ? hi : lo) = mid;
    }
    return hi;
  }
  return std::nullopt;
}

}  // namespace detail

inline TrajectoryResult trajectory(const TrajectoryConfig& config, const DiscordOptions& base = {}) {
  config.validate();
  TrajectoryResult out;
  std::vector<double> times;
  DiscordOptions opt = base;
  for (std::size_t k = 0; k < config.n_steps; ++k) {
    const double t = config.t_max * static_cast<double>(k) / static_cast<double>(config.n_steps - 1);
    const DepolarizingParams p = trajectory_params(config, t);
    QubitMeasurementBasis basis;
    out.points.push_back({t, evaluate_point(p.a1, p.a2, opt, &basis)});
    opt.warm_start = basis;
    times.push_back(t);
  }

  const auto row_at = [&](double t) {
    const DepolarizingParams p = trajectory_params(config, t);
    return evaluate_point(p.a1, p.a2, base);
  };
  const auto discord_dead = [](const SweepRow& r) { return r.discord <= trajectory_tol::discord; };
  const auto negativity_dead = [](const SweepRow& r) {
    return r.negativity_sum <= trajectory_tol::negativity;
  };

  std::vector<bool> both, disc, neg;
  for (const auto& pt : out.points) {
    disc.push_back(discord_dead(pt.row));
    neg.push_back(negativity_dead(pt.row));
    both.push_back(disc.back() && neg.back());
  }
  out.death_time = detail::first_death(times, both, [&](double t) {
    const SweepRow r = row_at(t);
    return discord_dead(r) && negativity_dead(r);
  });
  out.discord_threshold_time =
      detail::first_death(times, disc, [&](double t) { return discord_dead(row_at(t)); });

  const auto classical_quantum_at = [&](double t) {
    return is_classical_quantum(example_state(trajectory_params(config, t)), base).classical_quantum;
  };
  std::vector<bool> cq;
  for (double t : times) cq.push_back(classical_quantum_at(t));
  out.discord_death_time = detail::first_death(times, cq, classical_quantum_at);
  out.negativity_death_time = detail::first_death(times, neg, [&](double t) {
    const DepolarizingParams p = trajectory_params(config, t);
    return negativity(example_state(p)).sum <= trajectory_tol::negativity;
  });
  return out;
}

namespace detail {

inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string class_label(const SweepRow& r) {
  return r.anomaly ? "ANOMALY" : to_string(r.classification);
}

inline void write_row_fields(std::ostream& os, const SweepRow& r) {
  os << fmt12(r.a1) << ',' << fmt12(r.a2) << ',' << fmt12(r.total_correlation) << ','
     << fmt12(r.negativity_sum) << ',' << fmt12(r.discord) << ',' << class_label(r) << '\n';
}

}  // namespace detail

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "a1,a2,total_bits,negativity_sum,discord_bits,class\n";
  for (const auto& r : rows) detail::write_row_fields(os, r);
}

inline void write_trajectory_csv(std::ostream& os, const TrajectoryResult& traj) {
  os << "t,a1,a2,total_bits,negativity_sum,discord_bits,class\n";
  for (const auto& p : traj.points) {
    os << detail::fmt12(p.t) << ',';
    detail::write_row_fields(os, p.row);
  }
}

}  // namespace swapcorr
