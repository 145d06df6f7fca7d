// selftest.hpp: the acceptance criteria as runnable checks. Used by the
// acceptance test binary and by `swapcorr selftest`.
//
// Reference quantities (Tr rho1 rho2, the partial transpose used to recheck
// witness values, the product form of equal pure inputs) are recomputed here
// with plain index loops rather than through the library routines under test.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "swapcorr/linalg.hpp"
#include "swapcorr/measures.hpp"
#include "swapcorr/random_states.hpp"
#include "swapcorr/scenarios.hpp"
#include "swapcorr/swaptest.hpp"
#include "swapcorr/witness.hpp"

namespace swapcorr::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Config {
  std::uint64_t seed = 20130101;
  std::size_t oracle_pairs = 120;
  std::size_t witness_pairs = 500;
  std::size_t equal_pairs = 100;
  std::size_t pure_pairs = 50;
  std::size_t sweep_resolution = 101;
  std::size_t shot_seeds = 100;
  std::uint64_t shots = 1'000'000;
};

namespace oracle {

// Tr(rho1 rho2) = sum_ij rho1(i,j) rho2(j,i).
inline double overlap(const Matrix& a, const Matrix& b) {
  cplx s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  return s.real();
}

// rho^T12 on dims [2, d, d] via explicit (a, i, j) index bookkeeping.
inline Matrix transpose_registers(const Matrix& rho, std::size_t d) {
  const auto D = static_cast<Eigen::Index>(d);
  const auto flat = [D](Eigen::Index a, Eigen::Index i, Eigen::Index j) { return (a * D + i) * D + j; };
  Matrix out(rho.rows(), rho.cols());
  for (Eigen::Index a = 0; a < 2; ++a)
    for (Eigen::Index b = 0; b < 2; ++b)
      for (Eigen::Index i = 0; i < D; ++i)
        for (Eigen::Index j = 0; j < D; ++j)
          for (Eigen::Index k = 0; k < D; ++k)
            for (Eigen::Index l = 0; l < D; ++l)
              out(flat(a, i, j), flat(b, k, l)) = rho(flat(a, k, l), flat(b, i, j));
  return out;
}

inline double binary_entropy_bits(double p) {
  double h = 0.0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

}  // namespace oracle

/// Mixed corpus of input pairs: unequal mixed, unequal pure, equal mixed,
/// equal pure, rank-deficient, over d in {2, 3, 4}.
inline std::vector<std::pair<DensityMatrix, DensityMatrix>> mixed_corpus(std::size_t count, Rng& rng) {
  std::vector<std::pair<DensityMatrix, DensityMatrix>> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t d = 2 + k % 3;
    switch ((k / 3) % 5) {
      case 0: out.emplace_back(random_mixed(d, rng), random_mixed(d, rng)); break;
      case 1: out.emplace_back(random_pure(d, rng), random_pure(d, rng)); break;
      case 2: {
        auto r = random_mixed(d, rng);
        out.emplace_back(r, r);
        break;
      }
      case 3: {
        auto r = random_pure(d, rng);
        out.emplace_back(r, r);
        break;
      }
      default: out.emplace_back(random_density(d, d - 1, rng), random_mixed(d, rng)); break;
    }
  }
  return out;
}

/// Distinct pairs cycling through every witness branch.
inline std::vector<std::pair<DensityMatrix, DensityMatrix>> witness_corpus(std::size_t count, Rng& rng) {
  const PairKind kinds[] = {PairKind::generic, PairKind::shared_prefix, PairKind::rank_low_first,
                            PairKind::rank_low_second, PairKind::same_basis};
  std::vector<std::pair<DensityMatrix, DensityMatrix>> out;
  for (std::size_t k = 0; k < count; ++k) {
    const PairKind kind = kinds[k % 5];
    std::size_t d = 2 + (k / 5) % 3;
    if (kind == PairKind::shared_prefix && d < 3) d = 3;
    out.push_back(random_pair(kind, d, rng));
  }
  return out;
}

class Suite {
 public:
  explicit Suite(Config config = {}) : config_(config) {}

  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {}) {
    std::vector<CriterionResult> results;
    const auto record = [&](CriterionResult r) {
      if (on_result) on_result(r);
      results.push_back(std::move(r));
    };
    record(oracle_equivalence());
    record(overlap_identity());
    record(witness_soundness());
    record(equal_mixed_inputs());
    record(equal_pure_inputs());
    record(negativity_proportionality());
    record(sudden_death());
    record(dissonance_rejection());
    record(shot_estimator());
    return results;
  }

  CriterionResult oracle_equivalence() {
    Rng rng(config_.seed + 1);
    const auto corpus = mixed_corpus(config_.oracle_pairs, rng);
    double worst = 0.0;
    for (const auto& [a, b] : corpus) {
      const Matrix diff = build_closed_form(a, b).matrix() - build_by_gates(a, b).matrix();
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
    return make(1, "closed form equals gate-by-gate circuit", worst <= 1e-12,
                "max |closed - gates| = " + sci(worst) + " over " + std::to_string(corpus.size()) +
                    " pairs (tol 1e-12)");
  }

  CriterionResult overlap_identity() {
    Rng rng(config_.seed + 1);
    const auto corpus = mixed_corpus(config_.oracle_pairs, rng);
    double worst = 0.0;
    for (const auto& [a, b] : corpus) {
      const double measured = measure_stats(build_closed_form(a, b)).overlap;
      worst = std::max(worst, std::abs(measured - oracle::overlap(a.matrix(), b.matrix())));
    }
    return make(2, "measured overlap equals Tr(rho1 rho2)", worst <= 1e-10,
                "max deviation = " + sci(worst) + " over " + std::to_string(corpus.size()) +
                    " pairs (tol 1e-10)");
  }

  CriterionResult witness_soundness() {
    Rng rng(config_.seed + 3);
    const auto corpus = witness_corpus(config_.witness_pairs, rng);
    std::size_t failures = 0, hits[4] = {0, 0, 0, 0};
    double worst_value = -INFINITY, worst_gap = 0.0, min_neg = INFINITY;
    std::string first_failure;
    anomalies_witness_ = 0;
    for (const auto& [a, b] : corpus) {
      try {
        const WitnessCertificate cert = construct_witness(a, b);
        ++hits[static_cast<int>(cert.case_id)];
        const TripartiteState state = build_by_gates(a, b);
        const Matrix pt = oracle::transpose_registers(state.matrix(), state.d());
        const double direct = cert.vector.dot(pt * cert.vector).real();
        const CorrelationReport report = classify(state);
        if (report.anomaly) ++anomalies_witness_;
        worst_value = std::max(worst_value, cert.value);
        worst_gap = std::max(worst_gap, std::abs(cert.value - direct));
        min_neg = std::min(min_neg, report.negativity_sum);
        const bool ok = cert.value < -1e-12 && std::abs(cert.value - direct) <= 1e-10 &&
                        report.negativity_sum > 0.0;
        if (!ok && failures++ == 0)
          first_failure = "; first failure case " + std::string(to_string(cert.case_id)) +
                          " value " + sci(cert.value);
      } catch (const Error& e) {
        if (failures++ == 0) first_failure = std::string("; first failure: ") + e.what();
      }
    }
    const bool all_cases = hits[0] && hits[1] && hits[2] && hits[3];
    std::ostringstream os;
    os << corpus.size() << " pairs, cases i/ii/iii/iv = " << hits[0] << '/' << hits[1] << '/' << hits[2]
       << '/' << hits[3] << ", max value = " << sci(worst_value) << " (< -1e-12), max |value - direct| = "
       << sci(worst_gap) << " (tol 1e-10), min negativity_sum = " << sci(min_neg)
       << ", failures = " << failures << first_failure;
    witness_ran_ = true;
    return make(3, "entanglement witness for distinct inputs", failures == 0 && all_cases, os.str());
  }

  CriterionResult equal_mixed_inputs() {
    Rng rng(config_.seed + 4);
    double worst_neg = 0.0, worst_discord = 0.0, worst_info = 0.0;
    anomalies_equal_ = 0;
    for (std::size_t k = 0; k < config_.equal_pairs; ++k) {
      const std::size_t d = 2 + k % 3;
      std::uniform_int_distribution<std::size_t> pick_rank(2, d);
      const DensityMatrix rho = random_density(d, pick_rank(rng), rng);
      const TripartiteState state = build_closed_form(rho, rho);
      const CorrelationReport report = classify(state);
      const MeasurementStats stats = measure_stats(state);
      if (report.anomaly) ++anomalies_equal_;
      worst_neg = std::max(worst_neg, report.negativity_sum);
      worst_discord = std::max(worst_discord, report.discord);
      worst_info = std::max(worst_info, std::abs(mutual_information(state) -
                                                 oracle::binary_entropy_bits(stats.p_plus)));
    }
    equal_ran_ = true;
    const bool ok = worst_neg <= 1e-9 && worst_discord <= 1e-5 && worst_info <= 1e-9;
    return make(4, "equal mixed inputs carry only classical correlation", ok,
                std::to_string(config_.equal_pairs) + " pairs: max negativity_sum = " + sci(worst_neg) +
                    " (tol 1e-9), max discord = " + sci(worst_discord) +
                    " bits (tol 1e-5), max |I - H(p+)| = " + sci(worst_info) + " bits (tol 1e-9)");
  }

  CriterionResult equal_pure_inputs() {
    Rng rng(config_.seed + 5);
    double worst_info = 0.0, worst_entry = 0.0;
    for (std::size_t k = 0; k < config_.pure_pairs; ++k) {
      const std::size_t d = 2 + k % 3;
      const DensityMatrix rho = random_pure(d, rng);
      const TripartiteState state = build_closed_form(rho, rho);
      worst_info = std::max(worst_info, mutual_information(state));

      // |+><+| (x) rho (x) rho entry by entry; every entry of |+><+| is 1/2.
      const auto D = static_cast<Eigen::Index>(d);
      const Matrix& m = state.matrix();
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          const Eigen::Index r1 = (r / D) % D, c1 = (c / D) % D, r2 = r % D, c2 = c % D;
          const cplx expected = 0.5 * rho.matrix()(r1, c1) * rho.matrix()(r2, c2);
          worst_entry = std::max(worst_entry, std::abs(m(r, c) - expected));
        }
    }
    return make(5, "equal pure inputs give a product state", worst_info <= 1e-9 && worst_entry <= 1e-12,
                std::to_string(config_.pure_pairs) + " pairs: max I = " + sci(worst_info) +
                    " bits (tol 1e-9), max |rho - |+><+| (x) rho (x) rho| = " + sci(worst_entry) +
                    " (tol 1e-12)");
  }

  CriterionResult negativity_proportionality() {
    double lo = INFINITY, hi = -INFINITY, sum = 0.0, worst_paper = 0.0;
    std::size_t count = 0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        if (i == j) continue;
        const double a1 = -1.0 + 0.1 * i, a2 = -1.0 + 0.1 * j;
        const NegativityResult neg = negativity(example_state({a1, a2}));
        const double ratio = neg.sum / std::abs(a1 - a2);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        sum += ratio;
        ++count;
        worst_paper = std::max(worst_paper, std::abs(neg.paper - std::abs(a1 - a2)));
      }
    const double mean = sum / static_cast<double>(count);
    const double spread = (hi - lo) / mean;
    return make(6, "negativity proportional to |a1 - a2|", spread <= 1e-8 && worst_paper <= 1e-8,
                "negativity_sum / |a1 - a2| = " + fixed(mean) + " (kappa = " + fixed(1.0 / mean) +
                    "), relative spread = " + sci(spread) + " (tol 1e-8), max |N_paper - |a1 - a2|| = " +
                    sci(worst_paper) + " (tol 1e-8)");
  }

  CriterionResult sudden_death() {
    const TrajectoryResult traj = trajectory(TrajectoryConfig{});
    const auto show = [](const std::optional<double>& t) { return t ? fixed(*t) : std::string("none"); };
    bool ok = traj.death_time && traj.discord_death_time && traj.negativity_death_time;
    if (ok)
      ok = std::abs(*traj.death_time - 0.2) <= 1e-3 &&
           std::abs(*traj.discord_death_time - *traj.negativity_death_time) <= 1e-3;
    return make(7, "discord and negativity die together at t = 0.2", ok,
                "death_time = " + show(traj.death_time) + " (0.2 +- 1e-3), discord zero at " +
                    show(traj.discord_death_time) + ", negativity zero at " +
                    show(traj.negativity_death_time) + ", discord < 1e-5 bits from " +
                    show(traj.discord_threshold_time));
  }

  CriterionResult dissonance_rejection() {
    if (!witness_ran_) witness_soundness();
    if (!equal_ran_) equal_mixed_inputs();
    const auto rows = sweep(config_.sweep_resolution);
    std::size_t sweep_anomalies = 0;
    for (const auto& r : rows)
      if (r.anomaly) ++sweep_anomalies;
    const std::size_t total = anomalies_witness_ + anomalies_equal_ + sweep_anomalies;
    return make(8, "no dissonance anywhere", total == 0,
                "ANOMALY count: witness corpus " + std::to_string(anomalies_witness_) + ", equal inputs " +
                    std::to_string(anomalies_equal_) + ", sweep " + std::to_string(config_.sweep_resolution) +
                    "x" + std::to_string(config_.sweep_resolution) + " " + std::to_string(sweep_anomalies));
  }

  CriterionResult shot_estimator() {
    Matrix half = Matrix::Identity(2, 2) * 0.5;
    const DensityMatrix mixed(half);
    const TripartiteState state = build_closed_form(mixed, mixed);
    std::size_t misses = 0;
    double worst_z = 0.0;
    for (std::uint64_t s = 1; s <= config_.shot_seeds; ++s) {
      const ShotEstimate est = sample_shots(state, config_.shots, s);
      const double z = std::abs(est.estimate - 0.5) / est.standard_error;
      worst_z = std::max(worst_z, z);
      if (z > 5.0) ++misses;
    }
    return make(9, "shot estimator within 5 standard errors", misses == 0,
                std::to_string(config_.shot_seeds) + " seeds x " + std::to_string(config_.shots) +
                    " shots: worst |estimate - 0.5| / stderr = " + fixed(worst_z));
  }

 private:
  static CriterionResult make(int id, std::string name, bool passed, std::string detail) {
    return {id, std::move(name), passed, std::move(detail)};
  }
  static std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
  }
  static std::string fixed(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
  }

  Config config_;
  std::size_t anomalies_witness_ = 0, anomalies_equal_ = 0;
  bool witness_ran_ = false, equal_ran_ = false;
};

inline std::string format(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + "AC" + std::to_string(r.id) + " " + r.name +
         ": " + r.detail;
}

}  // namespace swapcorr::selftest
