#include <gtest/gtest.h>

#include <cmath>

#include "swapcorr/measures.hpp"
#include "swapcorr/scenarios.hpp"
#include "swapcorr/selftest.hpp"

using namespace swapcorr;

namespace {

constexpr double pi = 3.14159265358979323846;
const cplx I1(0.0, 1.0);

DensityMatrix fixed_qubit_1() {
  Matrix m(2, 2);
  m << 0.7, 0.2 - 0.1 * I1, 0.2 + 0.1 * I1, 0.3;
  return DensityMatrix(m);
}

DensityMatrix fixed_qubit_2() {
  Matrix m(2, 2);
  m << 0.4, 0.1 * I1, -0.1 * I1, 0.6;
  return DensityMatrix(m);
}

DensityMatrix fixed_qutrit_1() {
  Matrix m = Matrix::Zero(3, 3);
  m.diagonal() << 0.5, 0.3, 0.2;
  return DensityMatrix(m);
}

DensityMatrix fixed_qutrit_2() {
  Matrix m(3, 3);
  m << 0.4, 0.1, 0.0, 0.1, 0.35, 0.05 * I1, 0.0, -0.05 * I1, 0.25;
  return DensityMatrix(m);
}

}  // namespace

// Reference values below come from an independent dense-matrix script
// (grid + Nelder-Mead over the Bloch sphere), frozen here.

TEST(Oracle, DepolarizedPureVersusMaximallyMixed) {
  const CorrelationReport r = classify(example_state({1.0, 0.0}));
  EXPECT_NEAR(r.total_correlation, 1.311278124459133, 1e-10);
  EXPECT_NEAR(r.discord, 0.5, 1e-9);
  EXPECT_NEAR(r.negativity_sum, 0.25, 1e-12);
  EXPECT_EQ(r.classification, Classification::entangled);
  EXPECT_NEAR(r.discord_basis.theta, pi / 2, 1e-6);
}

TEST(Oracle, DepolarizedGenericPoint) {
  const CorrelationReport r = classify(example_state({0.5, -0.3}));
  EXPECT_NEAR(r.total_correlation, 1.086698910071197, 1e-10);
  EXPECT_NEAR(r.discord, 0.221229012642604, 1e-8);
}

TEST(Oracle, ComplexQubitPair) {
  const TripartiteState s = build_closed_form(fixed_qubit_1(), fixed_qubit_2());
  const CorrelationReport r = classify(s);
  EXPECT_NEAR(measure_stats(s).overlap, 0.44, 1e-14);
  EXPECT_NEAR(r.total_correlation, 1.096510058394582, 1e-10);
  EXPECT_NEAR(r.discord, 0.241059247834452, 1e-8);
  EXPECT_NEAR(r.negativity_sum, 0.208326666559997, 1e-10);
}

TEST(Oracle, QutritPair) {
  const TripartiteState s = build_closed_form(fixed_qutrit_1(), fixed_qutrit_2());
  const CorrelationReport r = classify(s);
  EXPECT_NEAR(measure_stats(s).overlap, 0.355, 1e-14);
  EXPECT_NEAR(r.total_correlation, 0.947353322129111, 1e-10);
  EXPECT_NEAR(r.discord, 0.040273897744613, 1e-8);
  EXPECT_NEAR(r.negativity_sum, 0.091024404111468, 1e-10);
}

TEST(Negativity, ConventionFactorIsFourAndMatchesTraceNorm) {
  Rng rng(21);
  for (const auto& [a, b] : selftest::mixed_corpus(40, rng)) {
    const TripartiteState s = build_closed_form(a, b);
    const NegativityResult n = negativity(s);
    EXPECT_DOUBLE_EQ(n.paper, 4.0 * n.sum);
    // sum |negative eigenvalues| = (||rho^T12||_1 - 1) / 2
    const RealVector ev = eigenvalues_hermitian(selftest::oracle::transpose_registers(s.matrix(), s.d()));
    EXPECT_NEAR(n.sum, 0.5 * (ev.cwiseAbs().sum() - 1.0), 1e-10);
  }
}

TEST(Negativity, EqualsQuarterOfParameterGapOnExample) {
  for (double a1 : {-0.9, -0.2, 0.4, 1.0})
    for (double a2 : {-1.0, 0.1, 0.7}) {
      const NegativityResult n = negativity(example_state({a1, a2}));
      EXPECT_NEAR(n.sum, std::abs(a1 - a2) / 4.0, 1e-12);
      EXPECT_NEAR(n.paper, std::abs(a1 - a2), 1e-11);
    }
}

TEST(MutualInformation, EqualInputsGiveBinaryEntropyOfReadout) {
  Rng rng(22);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho = random_mixed(2 + k % 3, rng);
    const TripartiteState s = build_closed_form(rho, rho);
    const MeasurementStats m = measure_stats(s);
    EXPECT_NEAR(mutual_information(s), selftest::oracle::binary_entropy_bits(m.p_plus), 1e-9);
  }
}

TEST(Discord, EqualInputsAreClassicalQuantum) {
  Rng rng(23);
  for (int k = 0; k < 15; ++k) {
    const DensityMatrix rho = random_mixed(2 + k % 3, rng);
    const TripartiteState s = build_closed_form(rho, rho);
    const CorrelationReport r = classify(s);
    EXPECT_LE(r.discord, 1e-5);
    EXPECT_LE(r.negativity_sum, 1e-9);
    EXPECT_TRUE(is_classical_quantum(s).classical_quantum);
    if (r.total_correlation > thresholds::correlation) {
      EXPECT_EQ(r.classification, Classification::classical_only);
    }
    EXPECT_FALSE(r.anomaly);
  }
}

TEST(Discord, BoundedByMutualInformationAndNonNegative) {
  Rng rng(24);
  for (const auto& [a, b] : selftest::mixed_corpus(30, rng)) {
    const DiscordResult d = discord_via_measurement(build_closed_form(a, b));
    EXPECT_GE(d.discord, 0.0);
    EXPECT_LE(d.discord, d.mutual_information + 1e-12);
    EXPECT_LE(d.classical_information, d.mutual_information + 1e-9);
  }
}

TEST(Discord, InvariantUnderGridSeed) {
  Rng rng(25);
  const auto corpus = selftest::mixed_corpus(15, rng);
  for (const auto& [a, b] : corpus) {
    const TripartiteState s = build_closed_form(a, b);
    const double base = discord_via_measurement(s).discord;
    for (std::uint64_t seed : {1u, 99u, 123456u}) {
      DiscordOptions opt;
      opt.seed = seed;
      EXPECT_NEAR(discord_via_measurement(s, opt).discord, base, 1e-7) << "seed " << seed;
    }
  }
}

TEST(Discord, DeterministicForFixedSeed) {
  const TripartiteState s = build_closed_form(fixed_qutrit_1(), fixed_qutrit_2());
  DiscordOptions opt;
  opt.seed = 7;
  const DiscordResult a = discord_via_measurement(s, opt), b = discord_via_measurement(s, opt);
  EXPECT_EQ(a.discord, b.discord);
  EXPECT_EQ(a.optimal_basis.theta, b.optimal_basis.theta);
  EXPECT_EQ(a.optimal_basis.phi, b.optimal_basis.phi);
}

TEST(Discord, WarmStartDoesNotChangeResult) {
  const TripartiteState s = example_state({0.5, -0.3});
  DiscordOptions opt;
  opt.warm_start = QubitMeasurementBasis{0.3, 2.0};
  EXPECT_NEAR(discord_via_measurement(s, opt).discord, discord_via_measurement(s).discord, 1e-7);
}

TEST(Basis, CanonicalFormAndOrthonormality) {
  const QubitMeasurementBasis b = QubitMeasurementBasis{2.0, -1.0}.canonical();
  EXPECT_GE(b.theta, 0.0);
  EXPECT_LE(b.theta, pi);
  EXPECT_GE(b.phi, 0.0);
  EXPECT_LT(b.phi, 2 * pi);
  EXPECT_NEAR(std::abs(b.ket(0).dot(b.ket(1))), 0.0, 1e-15);
  EXPECT_NEAR((b.projector(0) + b.projector(1) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(Classify, ProductForEqualPureInputs) {
  Rng rng(26);
  const DensityMatrix psi = random_pure(3, rng);
  const CorrelationReport r = classify(build_closed_form(psi, psi));
  EXPECT_LE(r.total_correlation, 1e-9);
  EXPECT_EQ(r.classification, Classification::product);
  EXPECT_STREQ(to_string(Classification::classical_only), "classical-only");
}

TEST(Classify, JsonCarriesTolerances) {
  const auto j = to_json(classify(example_state({1.0, 0.0})));
  EXPECT_EQ(j.at("classification"), "entangled");
  EXPECT_DOUBLE_EQ(j.at("tolerances").at("dissonance").get<double>(), 1e-5);
  EXPECT_DOUBLE_EQ(j.at("tolerances").at("negativity_convention").get<double>(), 4.0);
}

// Property: no nonzero discord without entanglement, over 500 random pairs.
TEST(Property, NoDissonanceOverRandomPairs) {
  Rng rng(27);
  const auto mixed = selftest::mixed_corpus(300, rng);
  const auto witness = selftest::witness_corpus(200, rng);
  std::size_t anomalies = 0, checked = 0;
  for (const auto* corpus : {&mixed, &witness})
    for (const auto& [a, b] : *corpus) {
      const CorrelationReport r = classify(build_closed_form(a, b));
      ++checked;
      if (r.anomaly) ++anomalies;
      if (r.negativity_sum <= thresholds::negativity) {
        EXPECT_LE(r.discord, thresholds::dissonance);
      }
    }
  EXPECT_EQ(checked, 500u);
  EXPECT_EQ(anomalies, 0u);
}
