#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spincorr/correlations.hpp"
#include "support.hpp"

using namespace spincorr;
using namespace spincorr::correlations;
using testing::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix bell_phi_plus() {
  CVector psi = CVector::Zero(4);
  psi[0] = psi[3] = 1.0 / std::numbers::sqrt2;
  return DensityMatrix(psi * psi.adjoint());
}

// Mixture of |00⟩, |11⟩ and |01⟩: diagonal in the product z basis.
DensityMatrix classical_state() {
  CMatrix m = CMatrix::Zero(4, 4);
  m.diagonal() << 0.5, 0.2, 0.0, 0.3;
  return DensityMatrix(m);
}

CMatrix swap_gate() {
  CMatrix s = CMatrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1.0;
  return s;
}

}  // namespace

TEST_CASE("Shannon quantities") {
  const double uniform[] = {0.5, 0.5};
  CHECK(shannon(uniform) == doctest::Approx(1.0));
  const double certain[] = {1.0, 0.0};
  CHECK(shannon(certain) == 0.0);

  Eigen::MatrixXd independent(2, 2);
  independent << 0.12, 0.28, 0.18, 0.42;
  CHECK(std::abs(mutual_shannon(independent)) < 1e-14);

  Eigen::MatrixXd correlated(2, 2);
  correlated << 0.5, 0.0, 0.0, 0.5;
  CHECK(mutual_shannon(correlated) == doctest::Approx(1.0));
  CHECK(joint_shannon(correlated) == doctest::Approx(1.0));
  CHECK(conditional_shannon(correlated) == doctest::Approx(0.0));

  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Eigen::MatrixXd p(3, 2);
    for (int i = 0; i < 6; ++i) p(i) = u(rng);
    p /= p.sum();
    CHECK(mutual_shannon(p) == doctest::Approx(mutual_shannon_conditional_form(p)).epsilon(1e-12));
    CHECK(mutual_shannon(p) >= -1e-14);
  }

  const double bad[] = {0.7, 0.7};
  CHECK_THROWS_AS(shannon(bad), ValidationError);
  const double negative[] = {1.2, -0.2};
  CHECK_THROWS_AS(shannon(negative), ValidationError);
}

TEST_CASE("quantum mutual information") {
  std::mt19937_64 rng(52);
  const DensityMatrix product(tensor(testing::random_qubit_matrix(rng), testing::random_qubit_matrix(rng)));
  CHECK(std::abs(quantum_mutual_information(product)) < 1e-10);
  CHECK(quantum_mutual_information(bell_phi_plus()) == doctest::Approx(2.0).epsilon(1e-12));

  for (int k = 0; k < 20; ++k) {
    const auto c = testing::random_physical_triple(rng);
    CHECK(quantum_mutual_information(states::bell_diagonal(c)) ==
          doctest::Approx(luo_mutual_information(c)).epsilon(1e-10));
  }

  const auto rho3 = testing::random_state(3, rng);
  const int cut[] = {0, 2};
  const double i = quantum_mutual_information(rho3, cut);
  CHECK(i >= -1e-12);
  CHECK(i <= 2.0 + 1e-12);
}

TEST_CASE("measured states") {
  const MeasurementBasis z{0.0, 0.0};
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  CHECK(max_abs_diff(measured_state(bell_phi_plus(), z, Side::A).matrix(), expected) < 1e-15);
  CHECK(max_abs_diff(measured_state(classical_state(), z, Side::A).matrix(), classical_state().matrix()) < 1e-15);
  CHECK(max_abs_diff(measured_state(classical_state(), z, z).matrix(), classical_state().matrix()) < 1e-15);

  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const auto rho = testing::random_state(2, rng);
    const MeasurementBasis a{kPi * u(rng), 2 * kPi * u(rng)};
    const MeasurementBasis b{kPi * u(rng), 2 * kPi * u(rng)};
    for (Side side : {Side::A, Side::B}) {
      const auto once = measured_state(rho, a, side);
      CHECK(max_abs_diff(measured_state(once, a, side).matrix(), once.matrix()) < 1e-12);
    }
    const auto both = measured_state(rho, a, b);
    CHECK(max_abs_diff(measured_state(both, a, b).matrix(), both.matrix()) < 1e-12);

    const auto proj = a.projectors();
    CHECK(max_abs_diff(proj[0] + proj[1], identity(2)) < 1e-15);
    CHECK(max_abs_diff(proj[0] * proj[0], proj[0]) < 1e-15);
    const CMatrix e = a.eigenbasis();
    CHECK(max_abs_diff(e.adjoint() * e, identity(2)) < 1e-15);
  }

  const MeasurementBasis folded = MeasurementBasis{-0.4, 7.0}.canonical();
  CHECK(folded.theta >= 0.0);
  CHECK(folded.theta <= kPi);
  CHECK(folded.phi >= 0.0);
  CHECK(folded.phi < 2 * kPi);
  CHECK((folded.direction() - MeasurementBasis{-0.4, 7.0}.direction()).norm() < 1e-14);
}

TEST_CASE("entropic discord") {
  CHECK(entropic_discord(classical_state()).discord <= 1e-6);
  for (int k = 0; k <= 4; ++k) {
    const auto r = entropic_discord(states::probe_state(0.25 * k, states::ProbeKind::classical));
    CHECK(r.discord <= 1e-6);
  }

  const auto bell = entropic_discord(bell_phi_plus());
  CHECK(bell.mutual_info == doctest::Approx(2.0));
  CHECK(bell.classical == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bell.discord == doctest::Approx(1.0).epsilon(1e-9));

  std::mt19937_64 rng(54);
  for (int k = 0; k < 20; ++k) {
    const auto rho = testing::random_state(2, rng);
    const auto r = entropic_discord(rho);
    CHECK(r.discord >= -1e-9);
    CHECK(r.discord <= r.mutual_info + 1e-6);
    CHECK(r.classical == doctest::Approx(classical_correlation(rho, r.optimizer_basis)).epsilon(1e-12));

    // measuring B on ρ equals measuring A on the swapped state
    const DensityMatrix swapped(swap_gate() * rho.matrix() * swap_gate());
    CHECK(entropic_discord(rho, Side::B).discord == doctest::Approx(entropic_discord(swapped).discord).epsilon(1e-8));
  }
  CHECK(parse_side("B") == Side::B);
  CHECK_THROWS_AS(parse_side("C"), ValidationError);
}

TEST_CASE("Bell-diagonal closed forms") {
  CHECK(luo_discord({0, 0, 0}) == 0.0);
  CHECK(luo_discord({-1, -1, -1}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(luo_discord({1, 1, 1}), UnphysicalState);

  const CorrelationTriple frozen{1.0, 0.7, -0.7};
  CHECK(std::abs(luo_discord(frozen) - entropic_discord(states::bell_diagonal(frozen)).discord) <= 1e-4);

  std::mt19937_64 rng(55);
  for (int k = 0; k < 20; ++k) {
    const auto c = testing::random_physical_triple(rng);
    const auto r = entropic_discord(states::bell_diagonal(c));
    CHECK(std::abs(luo_discord(c) - r.discord) <= 1e-4);
    CHECK(std::abs(luo_classical(c) - r.classical) <= 1e-4);
  }
}

TEST_CASE("geometric discord") {
  for (Metric m : {Metric::trace, Metric::hilbert_schmidt, Metric::bures, Metric::fidelity_based}) {
    CHECK(geometric_discord(classical_state(), m).value <= 1e-6);
    CHECK(geometric_discord(classical_state(), m, Side::both).value <= 1e-6);
  }

  std::mt19937_64 rng(56);
  SUBCASE("trace fast path against the numeric minimizer") {
    for (int k = 0; k < 50; ++k) {
      const auto c = testing::random_physical_triple(rng);
      const double numeric = geometric_discord(states::bell_diagonal(c), Metric::trace).value;
      const double fast = trace_discord_bd(c);
      REQUIRE(std::abs(numeric - fast) <= 1e-3);
      CHECK(std::abs(numeric - fast) <= 1e-4);
    }
  }

  SUBCASE("two-sided minimization is never below one-sided") {
    for (int k = 0; k < 5; ++k) {
      const auto rho = testing::random_state(2, rng);
      CHECK(geometric_discord(rho, Metric::trace, Side::both).value >=
            geometric_discord(rho, Metric::trace).value - 1e-6);
    }
  }

  SUBCASE("states invariant under a rotated product measurement") {
    const MeasurementBasis a{0.7, 1.9};
    const MeasurementBasis b{2.1, 0.4};
    const auto chi = measured_state(testing::random_state(2, rng), a, b);
    for (Metric m : {Metric::trace, Metric::bures}) CHECK(geometric_discord(chi, m).value <= 1e-6);
  }
}

TEST_CASE("geometric classical correlation") {
  const DensityMatrix z_only = states::bell_diagonal({0, 0, 0.5});
  CHECK(geometric_classical(z_only) == doctest::Approx(0.5));
  CHECK(geometric_classical_numeric(z_only) == doctest::Approx(0.5).epsilon(1e-6));

  std::mt19937_64 rng(57);
  for (int k = 0; k < 10; ++k) {
    const auto c = testing::random_physical_triple(rng);
    const auto rho = states::bell_diagonal(c);
    CHECK(is_bell_diagonal(rho));
    REQUIRE(std::abs(geometric_classical(rho) - geometric_classical_numeric(rho)) <= 1e-3);
  }

  const auto general = testing::random_state(2, rng);
  CHECK_FALSE(is_bell_diagonal(general));
  CHECK(geometric_classical(general) == geometric_classical_numeric(general));
  const DensityMatrix product(tensor(testing::random_qubit_matrix(rng), testing::random_qubit_matrix(rng)));
  CHECK(geometric_classical(product) <= 1e-6);
}

TEST_CASE("axis-permutation covariance") {
  // H⊗H exchanges the x and z axes and flips y on both qubits
  const CMatrix h = (sigma_x() + sigma_z()) / std::numbers::sqrt2;
  const CMatrix hh = tensor(h, h);
  std::mt19937_64 rng(58);
  for (int k = 0; k < 5; ++k) {
    const auto c = testing::random_physical_triple(rng);
    const auto rho = states::bell_diagonal(c);
    const auto permuted = states::bell_diagonal({c.c3, c.c2, c.c1});
    CHECK(max_abs_diff(hh * rho.matrix() * hh, permuted.matrix()) < 1e-15);

    CHECK(luo_discord(c) == doctest::Approx(luo_discord({c.c3, c.c2, c.c1})).epsilon(1e-12));
    CHECK(std::abs(entropic_discord(rho).discord - entropic_discord(permuted).discord) <= 1e-9);
    CHECK(std::abs(geometric_discord(rho, Metric::trace).value - geometric_discord(permuted, Metric::trace).value) <=
          1e-9);
    CHECK(std::abs(global_quantum_discord(rho) - global_quantum_discord(permuted)) <= 1e-9);
    CHECK(geometric_classical(rho) == doctest::Approx(geometric_classical(permuted)).epsilon(1e-12));
  }
}

TEST_CASE("global quantum discord") {
  CHECK(global_quantum_discord(classical_state()) <= 1e-9);
  CMatrix diag3 = CMatrix::Zero(8, 8);
  diag3.diagonal() << 0.3, 0.1, 0.0, 0.2, 0.05, 0.05, 0.1, 0.2;
  CHECK(global_quantum_discord(DensityMatrix(diag3)) <= 1e-9);

  // single nonzero correlation: classical in that axis, so zero; two nonzero: discordant
  CHECK(global_quantum_discord(states::bell_diagonal({0, 0, 0.6})) <= 1e-9);
  CHECK(entropic_discord(states::bell_diagonal({0, 0, 0.6})).discord <= 1e-6);
  CHECK(global_quantum_discord(states::bell_diagonal({0.4, 0, 0.6})) > 1e-3);
  CHECK(entropic_discord(states::bell_diagonal({0.4, 0, 0.6})).discord > 1e-3);

  std::mt19937_64 rng(59);
  for (int k = 0; k < 5; ++k) CHECK(global_quantum_discord(testing::random_state(2, rng)) >= 0.0);

  const auto m3 = states::m3n_state({0.7, 0.3, 0.3}, 3);
  const auto r = global_quantum_discord_report(m3);
  CHECK(r.value > 1e-3);
  CHECK(r.bases.size() == 3);
  CHECK(gqd_objective(m3, r.bases) == doctest::Approx(r.value).epsilon(1e-12));

  CHECK_THROWS_AS(global_quantum_discord(states::maximally_mixed(5)), ValidationError);
}
