#include <doctest.h>

#include <cmath>
#include <random>

#include "spincorr/states.hpp"
#include "support.hpp"

using namespace spincorr;
using testing::max_abs_diff;

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix{identity(4) / 2.0}, ValidationError);
  CMatrix nonherm = identity(2) / 2.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{nonherm}, ValidationError);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg.diagonal() << 1.2, -0.2;
  CHECK_THROWS_AS(DensityMatrix{neg}, UnphysicalState);
  CHECK_THROWS_AS(DensityMatrix{identity(3) / 3.0}, ValidationError);
}

TEST_CASE("Bell-diagonal states") {
  CHECK(max_abs_diff(states::bell_diagonal({0, 0, 0}).matrix(), identity(4) / 4.0) < 1e-16);

  const auto vertex = states::bell_diagonal({-1, -1, -1});
  CHECK(vertex.purity() == doctest::Approx(1.0));
  const RVector ev = eigvalsh(vertex.matrix());
  CHECK(ev[3] == doctest::Approx(1.0));

  try {
    states::bell_diagonal({1, 1, 1});
    FAIL("expected rejection");
  } catch (const UnphysicalState& e) {
    CHECK(e.eigenvalue() == doctest::Approx(-0.5));
  }

  std::mt19937_64 rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto c = testing::random_physical_triple(rng);
    const auto rho = states::bell_diagonal(c);
    const auto back = states::correlation_triple(rho);
    CHECK(std::abs(back.c1 - c.c1) < 1e-12);
    CHECK(std::abs(back.c2 - c.c2) < 1e-12);
    CHECK(std::abs(back.c3 - c.c3) < 1e-12);
  }
}

TEST_CASE("M3N states") {
  const CorrelationTriple c{0.3, -0.2, 0.4};
  CHECK(max_abs_diff(states::m3n_state(c, 2).matrix(), states::bell_diagonal(c).matrix()) == 0.0);
  CHECK_NOTHROW(states::m3n_state({0.7, 0.3, 0.3}, 3));
  CHECK_THROWS_AS(states::m3n_state({1.0, 0.7, 0.7}, 3), UnphysicalState);
  CHECK_NOTHROW(states::m3n_state({1.0, 0.7, 0.7}, 4));
  CHECK_THROWS_AS(states::m3n_state(c, 1), ValidationError);

  std::mt19937_64 rng(32);
  for (int n : {3, 4}) {
    for (int k = 0; k < 10; ++k) {
      const auto t = testing::random_physical_triple(rng, n);
      const auto rho = states::m3n_state(t, n);
      const auto back = states::correlation_triple(rho);
      CHECK(std::abs(back.c1 - t.c1) < 1e-12);
      CHECK(std::abs(back.c2 - t.c2) < 1e-12);
      CHECK(std::abs(back.c3 - t.c3) < 1e-12);
      for (int q = 0; q < n; ++q) {
        const int keep[] = {q};
        CHECK(max_abs_diff(partial_trace(rho.matrix(), keep), identity(2) / 2.0) < 1e-14);
      }
    }
  }
}

TEST_CASE("pseudopure states") {
  std::mt19937_64 rng(33);
  const CVector psi = states::singlet();
  CHECK(max_abs_diff(states::pseudopure(psi, 1.0).matrix(), psi * psi.adjoint()) < 1e-16);
  CHECK(max_abs_diff(states::pseudopure(psi, 0.0).matrix(), identity(4) / 4.0) < 1e-16);

  // diag {(1−ε)/4, (1+ε)/4, (1+ε)/4, (1−ε)/4} with coherence −ε/2 between |01⟩ and |10⟩
  const double eps = 0.4;
  const CMatrix m = states::pseudo_singlet(eps).matrix();
  CHECK(m(0, 0).real() == doctest::Approx((1 - eps) / 4));
  CHECK(m(1, 1).real() == doctest::Approx((1 + eps) / 4));
  CHECK(m(1, 2).real() == doctest::Approx(-eps / 2));
  CHECK(m(0, 3) == cplx(0.0));

  // signal model: Tr(σ_u ρ_pp) = ε⟨ψ|σ_u|ψ⟩ for traceless σ_u
  for (int k = 0; k < 20; ++k) {
    CMatrix obs = testing::random_hermitian(4, rng);
    obs -= obs.trace() / 4.0 * identity(4);
    const double e = 0.05 * (k + 1);
    const double lhs = states::signal(states::pseudopure(psi, e), obs);
    const double rhs = e * psi.dot(obs * psi).real();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }

  CHECK_THROWS_AS(states::pseudopure(psi, 1.2), ValidationError);
  CHECK_THROWS_AS(states::pseudopure(2.0 * psi, 0.5), ValidationError);
}

TEST_CASE("thermal states") {
  const CMatrix h = 0.5 * tensor(sigma_z(), identity(2)) + 0.3 * tensor(identity(2), sigma_z()) +
                    0.1 * tensor(sigma_x(), sigma_x());
  const auto exact = states::thermal_state(h, 1e4);
  const auto approx = states::high_temperature_state(h, 1e4);
  CHECK(max_abs_diff(exact.matrix(), approx.matrix()) < 1e-8);
  // a constant energy offset changes nothing
  CHECK(max_abs_diff(states::high_temperature_state(h + 3.0 * identity(4), 50.0).matrix(),
                     states::high_temperature_state(h, 50.0).matrix()) < 1e-15);
  CHECK(states::signal(exact, tensor(sigma_z(), identity(2))) < 0.0);
  CHECK_THROWS_AS(states::thermal_state(h, 0.0), ValidationError);
}

TEST_CASE("Peres criterion") {
  CHECK_FALSE(states::peres_entangled(states::pseudo_singlet(0.3)).entangled);
  CHECK(states::peres_entangled(states::pseudo_singlet(0.34)).entangled);
  CHECK(states::pseudopure_entanglement_threshold() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  std::mt19937_64 rng(34);
  const DensityMatrix product(tensor(testing::random_qubit_matrix(rng), testing::random_qubit_matrix(rng)));
  CHECK_FALSE(states::peres_entangled(product).entangled);
  CHECK_THROWS_AS(states::peres_entangled(states::maximally_mixed(3)), ValidationError);

  SUBCASE("octahedron law on a coarse grid") {
    int checked = 0;
    for (int i = -5; i <= 5; ++i) {
      for (int j = -5; j <= 5; ++j) {
        for (int k = -5; k <= 5; ++k) {
          const CorrelationTriple c{0.2 * i, 0.2 * j, 0.2 * k};
          if (!states::is_physical(c)) continue;
          const bool outside = std::abs(c.c1) + std::abs(c.c2) + std::abs(c.c3) > 1.0 + 1e-9;
          CHECK(states::peres_entangled(states::bell_diagonal(c)).entangled == outside);
          ++checked;
        }
      }
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("metrology probes") {
  for (auto kind : {states::ProbeKind::quantum, states::ProbeKind::classical}) {
    CHECK(max_abs_diff(states::probe_state(0.0, kind).matrix(), identity(4) / 4.0) < 1e-16);
    for (int k = 0; k <= 10; ++k) {
      const double p = 0.1 * k;
      const double expected = 0.25 * std::pow(1 + p * p, 2);
      CHECK(states::probe_state(p, kind).purity() == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK(states::probe_state(1.0, states::ProbeKind::quantum).purity() == doctest::Approx(1.0));
  CHECK_THROWS_AS(states::probe_state(1.1, states::ProbeKind::quantum), ValidationError);
  CHECK(states::parse_probe_kind("classical") == states::ProbeKind::classical);
  CHECK_THROWS_AS(states::parse_probe_kind("mixed"), ValidationError);
}

TEST_CASE("correlation triple readout") {
  const auto zero = states::correlation_triple(states::maximally_mixed(2));
  CHECK(zero.max_abs() == 0.0);

  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    const CMatrix u = states::direct_measure_unitary(axis);
    CHECK((u.adjoint() * u - identity(4)).norm() < 1e-14);
    const CMatrix mapped = u.adjoint() * tensor(pauli(axis), identity(2)) * u;
    CHECK(max_abs_diff(mapped, tensor(pauli(axis), pauli(axis))) < 1e-14);
  }

  std::mt19937_64 rng(35);
  for (int k = 0; k < 100; ++k) {
    const auto rho = testing::random_state(2, rng);
    const auto c = states::correlation_triple(rho);
    CHECK(std::abs(states::direct_measure_ci(rho, Axis::x) - c.c1) < 1e-10);
    CHECK(std::abs(states::direct_measure_ci(rho, Axis::y) - c.c2) < 1e-10);
    CHECK(std::abs(states::direct_measure_ci(rho, Axis::z) - c.c3) < 1e-10);
  }

  const CorrelationTriple c{0.2, -0.7, 0.4};
  CHECK(c.intermediate_abs() == doctest::Approx(0.4));
  CHECK(c.max_abs() == doctest::Approx(0.7));
  CHECK(states::to_deviation_units(0.01, 0.1) == doctest::Approx(0.01 * std::log(2.0) / 0.01));
}
