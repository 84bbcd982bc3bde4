#include <doctest.h>

#include <cmath>
#include <random>

#include "spincorr/qmatrix.hpp"
#include "spincorr/states.hpp"
#include "support.hpp"

using namespace spincorr;
using testing::max_abs_diff;

TEST_CASE("tensor products of Pauli matrices") {
  CHECK(max_abs_diff(tensor(identity(2), identity(2)), identity(4)) == 0.0);

  CMatrix zz = CMatrix::Zero(4, 4);
  zz.diagonal() << 1, -1, -1, 1;
  CHECK(max_abs_diff(tensor(sigma_z(), sigma_z()), zz) == 0.0);

  // ¼[𝕀 + σx⊗σx] written out by hand
  CMatrix expected = 0.25 * identity(4);
  expected(0, 3) = expected(3, 0) = expected(1, 2) = expected(2, 1) = 0.25;
  CHECK(max_abs_diff(0.25 * (identity(4) + tensor(sigma_x(), sigma_x())), expected) < 1e-15);
}

TEST_CASE("embed places an operator on the requested qubit") {
  CHECK(max_abs_diff(embed(sigma_x(), 0, 2), tensor(sigma_x(), identity(2))) == 0.0);
  CHECK(max_abs_diff(embed(sigma_x(), 2, 3), tensor(identity(4), sigma_x())) == 0.0);
  CHECK_THROWS_AS(embed(sigma_x(), 3, 3), ValidationError);
}

TEST_CASE("qubit_count rejects non power-of-two dimensions") {
  CHECK(qubit_count(identity(8)) == 3);
  CHECK_THROWS_AS(qubit_count(identity(3)), ValidationError);
}

TEST_CASE("partial transpose") {
  std::mt19937_64 rng(11);

  SUBCASE("diagonal matrices are unchanged") {
    CMatrix d = CMatrix::Zero(4, 4);
    d.diagonal() << 0.1, 0.2, 0.3, 0.4;
    CHECK(max_abs_diff(partial_transpose(d, 0), d) == 0.0);
    CHECK(max_abs_diff(partial_transpose(d, 1), d) == 0.0);
  }

  SUBCASE("pseudo-singlet spectrum") {
    for (double eps : {0.0, 0.2, 1.0 / 3.0, 0.7, 1.0}) {
      const RVector ev = eigvalsh(partial_transpose(states::pseudo_singlet(eps).matrix(), 1));
      CHECK(ev[0] == doctest::Approx((1 - 3 * eps) / 4).epsilon(1e-12));
      for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx((1 + eps) / 4).epsilon(1e-12));
    }
  }

  SUBCASE("involution, trace and Hermiticity") {
    for (int k = 0; k < 50; ++k) {
      const CMatrix h = testing::random_hermitian(4, rng);
      for (int q : {0, 1}) {
        const CMatrix pt = partial_transpose(h, q);
        CHECK(max_abs_diff(partial_transpose(pt, q), h) < 1e-15);
        CHECK(std::abs(pt.trace() - h.trace()) < 1e-12);
        CHECK(is_hermitian(pt));
      }
    }
  }

  CHECK_THROWS_AS(partial_transpose(identity(4), 2), ValidationError);
}

TEST_CASE("partial trace") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    const auto c = testing::random_physical_triple(rng);
    const CMatrix bd = states::bell_diagonal(c).matrix();
    CHECK(max_abs_diff(partial_trace(bd, {0}), 0.5 * identity(2)) < 1e-14);
    CHECK(max_abs_diff(partial_trace(bd, {1}), 0.5 * identity(2)) < 1e-14);
  }

  const CMatrix a = testing::random_qubit_matrix(rng);
  const CMatrix b = testing::random_qubit_matrix(rng);
  CHECK(max_abs_diff(partial_trace(tensor(a, b), {0}), a) < 1e-14);
  CHECK(max_abs_diff(partial_trace(tensor(a, b), {1}), b) < 1e-14);

  for (int k = 0; k < 20; ++k) {
    const CMatrix rho = testing::random_state(3, rng).matrix();
    const CMatrix r = partial_trace(rho, {0, 2});
    CHECK(r.rows() == 4);
    CHECK(std::abs(r.trace() - 1.0) < 1e-12);
    CHECK(is_hermitian(r));
  }

  CHECK_THROWS_AS(partial_trace(identity(4), std::initializer_list<int>{}), ValidationError);
}

TEST_CASE("spectral decomposition") {
  std::mt19937_64 rng(13);
  for (int dim : {2, 4, 8, 16}) {
    for (int k = 0; k < 10; ++k) {
      const CMatrix h = testing::random_hermitian(dim, rng);
      const SpectralDecomposition sd = eigh(h);
      CHECK((h - sd.reconstruct()).norm() <= 1e-10 * h.norm());
      CHECK((sd.eigenvectors.adjoint() * sd.eigenvectors - identity(dim)).norm() < 1e-10);
      for (int i = 1; i < dim; ++i) CHECK(sd.eigenvalues[i] >= sd.eigenvalues[i - 1]);
    }
  }

  SUBCASE("deterministic phase convention") {
    const CMatrix h = testing::random_hermitian(8, rng);
    const SpectralDecomposition a = eigh(h);
    const SpectralDecomposition b = eigh(h);
    CHECK(max_abs_diff(a.eigenvectors, b.eigenvectors) == 0.0);
    for (int j = 0; j < 8; ++j) {
      Eigen::Index imax = 0;
      a.eigenvectors.col(j).cwiseAbs().maxCoeff(&imax);
      CHECK(std::abs(a.eigenvectors(imax, j).imag()) < 1e-15);
      CHECK(a.eigenvectors(imax, j).real() > 0.0);
    }
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(0.5 * identity(2)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(von_neumann_entropy(0.25 * identity(4)) == doctest::Approx(2.0).epsilon(1e-14));
  CVector psi(2);
  psi << 0.6, cplx(0, 0.8);
  CHECK(std::abs(von_neumann_entropy(psi * psi.adjoint())) < 1e-12);

  CMatrix bad = CMatrix::Zero(2, 2);
  bad.diagonal() << 1.1, -0.1;
  CHECK_THROWS_AS(von_neumann_entropy(bad), NumericalError);

  std::mt19937_64 rng(14);
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = testing::random_qubit_matrix(rng);
    const CMatrix b = testing::random_state(2, rng).matrix();
    const double s = von_neumann_entropy(tensor(a, b));
    CHECK(s == doctest::Approx(von_neumann_entropy(a) + von_neumann_entropy(b)).epsilon(1e-9));
    CHECK(s >= -1e-12);
    CHECK(s <= 3.0 + 1e-12);
  }
}

TEST_CASE("distances") {
  std::mt19937_64 rng(15);
  const CMatrix rho = testing::random_state(2, rng).matrix();
  for (Metric m : {Metric::trace, Metric::hilbert_schmidt, Metric::bures, Metric::fidelity_based}) {
    CHECK(distance(rho, rho, m) == doctest::Approx(0.0).epsilon(1e-7));
  }

  CMatrix up = CMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  CMatrix down = CMatrix::Zero(2, 2);
  down(1, 1) = 1.0;
  CHECK(distance(up, down, Metric::trace) == doctest::Approx(1.0));
  CHECK(distance(up, down, Metric::fidelity_based) == doctest::Approx(1.0));
  CHECK(distance(up, down, Metric::bures) == doctest::Approx(std::sqrt(2.0)));
  CHECK(distance(up, down, Metric::hilbert_schmidt) == doctest::Approx(2.0));

  CHECK_THROWS_AS(distance(up, identity(4) / 4.0, Metric::trace), ValidationError);

  SUBCASE("Bures and fidelity-based are both monotone in F") {
    for (int k = 0; k < 100; ++k) {
      const CMatrix a = testing::random_state(2, rng).matrix();
      const CMatrix b = testing::random_state(2, rng).matrix();
      const CMatrix c = testing::random_state(2, rng).matrix();
      const double f1 = fidelity(a, b);
      const double f2 = fidelity(a, c);
      const bool closer = f1 > f2;
      CHECK((distance(a, b, Metric::bures) < distance(a, c, Metric::bures)) == closer);
      CHECK((distance(a, b, Metric::fidelity_based) < distance(a, c, Metric::fidelity_based)) == closer);
    }
  }

  SUBCASE("fidelity symmetry and identity of indiscernibles") {
    for (int k = 0; k < 50; ++k) {
      const CMatrix a = testing::random_state(2, rng).matrix();
      const CMatrix b = testing::random_state(2, rng).matrix();
      CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-9));
      CHECK(fidelity(a, b) < 1.0 - 1e-8);
      CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  CHECK(parse_metric("fidelity") == Metric::fidelity_based);
  CHECK_THROWS_AS(parse_metric("euclid"), ValidationError);
}

TEST_CASE("exponentials and unitaries") {
  CHECK(max_abs_diff(unitary_of(sigma_z(), 0.0), identity(2)) < 1e-15);

  std::mt19937_64 rng(16);
  for (int k = 0; k < 20; ++k) {
    const CMatrix h = testing::random_hermitian(4, rng);
    const CMatrix u = unitary_of(h, 0.37 * k);
    CHECK((u.adjoint() * u - identity(4)).norm() < 1e-12);
    CHECK(max_abs_diff(u, matrix_exponential(CMatrix(cplx(0, -0.37 * k) * h))) < 1e-10);
  }

  std::normal_distribution<double> g;
  for (int k = 0; k < 20; ++k) {
    Eigen::Matrix3d a;
    for (int i = 0; i < 9; ++i) a(i) = g(rng);
    const Eigen::Matrix3d prod = matrix_exponential(Eigen::Matrix3d(a * 0.8)) * matrix_exponential(Eigen::Matrix3d(-a * 0.8));
    CHECK((prod - Eigen::Matrix3d::Identity()).norm() < 1e-10);
  }
}
