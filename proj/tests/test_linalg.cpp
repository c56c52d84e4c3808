#include <doctest.h>

#include <numbers>

#include "ionlink/linalg.hpp"
#include "ionlink/operators.hpp"
#include "test_util.hpp"

using namespace ionlink;
using namespace ionlink::testing;

TEST_CASE("kron identity and diagonal cases") {
  ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs_diff(kron(i2, i2), ComplexMatrix::Identity(4, 4)) == 0.0);

  ComplexMatrix zi = kron(sigma_z(), i2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 1, 1, -1, -1;
  CHECK(max_abs_diff(zi, expected) == 0.0);
}

TEST_CASE("kron matches the index formula") {
  std::mt19937_64 rng(7);
  ComplexMatrix a = random_matrix(2, 2, rng);
  ComplexMatrix b = random_matrix(2, 2, rng);
  SUBCASE("sigma combinations") {
    a = sigma_plus();
    b = sigma_minus();
  }
  ComplexMatrix k = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          CHECK(k(2 * i + p, 2 * j + q) == a(i, j) * b(p, q));
}

TEST_CASE("kron is associative and satisfies the mixed-product property") {
  std::mt19937_64 rng(11);
  ComplexMatrix a = random_matrix(2, 3, rng);
  ComplexMatrix b = random_matrix(3, 2, rng);
  ComplexMatrix c = random_matrix(2, 2, rng);
  // products of three complex scalars round differently by grouping
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-14);

  ComplexMatrix a2 = random_matrix(3, 3, rng);
  ComplexMatrix b2 = random_matrix(2, 2, rng);
  ComplexMatrix c2 = random_matrix(3, 3, rng);
  ComplexMatrix d2 = random_matrix(2, 2, rng);
  CHECK(max_abs_diff(kron(a2, b2) * kron(c2, d2), kron(a2 * c2, b2 * d2)) <= 1e-12);
}

TEST_CASE("SpaceLayout rejects duplicates and unknown labels") {
  CHECK_THROWS_AS(SpaceLayout({{"a", 2}, {"a", 2}}), validation_error);
  SpaceLayout layout{{"a", 2}, {"b", 3}};
  CHECK(layout.total_dim() == 6);
  CHECK(layout.index_of("b") == 1);
  CHECK_THROWS_AS(layout.index_of("c"), validation_error);
}

TEST_CASE("partial_trace of a product state returns the kept factor") {
  std::mt19937_64 rng(3);
  ComplexMatrix rho_a = random_density(2, rng);
  ComplexMatrix rho_b = random_density(3, rng);
  DensityMatrix rho{SpaceLayout{{"A", 2}, {"B", 3}}, kron(rho_a, rho_b)};
  DensityMatrix reduced = partial_trace(rho, {"A"});
  CHECK(max_abs_diff(reduced.matrix, rho_a) <= 1e-12);
  CHECK(reduced.layout.total_dim() == 2);
}

TEST_CASE("partial_trace of a Bell state is maximally mixed") {
  ComplexVector bell = ComplexVector::Zero(4);
  bell(1) = bell(2) = 1.0 / std::numbers::sqrt2;  // (|eg> + |ge>)/sqrt(2)
  DensityMatrix rho{SpaceLayout{{"ion1", 2}, {"ion2", 2}}, bell * bell.adjoint()};
  DensityMatrix reduced = partial_trace(rho, {"ion1"});
  CHECK(max_abs_diff(reduced.matrix, ComplexMatrix::Identity(2, 2) / 2.0) <= 1e-12);
}

TEST_CASE("partial_trace preserves trace and Hermiticity") {
  std::mt19937_64 rng(5);
  SpaceLayout layout{{"x", 2}, {"y", 2}, {"z", 3}};
  for (int trial = 0; trial < 10; ++trial) {
    DensityMatrix rho{layout, random_density(layout.total_dim(), rng)};
    DensityMatrix reduced = partial_trace(rho, {"x", "z"});
    CHECK(std::abs(reduced.trace_real() - rho.trace_real()) <= 1e-12);
    CHECK(is_hermitian(reduced.matrix, 1e-10));
  }
  CHECK_THROWS_AS(partial_trace(DensityMatrix{layout, random_density(12, rng)}, {"nope"}),
                  validation_error);
  CHECK_THROWS_AS(partial_trace(DensityMatrix{layout, random_density(12, rng)}, {}),
                  validation_error);
}

TEST_CASE("partial_trace keeps factors in their original relative order") {
  std::mt19937_64 rng(13);
  ComplexMatrix rho_x = random_density(2, rng);
  ComplexMatrix rho_y = random_density(3, rng);
  ComplexMatrix rho_z = random_density(2, rng);
  DensityMatrix rho{SpaceLayout{{"x", 2}, {"y", 3}, {"z", 2}},
                    kron(kron(rho_x, rho_y), rho_z)};
  DensityMatrix reduced = partial_trace(rho, {"z", "x"});  // order in request irrelevant
  CHECK(reduced.layout.factor(0).label == "x");
  CHECK(reduced.layout.factor(1).label == "z");
  CHECK(max_abs_diff(reduced.matrix, kron(rho_x, rho_z)) <= 1e-12);
}

TEST_CASE("hermitian_eig on Pauli matrices") {
  EigResult z = hermitian_eig(sigma_z());
  CHECK(z.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z.eigenvalues(1) == doctest::Approx(-1.0).epsilon(1e-12));

  EigResult x = hermitian_eig(sigma_x());
  CHECK(x.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x.eigenvalues(1) == doctest::Approx(-1.0).epsilon(1e-12));
  // eigenvectors are (|0> +- |1>)/sqrt(2) up to phase
  for (int k = 0; k < 2; ++k) {
    ComplexVector v = x.eigenvectors.col(k);
    CHECK(std::abs(std::abs(v(0)) - 1.0 / std::numbers::sqrt2) <= 1e-12);
    CHECK(std::abs(std::abs(v(1)) - 1.0 / std::numbers::sqrt2) <= 1e-12);
  }
}

TEST_CASE("hermitian_eig reconstruction and trace identity") {
  std::mt19937_64 rng(17);
  ComplexMatrix m = random_hermitian(8, rng);
  EigResult e = hermitian_eig(m);
  ComplexMatrix recon =
      e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
  CHECK(max_abs_diff(recon, m) <= 1e-9);
  CHECK(std::abs(e.eigenvalues.sum() - m.trace().real()) <= 1e-10);
  for (int i = 0; i + 1 < 8; ++i) CHECK(e.eigenvalues(i) >= e.eigenvalues(i + 1));

  ComplexMatrix bad = m;
  bad(0, 1) += Complex(0.0, 1e-3);
  CHECK_THROWS_AS(hermitian_eig(bad), validation_error);
}

TEST_CASE("expm_hermitian_generator basics") {
  CHECK(max_abs_diff(expm_hermitian_generator(ComplexMatrix::Zero(3, 3), 2.5),
                     ComplexMatrix::Identity(3, 3)) <= 1e-12);

  // Rabi half-flip: exp(-i sigma_x pi/2) = -i sigma_x, global-phase exact.
  ComplexMatrix u = expm_hermitian_generator(sigma_x(), std::numbers::pi / 2.0);
  CHECK(max_abs_diff(u, Complex(0.0, -1.0) * sigma_x()) <= 1e-12);
}

TEST_CASE("expm_hermitian_generator group property and unitarity") {
  std::mt19937_64 rng(23);
  ComplexMatrix h = random_hermitian(6, rng);
  ComplexMatrix u1 = expm_hermitian_generator(h, 0.7);
  ComplexMatrix u2 = expm_hermitian_generator(h, 1.9);
  ComplexMatrix u12 = expm_hermitian_generator(h, 2.6);
  CHECK(max_abs_diff(u1 * u2, u12) <= 1e-10);
  CHECK(max_abs_diff(u1.adjoint() * u1, ComplexMatrix::Identity(6, 6)) <= 1e-10);

  // unitaries preserve state norm
  ComplexVector psi = random_matrix(6, 1, rng);
  psi /= psi.norm();
  CHECK(std::abs((u1 * psi).norm() - 1.0) <= 1e-10);
}

TEST_CASE("operator_cosine closed forms") {
  CHECK(max_abs_diff(operator_cosine(ComplexMatrix::Zero(4, 4)), ComplexMatrix::Identity(4, 4)) <=
        1e-12);
  CHECK(max_abs_diff(operator_cosine(std::numbers::pi * sigma_z()),
                     -ComplexMatrix::Identity(2, 2)) <= 1e-12);
}

TEST_CASE("ground-state expectation of cos[eta(a^dag + a)] is exp(-eta^2/2)") {
  const double eta = 0.1;
  const int n_max = 12;
  ComplexMatrix c = operator_cosine(eta * position_quadrature(n_max));
  CHECK(c(0, 0).real() == doctest::Approx(std::exp(-eta * eta / 2.0)).epsilon(1e-10));
}

TEST_CASE("DensityMatrix::validate rejects bad states") {
  SpaceLayout layout{{"q", 2}};
  DensityMatrix good{layout, ComplexMatrix::Identity(2, 2) / 2.0};
  CHECK_NOTHROW(good.validate());

  DensityMatrix bad_trace{layout, ComplexMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(bad_trace.validate(), validation_error);

  ComplexMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS((DensityMatrix{layout, neg}).validate(), validation_error);
}
