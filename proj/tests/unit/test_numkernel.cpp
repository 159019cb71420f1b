#include "doctest.h"

#include "expect_error.hpp"
#include "generators.hpp"
#include "gweave/error.hpp"
#include "gweave/numkernel.hpp"
#include "oracles.hpp"

using namespace gweave;

namespace {

Matrix random_hermitian(gen::Generator& g, Eigen::Index n) {
  const Matrix a = g.matrix(n, n);
  return (a + a.adjoint()) * 0.5;
}

}  // namespace

TEST_CASE("eigenvalues agree with the inertia oracle") {
  gen::Generator g(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = g.integer(1, 8);
    const Matrix m = random_hermitian(g, n);
    const RealVector values = numkernel::hermitian_eigenvalues(m);
    for (Eigen::Index k = 0; k < n; ++k) {
      CHECK(values(k) == doctest::Approx(oracle::eigenvalue(m, static_cast<int>(k))).epsilon(1e-10));
    }
  }
}

TEST_CASE("eigendecomposition reconstructs and is phase-normalized") {
  gen::Generator g(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = g.integer(1, 7);
    const Matrix m = random_hermitian(g, n);
    const auto eig = numkernel::hermitian_eig(m);
    for (Eigen::Index k = 1; k < n; ++k) CHECK(eig.eigenvalues(k - 1) <= eig.eigenvalues(k));
    const Matrix& v = eig.eigenvectors;
    CHECK((v.adjoint() * v - Matrix::Identity(n, n)).norm() < 1e-12);
    CHECK((v * eig.eigenvalues.cast<Scalar>().asDiagonal() * v.adjoint() - m).norm() < 1e-12 * std::max(1.0, m.norm()));
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(v(i, j)) > 1e-8) {
          CHECK(std::abs(v(i, j).imag()) < 1e-14);
          CHECK(v(i, j).real() > 0);
          break;
        }
      }
    }
  }
}

TEST_CASE("eigendecomposition is reproducible") {
  gen::Generator g(13);
  const Matrix m = random_hermitian(g, 6);
  const auto a = numkernel::hermitian_eig(m);
  const auto b = numkernel::hermitian_eig(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("input validation") {
  Matrix nonsym(2, 2);
  nonsym << 1.0, 2.0, 0.0, 1.0;
  CHECK(error_kind([&] { numkernel::hermitian_eig(nonsym); }) == ErrorKind::NonHermitian);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(error_kind([&] { numkernel::hermitian_eig(nan); }) == ErrorKind::NonFinite);
  CHECK(error_kind([&] { numkernel::hermitian_eig(Matrix::Zero(2, 3)); }) == ErrorKind::ShapeMismatch);
  CHECK(error_kind([&] { numkernel::solve_spd(Matrix::Zero(2, 2), Matrix::Identity(2, 2)); }) == ErrorKind::Singular);
  CHECK(error_kind([&] { numkernel::inv_sqrt_psd(Matrix::Zero(3, 3)); }) == ErrorKind::Singular);
}

TEST_CASE("tiny asymmetry from accumulation is accepted") {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 1) = 1e-13;
  CHECK_NOTHROW(numkernel::hermitian_eig(m));
}

TEST_CASE("singular values square to the eigenvalues of the Gram matrix") {
  gen::Generator g(14);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = g.matrix(g.integer(1, 6), g.integer(1, 6));
    const auto s = numkernel::svd(a);
    const Matrix gram = a.adjoint() * a;
    const Eigen::Index k = s.singular_values.size();
    for (Eigen::Index i = 1; i < k; ++i) CHECK(s.singular_values(i - 1) >= s.singular_values(i));
    for (Eigen::Index i = 0; i < k; ++i) {
      const int rank_from_top = static_cast<int>(gram.rows() - 1 - i);
      CHECK(s.singular_values(i) * s.singular_values(i) ==
            doctest::Approx(oracle::eigenvalue(gram, rank_from_top)).epsilon(1e-9).scale(a.squaredNorm()));
    }
    CHECK((s.u * s.singular_values.cast<Scalar>().asDiagonal() * s.v.adjoint() - a).norm() < 1e-12 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("solve and inverse square root") {
  gen::Generator g(15);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = g.integer(1, 6);
    const Matrix a = g.matrix(n + 2, n);
    const Matrix m = numkernel::hermitian_part(a.adjoint() * a);
    const Matrix rhs = g.matrix(n, 2);
    const Matrix x = numkernel::solve_spd(m, rhs);
    CHECK((m * x - rhs).norm() < 1e-9 * std::max(1.0, rhs.norm()));
    const Matrix r = numkernel::inv_sqrt_psd(m);
    CHECK(numkernel::hermitian_residual(r) < 1e-12);
    CHECK((r * m * r - Matrix::Identity(n, n)).norm() < 1e-9);
    CHECK(numkernel::hermitian_eigenvalues(r)(0) > 0);
  }
}

TEST_CASE("scale and finiteness helpers") {
  CHECK(numkernel::scale_of(Matrix::Zero(2, 2)) == numkernel::kAbsoluteFloor);
  CHECK(numkernel::scale_of(Matrix::Identity(4, 4)) == doctest::Approx(2.0));
  CHECK(numkernel::all_finite(Matrix::Identity(2, 2)));
  Matrix inf = Matrix::Identity(2, 2);
  inf(1, 1) = Scalar(0.0, std::numeric_limits<double>::infinity());
  CHECK_FALSE(numkernel::all_finite(inf));
}
