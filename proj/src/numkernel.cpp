#include "gweave/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gweave/error.hpp"

namespace gweave::numkernel {

namespace {

void require_square(const Matrix& m, const char* op) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::ShapeMismatch, std::string(op) + ": matrix is " + std::to_string(m.rows()) +
                                              "x" + std::to_string(m.cols()) + ", expected square");
  }
}

void require_finite(const Matrix& m, const char* op) {
  if (!all_finite(m)) {
    throw Error(ErrorKind::NonFinite, std::string(op) + ": matrix has NaN or Inf entries");
  }
}

void require_hermitian(const Matrix& m, const char* op) {
  require_square(m, op);
  require_finite(m, op);
  const double residual = hermitian_residual(m);
  if (residual > kHermitianTolerance * std::max(1.0, m.norm())) {
    throw Error(ErrorKind::NonHermitian,
                std::string(op) + ": symmetry residual " + std::to_string(residual) + " exceeds tolerance");
  }
}

void normalize_phases(Matrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double magnitude = std::abs(vectors(i, j));
      if (magnitude > 1e-8) {
        vectors.col(j) *= std::conj(vectors(i, j)) / magnitude;
        break;
      }
    }
  }
}

// Eigen reads only the lower triangle; feed it the Hermitian part so that
// tiny asymmetries from accumulation are averaged rather than dropped.
Eigen::SelfAdjointEigenSolver<Matrix> decompose(const Matrix& m, int options) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), options);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonFinite, "hermitian_eig: eigensolver did not converge");
  }
  return solver;
}

}  // namespace

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Scalar z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double scale_of(const Matrix& m) { return std::max(kAbsoluteFloor, m.norm()); }

double hermitian_residual(const Matrix& m) { return (m - m.adjoint()).norm(); }

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

HermitianEig hermitian_eig(const Matrix& m) {
  require_hermitian(m, "hermitian_eig");
  if (m.rows() == 0) return {RealVector(0), Matrix(0, 0)};
  auto solver = decompose(m, Eigen::ComputeEigenvectors);
  HermitianEig result{solver.eigenvalues(), solver.eigenvectors()};
  normalize_phases(result.eigenvectors);
  return result;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  require_hermitian(m, "hermitian_eigenvalues");
  if (m.rows() == 0) return RealVector(0);
  return decompose(m, Eigen::EigenvaluesOnly).eigenvalues();
}

Svd svd(const Matrix& m) {
  require_finite(m, "svd");
  const Eigen::Index k = std::min(m.rows(), m.cols());
  if (k == 0) return {RealVector(0), Matrix(m.rows(), 0), Matrix(m.cols(), 0)};
  Eigen::JacobiSVD<Matrix> decomposition(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {decomposition.singularValues(), decomposition.matrixU(), decomposition.matrixV()};
}

Matrix solve_spd(const Matrix& m, const Matrix& rhs) {
  require_hermitian(m, "solve_spd");
  if (rhs.rows() != m.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "solve_spd: right-hand side has " + std::to_string(rhs.rows()) +
                                              " rows, matrix has " + std::to_string(m.rows()));
  }
  const RealVector spectrum = hermitian_eigenvalues(m);
  if (spectrum.size() > 0) {
    const double top = spectrum(spectrum.size() - 1);
    if (top <= 0.0 || spectrum(0) <= kRankTolerance * top) {
      throw Error(ErrorKind::Singular, "solve_spd: smallest eigenvalue " + std::to_string(spectrum(0)) +
                                           " is below the rank tolerance");
    }
  }
  Eigen::LLT<Matrix> factor(hermitian_part(m));
  if (factor.info() != Eigen::Success) {
    throw Error(ErrorKind::Singular, "solve_spd: Cholesky factorization failed");
  }
  return factor.solve(rhs);
}

Matrix inv_sqrt_psd(const Matrix& m) {
  const HermitianEig eig = hermitian_eig(m);
  const Eigen::Index n = eig.eigenvalues.size();
  if (n == 0) return Matrix(0, 0);
  const double top = eig.eigenvalues(n - 1);
  if (top <= 0.0 || eig.eigenvalues(0) <= kRankTolerance * top) {
    throw Error(ErrorKind::Singular, "inv_sqrt_psd: smallest eigenvalue " +
                                         std::to_string(eig.eigenvalues(0)) + " is below the rank tolerance");
  }
  const RealVector scales = eig.eigenvalues.array().rsqrt();
  const Matrix root = eig.eigenvectors * scales.cast<Scalar>().asDiagonal() * eig.eigenvectors.adjoint();
  return hermitian_part(root);
}

}  // namespace gweave::numkernel
