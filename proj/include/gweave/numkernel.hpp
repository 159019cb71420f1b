#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gweave {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace numkernel {

// Relative tolerances are scaled by max(kAbsoluteFloor, ||M||_F).
inline constexpr double kAbsoluteFloor = 1e-12;
inline constexpr double kHermitianTolerance = 1e-8;
inline constexpr double kRankTolerance = 1e-10;

struct HermitianEig {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary, columns match eigenvalues
};

struct Svd {
  RealVector singular_values;  // descending, length min(rows, cols)
  Matrix u;                    // rows x k
  Matrix v;                    // cols x k
};

bool all_finite(const Matrix& m);
double scale_of(const Matrix& m);
double hermitian_residual(const Matrix& m);

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come back ascending. Each eigenvector is rotated so that its
/// first component of magnitude above 1e-8 is real and positive, which makes
/// the output reproducible across runs and platforms.
HermitianEig hermitian_eig(const Matrix& m);

/// Ascending eigenvalues only; same checks as hermitian_eig.
RealVector hermitian_eigenvalues(const Matrix& m);

Svd svd(const Matrix& m);

/// Solves M X = rhs for Hermitian positive definite M.
Matrix solve_spd(const Matrix& m, const Matrix& rhs);

/// Hermitian R with R M R = I.
Matrix inv_sqrt_psd(const Matrix& m);

// (M + M*) / 2; used after accumulating sums that are Hermitian in exact
// arithmetic.
Matrix hermitian_part(const Matrix& m);

}  // namespace numkernel
}  // namespace gweave
