#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gweave/numkernel.hpp"

namespace gweave {

// Default classification tolerance, relative to the largest eigenvalue of
// the frame operator.
inline constexpr double kDefaultTolerance = 1e-8;

/// An ordered family of operator blocks Lambda_m : H -> H_m over a common
/// finite-dimensional domain H = C^d.
///
/// Block m is a dense d_m x d matrix. A block with zero rows stands for the
/// zero operator onto a trivial summand; a block of zeros with d_m > 0 is the
/// zero operator onto a nontrivial one. Both contribute nothing to the frame
/// operator.
class GFrame {
 public:
  GFrame(Eigen::Index domain_dim, std::vector<Matrix> blocks, std::vector<std::string> labels = {});

  Eigen::Index domain_dim() const noexcept { return domain_dim_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const Matrix& block(std::size_t m) const { return blocks_.at(m); }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

  // Empty when the family is unlabelled.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(std::size_t m) const;

  std::vector<Eigen::Index> row_counts() const;
  Eigen::Index total_rows() const;

  // True when every entry has an exactly zero imaginary part.
  bool is_real() const;

 private:
  Eigen::Index domain_dim_;
  std::vector<Matrix> blocks_;
  std::vector<std::string> labels_;
};

GFrame new_gframe(Eigen::Index domain_dim, std::vector<Matrix> blocks);

struct FrameOperatorResult {
  Matrix s;
  double lower = 0.0;
  double upper = 0.0;
  Vector witness_low;
  Vector witness_high;
};

struct BoundsReport {
  double lower = 0.0;
  double upper = 0.0;
  Vector witness_low;
  Vector witness_high;
  bool is_frame = false;
};

// Sum_m Lambda_m^* Lambda_m, Hermitian by construction.
Matrix frame_operator_matrix(const GFrame& frame);

/// The analysis map: coefficient vector Lambda_m h for every block.
std::vector<Vector> apply(const GFrame& frame, const Vector& h);

/// Sum_m ||Lambda_m h||^2 computed block by block, without forming S.
double energy(const GFrame& frame, const Vector& h);

FrameOperatorResult frame_operator(const GFrame& frame);

/// Optimal bounds (lambda_min(S), lambda_max(S)). The family counts as a
/// g-frame when lambda_min > tol * lambda_max.
BoundsReport optimal_bounds(const GFrame& frame, double tol = kDefaultTolerance);

/// Gamma_m = Lambda_m S^{-1}. Throws NotAFrame when S is not invertible.
GFrame canonical_dual(const GFrame& frame);

struct DualPairCheck {
  bool holds = false;
  double residual_synthesis = 0.0;  // || Sum F_m^* G_m - I ||_F
  double residual_analysis = 0.0;   // || Sum G_m^* F_m - I ||_F
};

DualPairCheck is_dual_pair(const GFrame& f, const GFrame& g, double tol = kDefaultTolerance);

struct ExactnessResult {
  bool exact = false;
  // First block whose removal keeps the family a g-frame.
  std::optional<std::size_t> witness;
  // Every such block, ascending.
  std::vector<std::size_t> witnesses;
  // lambda_min of the frame operator with block m removed. Zero-row blocks
  // are not tested and report NaN.
  std::vector<double> removal_lower;
  double threshold = 0.0;
};

/// A g-frame is g-exact when removing any single block destroys the lower
/// bound. Blocks with zero rows are skipped: they contribute no element.
ExactnessResult is_g_exact(const GFrame& frame, double tol = kDefaultTolerance);

struct RieszResult {
  bool riesz = false;
  double lower = 0.0;  // sigma_min^2 of the synthesis matrix
  double upper = 0.0;  // sigma_max^2
  Eigen::Index total_rows = 0;
  std::string detail;
};

/// Decided on the induced canonical-basis vectors {Lambda_m^* e_{n,m}}:
/// g-Riesz iff they number exactly d and their synthesis matrix is
/// nonsingular.
RieszResult is_g_riesz_basis(const GFrame& frame, double tol = kDefaultTolerance);

struct ZeroInducedVector {
  std::size_t block = 0;
  Eigen::Index row = 0;
};

struct OnbResult {
  bool onb = false;
  double cross_residual = 0.0;     // max over (m1, m2) of ||L_m1 L_m2^* - delta I||_F
  double parseval_residual = 0.0;  // ||S - I||_F
  std::vector<ZeroInducedVector> zero_induced;
  std::string detail;
};

OnbResult is_g_orthonormal_basis(const GFrame& frame, double tol = kDefaultTolerance);

struct Classification {
  bool is_g_frame = false;
  bool is_g_exact = false;
  bool is_g_riesz = false;
  bool is_g_onb = false;
  std::optional<std::size_t> exactness_witness;
  std::string detail;
};

Classification classify(const GFrame& frame, double tol = kDefaultTolerance);

/// Blocks Lambda_m U.
GFrame compose_right(const GFrame& frame, const Matrix& u);

/// Blocks Lambda_m S^{-1/2}; the result is Parseval.
GFrame transform_sqrt_inv(const GFrame& frame);

}  // namespace gweave
