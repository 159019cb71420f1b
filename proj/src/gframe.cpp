#include "gweave/gframe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "gweave/error.hpp"
#include "gweave/induced.hpp"

namespace gweave {

namespace {

std::string shape_of(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_same_shape(const GFrame& f, const GFrame& g, const char* op) {
  if (f.domain_dim() != g.domain_dim()) {
    throw Error(ErrorKind::ShapeMismatch, std::string(op) + ": domain dimensions " +
                                              std::to_string(f.domain_dim()) + " and " +
                                              std::to_string(g.domain_dim()) + " differ");
  }
  if (f.size() != g.size()) {
    throw Error(ErrorKind::LengthMismatch, std::string(op) + ": families have " + std::to_string(f.size()) +
                                               " and " + std::to_string(g.size()) + " blocks");
  }
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (f.block(m).rows() != g.block(m).rows()) {
      throw Error(ErrorKind::ShapeMismatch, std::string(op) + ": block " + std::to_string(m + 1) + " is " +
                                                shape_of(f.block(m)) + " in one family and " +
                                                shape_of(g.block(m)) + " in the other");
    }
  }
}

Matrix frame_operator_without(const GFrame& frame, std::size_t skipped) {
  const Eigen::Index d = frame.domain_dim();
  Matrix s = Matrix::Zero(d, d);
  for (std::size_t m = 0; m < frame.size(); ++m) {
    if (m == skipped) continue;
    s.noalias() += frame.block(m).adjoint() * frame.block(m);
  }
  return numkernel::hermitian_part(s);
}

}  // namespace

GFrame::GFrame(Eigen::Index domain_dim, std::vector<Matrix> blocks, std::vector<std::string> labels)
    : domain_dim_(domain_dim), blocks_(std::move(blocks)), labels_(std::move(labels)) {
  if (domain_dim_ < 1) throw Error(ErrorKind::Empty, "g-frame domain dimension must be at least 1");
  if (blocks_.empty()) throw Error(ErrorKind::Empty, "g-frame needs at least one block");
  if (!labels_.empty() && labels_.size() != blocks_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "g-frame has " + std::to_string(blocks_.size()) + " blocks but " +
                                              std::to_string(labels_.size()) + " labels");
  }
  for (std::size_t m = 0; m < blocks_.size(); ++m) {
    if (blocks_[m].cols() != domain_dim_) {
      throw Error(ErrorKind::ShapeMismatch, "block " + label(m) + " is " + shape_of(blocks_[m]) +
                                                ", expected " + std::to_string(domain_dim_) + " columns");
    }
    if (!numkernel::all_finite(blocks_[m])) {
      throw Error(ErrorKind::NonFinite, "block " + label(m) + " has NaN or Inf entries");
    }
  }
}

std::string GFrame::label(std::size_t m) const {
  if (!labels_.empty() && !labels_.at(m).empty()) return labels_[m];
  return "#" + std::to_string(m + 1);
}

std::vector<Eigen::Index> GFrame::row_counts() const {
  std::vector<Eigen::Index> rows;
  rows.reserve(blocks_.size());
  for (const auto& b : blocks_) rows.push_back(b.rows());
  return rows;
}

Eigen::Index GFrame::total_rows() const {
  Eigen::Index total = 0;
  for (const auto& b : blocks_) total += b.rows();
  return total;
}

bool GFrame::is_real() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const Matrix& b) { return (b.imag().array() == 0.0).all(); });
}

GFrame new_gframe(Eigen::Index domain_dim, std::vector<Matrix> blocks) {
  return GFrame(domain_dim, std::move(blocks));
}

Matrix frame_operator_matrix(const GFrame& frame) {
  return frame_operator_without(frame, frame.size());
}

std::vector<Vector> apply(const GFrame& frame, const Vector& h) {
  if (h.size() != frame.domain_dim()) {
    throw Error(ErrorKind::ShapeMismatch, "apply: vector has length " + std::to_string(h.size()) +
                                              ", domain dimension is " + std::to_string(frame.domain_dim()));
  }
  std::vector<Vector> coefficients;
  coefficients.reserve(frame.size());
  for (const auto& b : frame.blocks()) coefficients.emplace_back(b * h);
  return coefficients;
}

double energy(const GFrame& frame, const Vector& h) {
  double total = 0.0;
  for (const auto& c : apply(frame, h)) total += c.squaredNorm();
  return total;
}

FrameOperatorResult frame_operator(const GFrame& frame) {
  FrameOperatorResult result;
  result.s = frame_operator_matrix(frame);
  const auto eig = numkernel::hermitian_eig(result.s);
  const Eigen::Index d = frame.domain_dim();
  result.lower = eig.eigenvalues(0);
  result.upper = eig.eigenvalues(d - 1);
  result.witness_low = eig.eigenvectors.col(0);
  result.witness_high = eig.eigenvectors.col(d - 1);
  return result;
}

BoundsReport optimal_bounds(const GFrame& frame, double tol) {
  const auto op = frame_operator(frame);
  BoundsReport report{op.lower, op.upper, op.witness_low, op.witness_high, false};
  report.is_frame = op.upper > 0.0 && op.lower > tol * op.upper;
  return report;
}

GFrame canonical_dual(const GFrame& frame) {
  const Matrix s = frame_operator_matrix(frame);
  Matrix s_inv;
  try {
    s_inv = numkernel::solve_spd(s, Matrix::Identity(s.rows(), s.cols()));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    throw Error(ErrorKind::NotAFrame, "canonical_dual: frame operator is singular");
  }
  s_inv = numkernel::hermitian_part(s_inv);
  std::vector<Matrix> blocks;
  blocks.reserve(frame.size());
  for (const auto& b : frame.blocks()) blocks.emplace_back(b * s_inv);
  return GFrame(frame.domain_dim(), std::move(blocks), frame.labels());
}

DualPairCheck is_dual_pair(const GFrame& f, const GFrame& g, double tol) {
  require_same_shape(f, g, "is_dual_pair");
  const Eigen::Index d = f.domain_dim();
  Matrix fg = Matrix::Zero(d, d);
  Matrix gf = Matrix::Zero(d, d);
  for (std::size_t m = 0; m < f.size(); ++m) {
    fg.noalias() += f.block(m).adjoint() * g.block(m);
    gf.noalias() += g.block(m).adjoint() * f.block(m);
  }
  DualPairCheck check;
  check.residual_synthesis = (fg - Matrix::Identity(d, d)).norm();
  check.residual_analysis = (gf - Matrix::Identity(d, d)).norm();
  check.holds = check.residual_synthesis <= tol && check.residual_analysis <= tol;
  return check;
}

ExactnessResult is_g_exact(const GFrame& frame, double tol) {
  const auto bounds = optimal_bounds(frame, tol);
  if (!bounds.is_frame) {
    throw Error(ErrorKind::NotAFrame, "is_g_exact: family is not a g-frame (lambda_min = " +
                                          std::to_string(bounds.lower) + ")");
  }
  ExactnessResult result;
  result.threshold = tol * bounds.upper;
  result.removal_lower.assign(frame.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t m = 0; m < frame.size(); ++m) {
    if (frame.block(m).rows() == 0) continue;
    const double lower = numkernel::hermitian_eigenvalues(frame_operator_without(frame, m))(0);
    result.removal_lower[m] = lower;
    if (lower > result.threshold) result.witnesses.push_back(m);
  }
  result.exact = result.witnesses.empty();
  if (!result.exact) result.witness = result.witnesses.front();
  return result;
}

RieszResult is_g_riesz_basis(const GFrame& frame, double tol) {
  const auto induced = induced_vectors(frame, onb_families(frame.row_counts()));
  const auto verdict = is_riesz_basis_vectors(induced, tol);
  RieszResult result;
  result.total_rows = frame.total_rows();
  result.riesz = verdict.holds;
  result.lower = verdict.lower;
  result.upper = verdict.upper;
  std::ostringstream detail;
  if (result.total_rows != frame.domain_dim()) {
    detail << "induced family has " << result.total_rows << " vectors in dimension " << frame.domain_dim();
  } else if (!result.riesz) {
    detail << "synthesis matrix is singular (sigma_min^2 = " << result.lower << ")";
  }
  result.detail = detail.str();
  return result;
}

OnbResult is_g_orthonormal_basis(const GFrame& frame, double tol) {
  OnbResult result;
  const Eigen::Index d = frame.domain_dim();
  std::ostringstream detail;
  std::size_t worst_m1 = 0;
  std::size_t worst_m2 = 0;
  for (std::size_t m1 = 0; m1 < frame.size(); ++m1) {
    const Matrix& a = frame.block(m1);
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (a.row(r).norm() <= tol) result.zero_induced.push_back({m1, r});
    }
    for (std::size_t m2 = 0; m2 < frame.size(); ++m2) {
      const Matrix& b = frame.block(m2);
      Matrix cross = a * b.adjoint();
      if (m1 == m2) cross -= Matrix::Identity(a.rows(), a.rows());
      const double residual = cross.norm();
      if (residual > result.cross_residual) {
        result.cross_residual = residual;
        worst_m1 = m1;
        worst_m2 = m2;
      }
    }
  }
  result.parseval_residual = (frame_operator_matrix(frame) - Matrix::Identity(d, d)).norm();
  result.onb = result.cross_residual <= tol && result.parseval_residual <= tol;
  if (!result.zero_induced.empty()) {
    const auto& z = result.zero_induced.front();
    detail << "induced vector of block " << frame.label(z.block) << " row " << z.row + 1 << " is zero; ";
  }
  if (result.cross_residual > tol) {
    detail << "cross-Gram of blocks " << frame.label(worst_m1) << "," << frame.label(worst_m2)
           << " off by " << result.cross_residual << "; ";
  }
  if (result.parseval_residual > tol) detail << "||S - I||_F = " << result.parseval_residual;
  result.detail = detail.str();
  return result;
}

Classification classify(const GFrame& frame, double tol) {
  Classification c;
  std::ostringstream detail;
  const auto bounds = optimal_bounds(frame, tol);
  c.is_g_frame = bounds.is_frame;
  detail << "bounds (" << bounds.lower << ", " << bounds.upper << ")";
  if (c.is_g_frame) {
    const auto exactness = is_g_exact(frame, tol);
    c.is_g_exact = exactness.exact;
    c.exactness_witness = exactness.witness;
    if (exactness.witness) detail << "; removable block " << frame.label(*exactness.witness);
    const auto riesz = is_g_riesz_basis(frame, tol);
    c.is_g_riesz = riesz.riesz;
    if (!riesz.detail.empty()) detail << "; " << riesz.detail;
    const auto onb = is_g_orthonormal_basis(frame, tol);
    c.is_g_onb = onb.onb && c.is_g_riesz;
    if (!onb.detail.empty()) detail << "; " << onb.detail;
  }
  c.detail = detail.str();
  return c;
}

GFrame compose_right(const GFrame& frame, const Matrix& u) {
  if (u.rows() != frame.domain_dim() || u.cols() != frame.domain_dim()) {
    throw Error(ErrorKind::ShapeMismatch, "compose_right: operator is " + shape_of(u) + ", expected " +
                                              std::to_string(frame.domain_dim()) + "x" +
                                              std::to_string(frame.domain_dim()));
  }
  std::vector<Matrix> blocks;
  blocks.reserve(frame.size());
  for (const auto& b : frame.blocks()) blocks.emplace_back(b * u);
  return GFrame(frame.domain_dim(), std::move(blocks), frame.labels());
}

GFrame transform_sqrt_inv(const GFrame& frame) {
  Matrix root;
  try {
    root = numkernel::inv_sqrt_psd(frame_operator_matrix(frame));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    throw Error(ErrorKind::NotAFrame, "transform_sqrt_inv: frame operator is singular");
  }
  return compose_right(frame, root);
}

}  // namespace gweave
