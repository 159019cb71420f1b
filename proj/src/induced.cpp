#include "gweave/induced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gweave/error.hpp"

namespace gweave {

namespace {

constexpr double kCheckSlack = 1e-9;
constexpr double kIdentityTolerance = 1e-12;

struct BlockBounds {
  double lower;
  double upper;
};

BlockBounds block_bounds(const Matrix& frame) {
  if (frame.rows() == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  if (frame.cols() == 0) return {0.0, 0.0};
  const RealVector values = numkernel::hermitian_eigenvalues(numkernel::hermitian_part(frame * frame.adjoint()));
  return {std::max(values(0), 0.0), values(values.size() - 1)};
}

SubspaceFrameSpec bounds_of(std::vector<Matrix> frames) {
  SubspaceFrameSpec spec;
  spec.lower.reserve(frames.size());
  spec.upper.reserve(frames.size());
  for (const auto& frame : frames) {
    if (!numkernel::all_finite(frame)) throw Error(ErrorKind::NonFinite, "subspace frame has non-finite entries");
    const auto b = block_bounds(frame);
    spec.lower.push_back(b.lower);
    spec.upper.push_back(b.upper);
  }
  spec.frames = std::move(frames);
  return spec;
}

void check_envelope(const SubspaceFrameSpec& spec) {
  if (!(spec.envelope_lower > 0.0) || !(spec.envelope_lower <= spec.envelope_upper) ||
      !std::isfinite(spec.envelope_upper)) {
    throw Error(ErrorKind::EnvelopeViolation, "envelope [" + std::to_string(spec.envelope_lower) + ", " +
                                                  std::to_string(spec.envelope_upper) +
                                                  "] must satisfy 0 < lower <= upper < inf");
  }
  const double slack = kCheckSlack * std::max(1.0, spec.envelope_upper);
  for (std::size_t m = 0; m < spec.frames.size(); ++m) {
    if (std::isnan(spec.lower[m])) continue;
    if (spec.lower[m] < spec.envelope_lower - slack || spec.upper[m] > spec.envelope_upper + slack) {
      throw Error(ErrorKind::EnvelopeViolation,
                  "block " + std::to_string(m + 1) + " has bounds (" + std::to_string(spec.lower[m]) + ", " +
                      std::to_string(spec.upper[m]) + ") outside the envelope [" +
                      std::to_string(spec.envelope_lower) + ", " + std::to_string(spec.envelope_upper) + "]");
    }
  }
}

void require_matching_spec(const GFrame& frame, const SubspaceFrameSpec& spec, ErrorKind kind) {
  if (spec.frames.size() != frame.size()) {
    throw Error(kind == ErrorKind::ShapeMismatch ? ErrorKind::LengthMismatch : kind,
                "spec has " + std::to_string(spec.frames.size()) + " groups for " + std::to_string(frame.size()) +
                    " blocks");
  }
  for (std::size_t m = 0; m < frame.size(); ++m) {
    if (spec.frames[m].rows() != frame.block(m).rows()) {
      throw Error(kind, "spec group " + std::to_string(m + 1) + " has vectors of length " +
                            std::to_string(spec.frames[m].rows()) + ", block has " +
                            std::to_string(frame.block(m).rows()) + " rows");
    }
  }
}

std::vector<Matrix> group_contributions(const VectorFamily& family) {
  std::vector<Matrix> out;
  out.reserve(family.groups.size());
  for (const auto& group : family.groups) out.push_back(numkernel::hermitian_part(group * group.adjoint()));
  return out;
}

double largest_eigenvalue(const Matrix& s) { return numkernel::hermitian_eigenvalues(s).maxCoeff(); }

}  // namespace

std::size_t VectorFamily::count() const {
  std::size_t n = 0;
  for (const auto& group : groups) n += static_cast<std::size_t>(group.cols());
  return n;
}

Matrix VectorFamily::synthesis() const {
  Matrix out(domain_dim, static_cast<Eigen::Index>(count()));
  Eigen::Index column = 0;
  for (const auto& group : groups) {
    if (group.rows() != domain_dim) {
      throw Error(ErrorKind::ShapeMismatch, "vector of length " + std::to_string(group.rows()) +
                                                " in a family over C^" + std::to_string(domain_dim));
    }
    out.middleCols(column, group.cols()) = group;
    column += group.cols();
  }
  return out;
}

SubspaceFrameSpec make_subspace_spec(std::vector<Matrix> frames, double envelope_lower, double envelope_upper) {
  SubspaceFrameSpec spec = bounds_of(std::move(frames));
  spec.envelope_lower = envelope_lower;
  spec.envelope_upper = envelope_upper;
  check_envelope(spec);
  return spec;
}

SubspaceFrameSpec make_subspace_spec(std::vector<Matrix> frames) {
  SubspaceFrameSpec spec = bounds_of(std::move(frames));
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t m = 0; m < spec.frames.size(); ++m) {
    if (std::isnan(spec.lower[m])) continue;
    lo = std::min(lo, spec.lower[m]);
    hi = std::max(hi, spec.upper[m]);
  }
  if (!std::isfinite(lo)) lo = hi = 1.0;
  spec.envelope_lower = lo;
  spec.envelope_upper = hi;
  check_envelope(spec);
  return spec;
}

SubspaceFrameSpec onb_families(const std::vector<Eigen::Index>& dims) {
  std::vector<Matrix> frames;
  frames.reserve(dims.size());
  for (Eigen::Index d : dims) {
    if (d < 0) throw Error(ErrorKind::ShapeMismatch, "negative subspace dimension " + std::to_string(d));
    frames.push_back(Matrix::Identity(d, d));
  }
  return make_subspace_spec(std::move(frames), 1.0, 1.0);
}

SubspaceFrameSpec scaled(const SubspaceFrameSpec& spec, double c) {
  if (!(c != 0.0) || !std::isfinite(c)) throw Error(ErrorKind::EnvelopeViolation, "scale factor must be nonzero");
  SubspaceFrameSpec out = spec;
  const double c2 = c * c;
  for (auto& frame : out.frames) frame *= Scalar(c, 0.0);
  for (auto& v : out.lower) v *= c2;
  for (auto& v : out.upper) v *= c2;
  out.envelope_lower *= c2;
  out.envelope_upper *= c2;
  return out;
}

VectorFamily induced_vectors(const GFrame& frame, const SubspaceFrameSpec& spec) {
  require_matching_spec(frame, spec, ErrorKind::ShapeMismatch);
  VectorFamily family{frame.domain_dim(), {}};
  family.groups.reserve(frame.size());
  for (std::size_t m = 0; m < frame.size(); ++m) family.groups.push_back(frame.block(m).adjoint() * spec.frames[m]);
  return family;
}

Matrix frame_operator_vectors(const VectorFamily& family) {
  Matrix s = Matrix::Zero(family.domain_dim, family.domain_dim);
  for (const auto& group : family.groups) {
    if (group.rows() != family.domain_dim) {
      throw Error(ErrorKind::ShapeMismatch, "vector of length " + std::to_string(group.rows()) +
                                                " in a family over C^" + std::to_string(family.domain_dim));
    }
    s += group * group.adjoint();
  }
  return numkernel::hermitian_part(s);
}

BoundsReport frame_bounds_vectors(const VectorFamily& family, double tol) {
  if (family.domain_dim < 1) throw Error(ErrorKind::Empty, "vector family over a trivial space");
  const auto eig = numkernel::hermitian_eig(frame_operator_vectors(family));
  BoundsReport report;
  const Eigen::Index last = eig.eigenvalues.size() - 1;
  report.lower = eig.eigenvalues(0);
  report.upper = eig.eigenvalues(last);
  report.witness_low = eig.eigenvectors.col(0);
  report.witness_high = eig.eigenvectors.col(last);
  report.is_frame = report.lower > tol * report.upper && report.upper > 0.0;
  return report;
}

VectorBasisVerdict is_riesz_basis_vectors(const VectorFamily& family, double tol) {
  VectorBasisVerdict verdict;
  const Matrix x = family.synthesis();
  if (x.cols() == 0) return verdict;
  const auto s = numkernel::svd(x);
  const double smax = s.singular_values(0);
  const double smin = s.singular_values(s.singular_values.size() - 1);
  verdict.upper = smax * smax;
  verdict.lower = static_cast<Eigen::Index>(family.count()) == family.domain_dim ? smin * smin : 0.0;
  verdict.holds = static_cast<Eigen::Index>(family.count()) == family.domain_dim && verdict.upper > 0.0 &&
                  verdict.lower > tol * verdict.upper;
  return verdict;
}

VectorBasisVerdict is_onb_vectors(const VectorFamily& family, double tol) {
  VectorBasisVerdict verdict = is_riesz_basis_vectors(family, tol);
  const Matrix x = family.synthesis();
  const Matrix gram = x.adjoint() * x;
  verdict.residual = (gram - Matrix::Identity(gram.rows(), gram.cols())).norm();
  verdict.holds = static_cast<Eigen::Index>(family.count()) == family.domain_dim && verdict.residual <= tol;
  return verdict;
}

UniversalReport universal_bounds_vectors(const VectorFamily& vf, const VectorFamily& vg, std::size_t cap,
                                         double tol) {
  if (vf.domain_dim != vg.domain_dim) {
    throw Error(ErrorKind::ShapeMismatch, "vector families live in C^" + std::to_string(vf.domain_dim) +
                                              " and C^" + std::to_string(vg.domain_dim));
  }
  if (vf.groups.size() != vg.groups.size()) {
    throw Error(ErrorKind::LengthMismatch, "vector families have " + std::to_string(vf.groups.size()) + " and " +
                                               std::to_string(vg.groups.size()) + " groups");
  }
  if (vf.groups.size() > cap) {
    throw Error(ErrorKind::TooManyBlocks, "universal_bounds_vectors: " + std::to_string(vf.groups.size()) +
                                              " groups exceed the exhaustive cap of " + std::to_string(cap));
  }
  const double threshold =
      tol * std::max(largest_eigenvalue(frame_operator_vectors(vf)), largest_eigenvalue(frame_operator_vectors(vg)));
  return universal_bounds_of_contributions(group_contributions(vf), group_contributions(vg), threshold, cap);
}

VerificationRecord check_induced_operator_identity(const GFrame& frame, double tol) {
  VerificationRecord record;
  record.name = "induced_operator_identity";
  const VectorFamily vectors = induced_vectors(frame, onb_families(frame.row_counts()));

  const Matrix s_g = frame_operator_matrix(frame);
  const Matrix s_vec = frame_operator_vectors(vectors);
  const double residual = (s_g - s_vec).cwiseAbs().maxCoeff();
  const double allowed = kIdentityTolerance * std::max(1.0, s_g.cwiseAbs().maxCoeff());
  record.set("operator_residual", residual);

  const bool frame_g = optimal_bounds(frame, tol).is_frame;
  const bool frame_vec = frame_bounds_vectors(vectors, tol).is_frame;

  // Riesz on the g-side from the block Gram matrix [L_i L_j^*].
  const Eigen::Index rows = frame.total_rows();
  bool riesz_g = false;
  if (rows == frame.domain_dim()) {
    Matrix stacked(rows, frame.domain_dim());
    Eigen::Index r = 0;
    for (const auto& b : frame.blocks()) {
      stacked.middleRows(r, b.rows()) = b;
      r += b.rows();
    }
    const RealVector gram = numkernel::hermitian_eigenvalues(numkernel::hermitian_part(stacked * stacked.adjoint()));
    const double top = gram(gram.size() - 1);
    riesz_g = top > 0.0 && gram(0) > tol * top;
  }
  const bool riesz_vec = is_riesz_basis_vectors(vectors, tol).holds;
  const bool onb_g = is_g_orthonormal_basis(frame, tol).onb;
  const bool onb_vec = is_onb_vectors(vectors, tol).holds;

  record.set("frame_g", frame_g);
  record.set("frame_vec", frame_vec);
  record.set("riesz_g", riesz_g);
  record.set("riesz_vec", riesz_vec);
  record.set("onb_g", onb_g);
  record.set("onb_vec", onb_vec);

  const bool identity_ok = residual <= allowed;
  record.passed = identity_ok && frame_g == frame_vec && riesz_g == riesz_vec && onb_g == onb_vec;
  if (!identity_ok) record.detail += "frame operators differ; ";
  if (frame_g != frame_vec) record.detail += "frame verdicts differ; ";
  if (riesz_g != riesz_vec) record.detail += "Riesz verdicts differ; ";
  if (onb_g != onb_vec) record.detail += "orthonormal verdicts differ; ";
  return record;
}

VerificationRecord check_induced_weaving_equivalence(const GFrame& f, const GFrame& g,
                                                     const SubspaceFrameSpec& spec_f,
                                                     const SubspaceFrameSpec& spec_g, std::size_t cap,
                                                     double tol) {
  require_matching_spec(f, spec_f, ErrorKind::EnvelopeViolation);
  require_matching_spec(g, spec_g, ErrorKind::EnvelopeViolation);
  check_envelope(spec_f);
  check_envelope(spec_g);

  const UniversalReport g_side = universal_bounds_exhaustive(f, g, tol, cap);
  const UniversalReport v_side =
      universal_bounds_vectors(induced_vectors(f, spec_f), induced_vectors(g, spec_g), cap, tol);

  const double a1 = spec_f.envelope_lower;
  const double b1 = spec_f.envelope_upper;
  const double a2 = spec_g.envelope_lower;
  const double b2 = spec_g.envelope_upper;
  const double a_min = std::min(a1, a2);
  const double b_max = std::max(b1, b2);

  VerificationRecord record;
  record.name = "induced_weaving_equivalence";
  record.set("A_g", g_side.lower);
  record.set("B_g", g_side.upper);
  record.set("A_vec", v_side.lower);
  record.set("B_vec", v_side.upper);
  record.set("A1", a1);
  record.set("B1", b1);
  record.set("A2", a2);
  record.set("B2", b2);
  record.set("woven_g", g_side.woven);
  record.set("woven_vec", v_side.woven);
  record.set("strict_envelopes", spec_f.strict() && spec_g.strict());

  const double slack = kCheckSlack * std::max(1.0, b_max * g_side.upper);
  const bool equivalent = g_side.woven == v_side.woven;
  const bool lower_ok = a_min * g_side.lower <= v_side.lower + slack && v_side.lower <= b_max * g_side.lower + slack;
  const bool upper_ok = a_min * g_side.upper <= v_side.upper + slack && v_side.upper <= b_max * g_side.upper + slack;
  record.passed = equivalent && lower_ok && upper_ok;
  if (!equivalent) record.detail += "woven verdicts differ; ";
  if (!lower_ok) record.detail += "lower bound transfer fails; ";
  if (!upper_ok) record.detail += "upper bound transfer fails; ";
  if (!(spec_f.strict() && spec_g.strict())) record.detail += "tight envelope accepted; ";
  return record;
}

}  // namespace gweave
