#pragma once

#include <cstddef>
#include <vector>

#include "gweave/gframe.hpp"
#include "gweave/verification.hpp"
#include "gweave/weaving.hpp"

namespace gweave {

/// Vectors in H grouped by originating block. Group m is a d x n_m matrix
/// whose columns are the vectors; the flat order is (m, n) lexicographic.
struct VectorFamily {
  Eigen::Index domain_dim = 0;
  std::vector<Matrix> groups;

  std::size_t count() const;
  Matrix synthesis() const;  // d x count, columns in flat order
};

/// Per-block frames {f_{n,m}} of the codomains H_m, with their computed
/// bounds and the declared envelope [envelope_lower, envelope_upper] that
/// must contain every per-block bound.
struct SubspaceFrameSpec {
  std::vector<Matrix> frames;  // frames[m] is d_m x n_m
  std::vector<double> lower;   // NaN for a trivial H_m
  std::vector<double> upper;
  double envelope_lower = 0.0;
  double envelope_upper = 0.0;

  bool strict() const { return envelope_lower < envelope_upper; }
};

/// Computes per-block bounds and checks them against the envelope.
/// Throws EnvelopeViolation.
SubspaceFrameSpec make_subspace_spec(std::vector<Matrix> frames, double envelope_lower, double envelope_upper);

// Envelope taken as the tightest one containing every block.
SubspaceFrameSpec make_subspace_spec(std::vector<Matrix> frames);

/// Canonical orthonormal bases of H_m = C^{d_m}; all bounds 1.
SubspaceFrameSpec onb_families(const std::vector<Eigen::Index>& dims);

/// Every frame vector multiplied by c; bounds scale by c^2.
SubspaceFrameSpec scaled(const SubspaceFrameSpec& spec, double c);

/// Group m, entry n is Lambda_m^* f_{n,m}.
VectorFamily induced_vectors(const GFrame& frame, const SubspaceFrameSpec& spec);

// Ordinary frame operator Sum v v^*.
Matrix frame_operator_vectors(const VectorFamily& family);

BoundsReport frame_bounds_vectors(const VectorFamily& family, double tol = kDefaultTolerance);

struct VectorBasisVerdict {
  bool holds = false;
  double lower = 0.0;
  double upper = 0.0;
  double residual = 0.0;  // ONB only: ||Gram - I||_F
};

/// Riesz basis iff exactly d vectors with sigma_min^2 > tol * sigma_max^2;
/// bounds are the squared extreme singular values of the synthesis matrix.
VectorBasisVerdict is_riesz_basis_vectors(const VectorFamily& family, double tol = kDefaultTolerance);

/// Orthonormal basis iff exactly d vectors with Gram = I within tol.
VectorBasisVerdict is_onb_vectors(const VectorFamily& family, double tol = kDefaultTolerance);

/// Weaving at block granularity: sigma moves whole groups.
UniversalReport universal_bounds_vectors(const VectorFamily& vf, const VectorFamily& vg,
                                         std::size_t cap = kDefaultExhaustiveCap,
                                         double tol = kDefaultTolerance);

/// The g-frame operator equals the ordinary frame operator of the induced
/// canonical-basis vectors, and the frame / Riesz / orthonormal verdicts
/// agree on both sides.
VerificationRecord check_induced_operator_identity(const GFrame& frame, double tol = kDefaultTolerance);

/// Two g-frames weave iff their induced families (through per-block frames
/// with bounds inside the declared envelopes) weave, with the bound
/// transfers
///   min(A1,A2) A_g <= A_vec <= max(B1,B2) A_g
///   min(A1,A2) B_g <= B_vec <= max(B1,B2) B_g.
/// Throws EnvelopeViolation when a spec does not match its family.
VerificationRecord check_induced_weaving_equivalence(const GFrame& f, const GFrame& g,
                                                     const SubspaceFrameSpec& spec_f,
                                                     const SubspaceFrameSpec& spec_g,
                                                     std::size_t cap = kDefaultExhaustiveCap,
                                                     double tol = kDefaultTolerance);

}  // namespace gweave
