#include "doctest.h"

#include "expect_error.hpp"
#include "generators.hpp"
#include "gweave/induced.hpp"
#include "gweave/papersuite.hpp"
#include "oracles.hpp"

using namespace gweave;

namespace {

// Full-rank frames of each H_m with n_m >= d_m vectors.
SubspaceFrameSpec random_spec(gen::Generator& g, const GFrame& f) {
  std::vector<Matrix> frames;
  for (const auto& b : f.blocks()) {
    const Eigen::Index dm = b.rows();
    while (true) {
      Matrix frame = g.matrix(dm, dm + g.integer(0, 2));
      if (dm == 0) {
        frames.push_back(frame);
        break;
      }
      const RealVector ev = numkernel::hermitian_eigenvalues(numkernel::hermitian_part(frame * frame.adjoint()));
      if (ev(0) > 1e-2 * ev(ev.size() - 1)) {
        frames.push_back(frame);
        break;
      }
    }
  }
  return make_subspace_spec(frames);
}

}  // namespace

TEST_CASE("orthonormal subspace families") {
  const auto spec = onb_families({1, 1, 1});
  CHECK(spec.frames.size() == 3);
  CHECK(spec.envelope_lower == 1.0);
  CHECK(spec.envelope_upper == 1.0);
  CHECK_FALSE(spec.strict());
  const auto doubled = scaled(onb_families({3, 2}), 2.0);
  CHECK(doubled.lower[0] == doctest::Approx(4.0));
  CHECK(doubled.upper[1] == doctest::Approx(4.0));
  CHECK(doubled.envelope_upper == doctest::Approx(4.0));
  const auto with_empty = onb_families({2, 0});
  CHECK(with_empty.frames[1].size() == 0);
  CHECK(std::isnan(with_empty.lower[1]));
  CHECK(error_kind([] { onb_families({-1}); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("envelopes are checked") {
  Matrix wide(2, 3);
  wide << 1, 0, 1, 0, 1, 0;  // frame operator diag(2, 1)
  const auto spec = make_subspace_spec({wide});
  CHECK(spec.lower[0] == doctest::Approx(1.0));
  CHECK(spec.upper[0] == doctest::Approx(2.0));
  CHECK(spec.strict());
  CHECK_NOTHROW(make_subspace_spec({wide}, 0.5, 2.0));
  CHECK(error_kind([&] { make_subspace_spec({wide}, 1.5, 2.0); }) == ErrorKind::EnvelopeViolation);
  CHECK(error_kind([&] { make_subspace_spec({wide}, 1.0, 1.5); }) == ErrorKind::EnvelopeViolation);
  CHECK(error_kind([&] { make_subspace_spec({Matrix::Zero(2, 2)}); }) == ErrorKind::EnvelopeViolation);
}

TEST_CASE("induced vectors of the projection family") {
  const GFrame line = papersuite::build_projection_gframe(4, papersuite::ProjectionCodomain::SingleLine);
  const auto vf = induced_vectors(line, onb_families(line.row_counts()));
  CHECK(vf.count() == 4);
  CHECK((vf.synthesis() - Matrix::Identity(4, 4)).norm() == 0.0);
  const GFrame cover = papersuite::build_projection_gframe(5);
  const auto doubled = induced_vectors(cover, scaled(onb_families(cover.row_counts()), 2.0));
  const auto b = frame_bounds_vectors(doubled);
  CHECK(b.lower == doctest::Approx(4.0));
  CHECK(b.upper == doctest::Approx(4.0));
  CHECK(error_kind([&] { induced_vectors(cover, onb_families({1, 1, 1, 1, 1})); }) == ErrorKind::ShapeMismatch);
  CHECK(error_kind([&] { induced_vectors(cover, onb_families({1})); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("ordinary frame verdicts") {
  VectorFamily onb{3, {Matrix::Identity(3, 3)}};
  const auto b = frame_bounds_vectors(onb);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(1.0));
  CHECK(is_riesz_basis_vectors(onb).holds);
  CHECK(is_onb_vectors(onb).holds);
  VectorFamily twice{3, {Matrix::Identity(3, 3), Matrix::Identity(3, 3)}};
  CHECK(frame_bounds_vectors(twice).lower == doctest::Approx(2.0));
  CHECK_FALSE(is_riesz_basis_vectors(twice).holds);
  VectorFamily extra{3, {Matrix::Identity(3, 3), Matrix::Ones(3, 1)}};
  CHECK_FALSE(is_riesz_basis_vectors(extra).holds);
  CHECK_FALSE(is_onb_vectors(extra).holds);
  Matrix skew = Matrix::Identity(2, 2);
  skew(0, 1) = 1.0;
  VectorFamily riesz{2, {skew}};
  CHECK(is_riesz_basis_vectors(riesz).holds);
  CHECK_FALSE(is_onb_vectors(riesz).holds);
}

TEST_CASE("ordinary frame bounds against sampling") {
  gen::Generator g(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index d = g.integer(1, 4);
    VectorFamily vf{d, {g.matrix(d, g.integer(d, d + 3)), g.matrix(d, 1)}};
    const auto b = frame_bounds_vectors(vf);
    std::vector<Matrix> rows;
    for (const auto& grp : vf.groups) rows.push_back(grp.adjoint());
    const auto bracket = oracle::rayleigh(GFrame(d, rows), g.rng(), 2000);
    CHECK(bracket.lower == doctest::Approx(b.lower).epsilon(1e-6).scale(b.upper));
    CHECK(bracket.upper == doctest::Approx(b.upper).epsilon(1e-6).scale(b.upper));
  }
}

TEST_CASE("synthesis and Gram share nonzero eigenvalues") {
  gen::Generator g(42);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index d = g.integer(1, 5);
    VectorFamily vf{d, {g.matrix(d, g.integer(0, 3)), g.matrix(d, g.integer(1, 3))}};
    const Matrix x = vf.synthesis();
    const RealVector a = numkernel::hermitian_eigenvalues(frame_operator_vectors(vf));
    const RealVector b = numkernel::hermitian_eigenvalues(numkernel::hermitian_part(x.adjoint() * x));
    const Eigen::Index k = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < k; ++i) {
      CHECK(a(a.size() - 1 - i) == doctest::Approx(b(b.size() - 1 - i)).epsilon(1e-9).scale(std::max(1.0, a.maxCoeff())));
    }
  }
}

TEST_CASE("operator identity on random families") {
  gen::Generator g(43);
  for (int trial = 0; trial < 60; ++trial) {
    const GFrame f = g.family({.d_max = 5, .n_max = 5, .rows_max = 2});
    const auto r = check_induced_operator_identity(f);
    CHECK(r.passed);
    CHECK(r.get("operator_residual") <= 1e-12 * std::max(1.0, frame_operator_matrix(f).cwiseAbs().maxCoeff()));
  }
  const auto dup = papersuite::build_duplicated_rows_pair(4);
  const auto r = check_induced_operator_identity(dup.f);
  CHECK(r.passed);
  CHECK(r.get("riesz_g") == 0.0);
  CHECK((frame_operator_matrix(dup.f) - 2.0 * Matrix::Identity(16, 16)).norm() == 0.0);
  const auto omega = induced_vectors(*dup.g, onb_families(dup.g->row_counts()));
  CHECK(is_onb_vectors(omega).holds);
  const Matrix x = omega.synthesis();
  CHECK((x.cwiseAbs().colwise().sum().array() == 1.0).all());
  CHECK((x.cwiseAbs().rowwise().sum().array() == 1.0).all());
}

TEST_CASE("group weaving with orthonormal specs equals g-frame weaving") {
  gen::Generator g(44);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = g.integer(1, 4);
    const auto n = static_cast<std::size_t>(g.integer(1, 5));
    const GFrame f = g.family(d, n, {.rows_max = 2});
    const GFrame h = g.family(d, n, {.rows_max = 2});
    const auto vf = induced_vectors(f, onb_families(f.row_counts()));
    const auto vh = induced_vectors(h, onb_families(h.row_counts()));
    const auto a = universal_bounds_vectors(vf, vh);
    const auto b = universal_bounds_exhaustive(f, h);
    CHECK(a.lower == doctest::Approx(b.lower).epsilon(1e-10).scale(std::max(1.0, b.upper)));
    CHECK(a.upper == doctest::Approx(b.upper).epsilon(1e-10).scale(std::max(1.0, b.upper)));
    const auto same = universal_bounds_vectors(vf, vf);
    const auto fb = frame_bounds_vectors(vf);
    CHECK(same.lower == doctest::Approx(fb.lower).epsilon(1e-10).scale(std::max(1.0, fb.upper)));
    CHECK(same.upper == doctest::Approx(fb.upper).epsilon(1e-10).scale(std::max(1.0, fb.upper)));
  }
  VectorFamily three{2, {Matrix::Identity(2, 2), Matrix::Identity(2, 2), Matrix::Identity(2, 2)}};
  CHECK(error_kind([&] { universal_bounds_vectors(three, three, 2); }) == ErrorKind::TooManyBlocks);
  CHECK(error_kind([&] { universal_bounds_vectors(three, VectorFamily{2, {Matrix::Identity(2, 2)}}); }) ==
        ErrorKind::LengthMismatch);
}

TEST_CASE("induced weaving of the cover pairs") {
  const auto shifted = papersuite::build_shifted_cover_pair(8);
  const auto vs = universal_bounds_vectors(induced_vectors(shifted.f, onb_families(shifted.f.row_counts())),
                                           induced_vectors(*shifted.g, onb_families(shifted.g->row_counts())));
  CHECK(vs.lower == doctest::Approx(0.0));
  CHECK(vs.argmin_sigma.to_string() == "{1}");
  CHECK_FALSE(vs.woven);
  const auto eq_shifted = check_induced_weaving_equivalence(shifted.f, *shifted.g,
                                                            onb_families(shifted.f.row_counts()),
                                                            onb_families(shifted.g->row_counts()));
  CHECK(eq_shifted.passed);
  CHECK(eq_shifted.get("woven_g") == 0.0);
  CHECK(eq_shifted.get("woven_vec") == 0.0);

  const auto over = papersuite::build_overlapping_cover_pair(8);
  const auto sf = scaled(onb_families(over.f.row_counts()), 2.0);
  const auto sg = scaled(onb_families(over.g->row_counts()), 2.0);
  const auto vo = universal_bounds_vectors(induced_vectors(over.f, sf), induced_vectors(*over.g, sg));
  CHECK(vo.lower == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(vo.upper == doctest::Approx(8.0).epsilon(1e-12));
  const auto eq = check_induced_weaving_equivalence(over.f, *over.g, sf, sg);
  CHECK(eq.passed);
  CHECK(eq.get("A1") == 4.0);
  CHECK(eq.get("B2") == 4.0);
  CHECK(eq.get("strict_envelopes") == 0.0);
  CHECK(error_kind([&] { check_induced_weaving_equivalence(over.f, *over.g, sf, onb_families({1})); }) ==
        ErrorKind::EnvelopeViolation);
}

TEST_CASE("induced weaving equivalence on random pairs") {
  gen::Generator g(45);
  int woven = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index d = g.integer(1, 4);
    const auto n = static_cast<std::size_t>(g.integer(1, 5));
    const GFrame f = g.family(d, n, {.rows_max = 2});
    const GFrame h = g.family(d, n, {.rows_max = 2});
    const auto r = check_induced_weaving_equivalence(f, h, random_spec(g, f), random_spec(g, h));
    CHECK(r.passed);
    if (r.get("woven_g") == 1.0) ++woven;
  }
  CHECK(woven > 0);
  CHECK(woven < 30);
}
