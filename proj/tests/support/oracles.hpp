#pragma once

// Reference computations that share no code path with the library's
// spectral routines. Used only by tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "gweave/gframe.hpp"

namespace oracle {

using gweave::GFrame;
using gweave::Matrix;
using gweave::Scalar;
using gweave::Vector;

// Frame operator by explicit triple loop.
inline Matrix frame_operator(const GFrame& f) {
  const Eigen::Index d = f.domain_dim();
  Matrix s = Matrix::Zero(d, d);
  for (const auto& b : f.blocks()) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        Scalar acc = 0.0;
        for (Eigen::Index r = 0; r < b.rows(); ++r) acc += std::conj(b(r, i)) * b(r, j);
        s(i, j) += acc;
      }
    }
  }
  return s;
}

// Number of eigenvalues of Hermitian m strictly below x, from the signs of
// the pivots of an unpivoted LDL^* factorization of m - x I (Sylvester).
inline int count_below(const Matrix& m, double x) {
  const Eigen::Index n = m.rows();
  Matrix a = m;
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) -= x;
  int negative = 0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < n; ++k) {
    double pivot = a(k, k).real();
    if (std::abs(pivot) < 1e-300) pivot = -1e-18 * scale;  // nudge an exact zero pivot downward
    if (pivot < 0) ++negative;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar factor = a(i, k) / pivot;
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return negative;
}

// k-th smallest eigenvalue (0-based) by bisection on the inertia count.
inline double eigenvalue(const Matrix& m, int k) {
  double radius = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) radius = std::max(radius, m.row(i).cwiseAbs().sum());
  double lo = -radius - 1.0;
  double hi = radius + 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, radius); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(m, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double lambda_min(const Matrix& m) { return eigenvalue(m, 0); }
inline double lambda_max(const Matrix& m) { return eigenvalue(m, static_cast<int>(m.rows()) - 1); }

// Sum_m ||Lambda_m h||^2, block by block.
inline double energy(const GFrame& f, const Vector& h) {
  double e = 0.0;
  for (const auto& b : f.blocks()) e += (b * h).squaredNorm();
  return e;
}

// Riemannian gradient direction of the energy on the unit sphere, computed
// from block actions only.
inline Vector energy_gradient(const GFrame& f, const Vector& h) {
  Vector g = Vector::Zero(h.size());
  for (const auto& b : f.blocks()) g += b.adjoint() * (b * h);
  return g - oracle::energy(f, h) * h;
}

inline Vector random_unit(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> normal;
  Vector h(d);
  for (Eigen::Index i = 0; i < d; ++i) h(i) = Scalar(normal(rng), normal(rng));
  return h / h.norm();
}

// Solves a small dense system by Gaussian elimination with partial pivoting.
inline Vector solve_small(Matrix a, Vector b) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    a.row(k).swap(a.row(p));
    std::swap(b(k), b(p));
    if (std::abs(a(k, k)) < 1e-300) a(k, k) = 1e-300;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar f = a(i, k) / a(k, k);
      a.row(i) -= f * a.row(k);
      b(i) -= f * b(k);
    }
  }
  Vector x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Scalar acc = b(i);
    for (Eigen::Index j = i + 1; j < n; ++j) acc -= a(i, j) * x(j);
    x(i) = acc / a(i, i);
  }
  return x;
}

// Eigenvector of a small Hermitian h for eigenvalue lambda, by inverse
// iteration with a slightly shifted pole.
inline Vector small_eigenvector(const Matrix& h, double lambda) {
  const Eigen::Index n = h.rows();
  const double shift = 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff());
  Matrix a = h;
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) -= lambda + shift;
  Vector v = Vector::Ones(n);
  for (int it = 0; it < 3; ++it) {
    v = solve_small(a, v);
    v /= v.norm();
  }
  return v;
}

// Locally optimal Rayleigh-Ritz refinement of a start vector on
// span{x, residual, previous step}; the Ritz matrices come from block
// actions Lambda_m b only.
inline double ritz_polish(const GFrame& f, Vector x, bool minimize, int iterations = 200) {
  const Eigen::Index d = f.domain_dim();
  Vector previous = Vector::Zero(d);
  double value = oracle::energy(f, x);
  for (int it = 0; it < iterations; ++it) {
    std::vector<Vector> basis;
    for (Vector v : {x, energy_gradient(f, x), previous}) {
      for (const auto& b : basis) v -= b * b.dot(v);
      for (const auto& b : basis) v -= b * b.dot(v);
      const double n = v.norm();
      if (n > 1e-12) basis.push_back(v / n);
    }
    const auto k = static_cast<Eigen::Index>(basis.size());
    std::vector<std::vector<Vector>> images(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (const auto& blk : f.blocks()) images[i].push_back(blk * basis[i]);
    }
    Matrix h(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        Scalar acc = 0.0;
        for (std::size_t m = 0; m < f.size(); ++m) acc += images[i][m].dot(images[j][m]);
        h(i, j) = acc;
      }
    }
    const double lambda = minimize ? eigenvalue(h, 0) : eigenvalue(h, static_cast<int>(k) - 1);
    const Vector y = small_eigenvector(h, lambda);
    Vector next = Vector::Zero(d);
    for (Eigen::Index i = 0; i < k; ++i) next += y(i) * basis[static_cast<std::size_t>(i)];
    next /= next.norm();
    const double e = oracle::energy(f, next);
    const bool better = minimize ? e < value : e > value;
    if (!better) break;
    previous = next - x * x.dot(next);
    x = next;
    value = e;
  }
  return value;
}

struct RayleighBracket {
  double lower;
  double upper;
};

// Extremes of the energy over `samples` random unit vectors; the best of
// each side is then refined by ritz_polish.
inline RayleighBracket rayleigh(const GFrame& f, std::mt19937_64& rng, int samples = 10000) {
  const Eigen::Index d = f.domain_dim();
  Vector best_lo;
  Vector best_hi;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const Vector h = random_unit(rng, d);
    const double e = oracle::energy(f, h);
    if (e < lo) {
      lo = e;
      best_lo = h;
    }
    if (e > hi) {
      hi = e;
      best_hi = h;
    }
  }
  return {std::min(lo, ritz_polish(f, best_lo, true)), std::max(hi, ritz_polish(f, best_hi, false))};
}

// Woven family built by hand from a 0-based membership list.
inline GFrame weave_by_hand(const GFrame& f, const GFrame& g, std::uint64_t mask) {
  std::vector<Matrix> blocks;
  for (std::size_t m = 0; m < f.size(); ++m) blocks.push_back(((mask >> m) & 1U) ? f.block(m) : g.block(m));
  return GFrame(f.domain_dim(), blocks);
}

inline std::vector<std::size_t> index_list(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < n; ++m) {
    if ((mask >> m) & 1U) out.push_back(m + 1);
  }
  return out;
}

struct BruteUniversal {
  double lower = std::numeric_limits<double>::infinity();
  double upper = -std::numeric_limits<double>::infinity();
  std::vector<double> lower_of;  // per mask
  std::vector<double> upper_of;
};

inline BruteUniversal brute_universal(const GFrame& f, const GFrame& g) {
  BruteUniversal out;
  const std::uint64_t total = std::uint64_t{1} << f.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const Matrix s = oracle::frame_operator(weave_by_hand(f, g, mask));
    const double lo = lambda_min(s);
    const double hi = lambda_max(s);
    out.lower_of.push_back(lo);
    out.upper_of.push_back(hi);
    out.lower = std::min(out.lower, lo);
    out.upper = std::max(out.upper, hi);
  }
  return out;
}

// The earliest selection, comparing ascending index lists lexicographically,
// whose value is within `tie` of the optimum.
inline std::uint64_t first_within(const std::vector<double>& values, double target, double tie, std::size_t n) {
  std::uint64_t best = 0;
  bool found = false;
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
    if (std::abs(values[mask] - target) > tie) continue;
    if (!found || index_list(mask, n) < index_list(best, n)) {
      best = mask;
      found = true;
    }
  }
  return best;
}

}  // namespace oracle
