#pragma once

// Seeded random families for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "gweave/gframe.hpp"

namespace gen {

using gweave::GFrame;
using gweave::Matrix;
using gweave::Scalar;

struct Shape {
  Eigen::Index d_min = 1;
  Eigen::Index d_max = 6;
  std::size_t n_min = 1;
  std::size_t n_max = 6;
  Eigen::Index rows_max = 3;
  bool allow_zero_rows = true;
  bool real = false;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Matrix matrix(Eigen::Index rows, Eigen::Index cols, bool real = false) {
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Scalar(normal(rng_), real ? 0.0 : normal(rng_));
    }
    return m;
  }

  // Arbitrary family; may or may not be a g-frame.
  GFrame family(const Shape& shape) {
    const Eigen::Index d = integer(shape.d_min, shape.d_max);
    const auto n = static_cast<std::size_t>(integer(static_cast<long>(shape.n_min), static_cast<long>(shape.n_max)));
    return family(d, n, shape);
  }

  GFrame family(Eigen::Index d, std::size_t n, const Shape& shape) {
    std::vector<Matrix> blocks;
    for (std::size_t m = 0; m < n; ++m) {
      const Eigen::Index rows = integer(shape.allow_zero_rows ? 0 : 1, shape.rows_max);
      blocks.push_back(matrix(rows, d, shape.real));
    }
    return GFrame(d, std::move(blocks));
  }

  // A family guaranteed to be a g-frame: its stacked rows span C^d.
  GFrame frame(const Shape& shape) {
    while (true) {
      GFrame f = family(shape);
      const auto b = gweave::optimal_bounds(f);
      if (b.is_frame && b.lower > 1e-3 * b.upper) return f;
    }
  }

  GFrame frame(Eigen::Index d, std::size_t n, const Shape& shape) {
    while (true) {
      GFrame f = family(d, n, shape);
      const auto b = gweave::optimal_bounds(f);
      if (b.is_frame && b.lower > 1e-3 * b.upper) return f;
    }
  }

  // Same shapes as f, every block moved by at most `eps` times its norm.
  GFrame perturb(const GFrame& f, double eps) {
    std::vector<Matrix> blocks;
    for (const auto& b : f.blocks()) {
      Matrix noise = matrix(b.rows(), b.cols(), f.is_real());
      const double scale = noise.norm() > 0 ? eps * std::max(b.norm(), 1e-3) / noise.norm() : 0.0;
      blocks.push_back(b + noise * Scalar(uniform(0.0, scale), 0.0));
    }
    return GFrame(f.domain_dim(), std::move(blocks));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
