#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gweave/gframe.hpp"
#include "gweave/verification.hpp"

namespace gweave {

inline constexpr std::size_t kDefaultExhaustiveCap = 20;
inline constexpr std::size_t kMaxSelectionBlocks = 63;

/// A subset sigma of the block indices. Block m (0-based) is in sigma iff
/// bit m of the mask is set; sigma picks F's block, its complement G's.
class WeavingSelection {
 public:
  WeavingSelection(std::size_t n_blocks, std::uint64_t mask);

  static WeavingSelection full(std::size_t n_blocks);
  static WeavingSelection empty(std::size_t n_blocks);
  // Indices are 1-based, as printed in reports.
  static WeavingSelection from_indices(std::size_t n_blocks, const std::vector<std::size_t>& one_based);

  std::size_t n_blocks() const noexcept { return n_blocks_; }
  std::uint64_t mask() const noexcept { return mask_; }
  bool contains(std::size_t m) const noexcept { return (mask_ >> m) & 1U; }
  WeavingSelection complement() const;

  std::vector<std::size_t> indices() const;  // 1-based, ascending
  std::string to_string() const;             // "{1,2}"
  std::string bitmask_string() const;        // "0b" + N digits, block N first

  friend bool operator==(const WeavingSelection&, const WeavingSelection&) = default;

 private:
  std::size_t n_blocks_;
  std::uint64_t mask_;
};

/// Depth-first subset order: selections compare as their ascending index
/// lists, a proper prefix first. {} < {1} < {1,2} < {1,2,3} < {1,3} < {2}.
/// Ties between equal extrema go to the earlier selection in this order.
bool precedes(std::uint64_t a, std::uint64_t b);

enum class SearchMethod { Exhaustive, Search };
std::string to_string(SearchMethod method);

struct UniversalReport {
  double lower = 0.0;
  double upper = 0.0;
  WeavingSelection argmin_sigma{0, 0};
  WeavingSelection argmax_sigma{0, 0};
  bool woven = false;
  double threshold = 0.0;  // woven iff lower > threshold
  SearchMethod method = SearchMethod::Exhaustive;
  std::uint64_t subsets_examined = 0;
};

GFrame weave(const GFrame& f, const GFrame& g, const WeavingSelection& sigma);

BoundsReport weaving_bounds(const GFrame& f, const GFrame& g, const WeavingSelection& sigma,
                            double tol = kDefaultTolerance);

/// Extremes of lambda_min / lambda_max of Sum_{m in sigma} P_m +
/// Sum_{m not in sigma} Q_m over every sigma. This is the enumeration engine
/// shared by g-frame and vector-family weaving. `threshold` decides woven.
UniversalReport universal_bounds_of_contributions(const std::vector<Matrix>& p, const std::vector<Matrix>& q,
                                                  double threshold,
                                                  std::size_t cap = kDefaultExhaustiveCap);

UniversalReport universal_bounds_of_contributions_search(const std::vector<Matrix>& p,
                                                         const std::vector<Matrix>& q, double threshold,
                                                         std::uint64_t budget, std::uint64_t seed);

// The woven threshold: tol * max(B1, B2).
double woven_threshold(const GFrame& f, const GFrame& g, double tol = kDefaultTolerance);

UniversalReport universal_bounds_exhaustive(const GFrame& f, const GFrame& g, double tol = kDefaultTolerance,
                                            std::size_t cap = kDefaultExhaustiveCap);

/// Seeded random starts plus single-bit-flip local descent (ascent for the
/// upper bound). The lower value over-estimates the optimal universal lower
/// bound and the upper value under-estimates the upper one. Falls back to
/// full enumeration when budget >= 2^N.
UniversalReport universal_bounds_search(const GFrame& f, const GFrame& g, std::uint64_t budget,
                                        std::uint64_t seed, double tol = kDefaultTolerance);

struct WovenStrategy {
  SearchMethod method = SearchMethod::Exhaustive;
  std::uint64_t budget = 256;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultExhaustiveCap;
};

struct WovenVerdict {
  bool woven = false;
  // False only for a search run that found no counterexample.
  bool conclusive = true;
  UniversalReport report;
  std::optional<WeavingSelection> certificate;
  RealVector certificate_spectrum;
  Vector certificate_direction;
};

WovenVerdict is_woven(const GFrame& f, const GFrame& g, double tol = kDefaultTolerance,
                      const WovenStrategy& strategy = {});

/// Universal upper bound never exceeds B1 + B2.
VerificationRecord check_upper_sum(const GFrame& f, const GFrame& g, std::size_t cap = kDefaultExhaustiveCap);

/// A <= min(A1, A2) and B >= max(B1, B2). Throws NotWoven.
VerificationRecord check_optimal_vs_universal(const GFrame& f, const GFrame& g,
                                              std::size_t cap = kDefaultExhaustiveCap);

/// A < A1 + A2 and B < B1 + B2 (strict). Throws NotWoven.
VerificationRecord check_sum_not_optimal(const GFrame& f, const GFrame& g,
                                         std::size_t cap = kDefaultExhaustiveCap);

/// A family and its canonical dual weave with lower bound at least
/// min(1/(2 B1), 1/(2 B2)) and upper bound at most B1 + B2. Throws NotAFrame.
VerificationRecord check_dual_weaving(const GFrame& f, std::size_t cap = kDefaultExhaustiveCap);

/// The S^{-1/2} transformed pair has universal bounds inside
/// [A / B, B / A]. Throws NotWoven.
VerificationRecord check_sqrt_inv_weaving(const GFrame& f, const GFrame& g,
                                          std::size_t cap = kDefaultExhaustiveCap);

struct WeavingClassVerdict {
  bool holds = false;
  std::optional<WeavingSelection> witness;  // first failing sigma
  std::uint64_t subsets_examined = 0;
};

WeavingClassVerdict is_weaving_g_riesz(const GFrame& f, const GFrame& g, double tol = kDefaultTolerance,
                                       std::size_t cap = kDefaultExhaustiveCap);

WeavingClassVerdict is_weaving_g_onb(const GFrame& f, const GFrame& g, double tol = kDefaultTolerance,
                                     std::size_t cap = kDefaultExhaustiveCap);

/// Composing weaving g-orthonormal bases with a unitary keeps them weaving
/// g-orthonormal bases. Throws NotUnitary naming the failed half
/// (isometry: U^*U = I, surjectivity: UU^* = I).
VerificationRecord check_onb_weaving_unitary(const GFrame& f, const GFrame& g, const Matrix& u,
                                             double tol = kDefaultTolerance,
                                             std::size_t cap = kDefaultExhaustiveCap);

}  // namespace gweave
