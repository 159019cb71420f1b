#include "gweave/weaving.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "gweave/error.hpp"

namespace gweave {

namespace {

constexpr double kCheckSlack = 1e-9;
constexpr double kTieTolerance = 1e-12;

std::uint64_t low_bits(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void require_weavable(const GFrame& f, const GFrame& g, const char* op) {
  if (f.domain_dim() != g.domain_dim()) {
    throw Error(ErrorKind::ShapeMismatch, std::string(op) + ": domain dimensions " +
                                              std::to_string(f.domain_dim()) + " and " +
                                              std::to_string(g.domain_dim()) + " differ");
  }
  if (f.size() != g.size()) {
    throw Error(ErrorKind::LengthMismatch, std::string(op) + ": families have " + std::to_string(f.size()) +
                                               " and " + std::to_string(g.size()) + " blocks");
  }
}

void require_within_cap(std::size_t n, std::size_t cap, const char* op) {
  if (n > cap || n > kMaxSelectionBlocks) {
    throw Error(ErrorKind::TooManyBlocks, std::string(op) + ": " + std::to_string(n) +
                                              " blocks exceed the exhaustive cap of " + std::to_string(cap));
  }
}

// Visits every subset of {0..n-1} in depth-first order; stops early when the
// visitor returns false.
template <typename Visitor>
void for_each_selection(std::size_t n, Visitor&& visit) {
  std::vector<std::size_t> stack;
  std::uint64_t mask = 0;
  if (!visit(mask)) return;
  if (n == 0) return;
  stack.push_back(0);
  mask = 1;
  while (true) {
    if (!visit(mask)) return;
    const std::size_t last = stack.back();
    if (last + 1 < n) {
      stack.push_back(last + 1);
      mask |= std::uint64_t{1} << (last + 1);
      continue;
    }
    stack.pop_back();
    mask &= ~(std::uint64_t{1} << last);
    if (stack.empty()) return;
    const std::size_t top = stack.back();
    mask &= ~(std::uint64_t{1} << top);
    stack.back() = top + 1;
    mask |= std::uint64_t{1} << (top + 1);
  }
}

std::vector<Matrix> gram_contributions(const GFrame& frame) {
  std::vector<Matrix> contributions;
  contributions.reserve(frame.size());
  for (const auto& b : frame.blocks()) contributions.emplace_back(numkernel::hermitian_part(b.adjoint() * b));
  return contributions;
}

class SelectionEvaluator {
 public:
  SelectionEvaluator(const std::vector<Matrix>& p, const std::vector<Matrix>& q) : p_(p), q_(q) {
    if (p_.empty() || p_.size() != q_.size()) {
      throw Error(ErrorKind::LengthMismatch, "weaving contributions must be nonempty and of equal count");
    }
    const Eigen::Index d = p_.front().rows();
    Matrix sum_p = Matrix::Zero(d, d);
    Matrix sum_q = Matrix::Zero(d, d);
    for (std::size_t m = 0; m < p_.size(); ++m) {
      if (p_[m].rows() != d || p_[m].cols() != d || q_[m].rows() != d || q_[m].cols() != d) {
        throw Error(ErrorKind::ShapeMismatch, "weaving contributions must all be " + std::to_string(d) + "x" +
                                                  std::to_string(d));
      }
      sum_p += p_[m];
      sum_q += q_[m];
    }
    tie_ = kTieTolerance * std::max({1.0, sum_p.norm(), sum_q.norm()});
    work_ = Matrix::Zero(d, d);
    real_ = std::all_of(p_.begin(), p_.end(), is_real_matrix) && std::all_of(q_.begin(), q_.end(), is_real_matrix);
    if (real_) {
      for (std::size_t m = 0; m < p_.size(); ++m) {
        p_real_.push_back(p_[m].real());
        q_real_.push_back(q_[m].real());
      }
      work_real_ = Eigen::MatrixXd::Zero(d, d);
    }
  }

  std::size_t size() const { return p_.size(); }
  double tie() const { return tie_; }

  Matrix operator_for(std::uint64_t mask) const {
    Matrix s = Matrix::Zero(p_.front().rows(), p_.front().cols());
    for (std::size_t m = 0; m < p_.size(); ++m) s += ((mask >> m) & 1U) ? p_[m] : q_[m];
    return s;
  }

  // (lambda_min, lambda_max) of the weaving operator.
  std::pair<double, double> extremes(std::uint64_t mask) {
    if (real_) {
      // Same spectrum as the complex path; the real solver is several times faster.
      work_real_.setZero();
      for (std::size_t m = 0; m < p_real_.size(); ++m) work_real_ += ((mask >> m) & 1U) ? p_real_[m] : q_real_[m];
      real_solver_.compute(work_real_, Eigen::EigenvaluesOnly);
      const auto& values = real_solver_.eigenvalues();
      return {values(0), values(values.size() - 1)};
    }
    work_.setZero();
    for (std::size_t m = 0; m < p_.size(); ++m) work_ += ((mask >> m) & 1U) ? p_[m] : q_[m];
    const RealVector values = numkernel::hermitian_eigenvalues(work_);
    return {values(0), values(values.size() - 1)};
  }

 private:
  static bool is_real_matrix(const Matrix& m) { return (m.imag().array() == 0.0).all(); }

  const std::vector<Matrix>& p_;
  const std::vector<Matrix>& q_;
  double tie_ = 0.0;
  Matrix work_;
  bool real_ = false;
  std::vector<Eigen::MatrixXd> p_real_;
  std::vector<Eigen::MatrixXd> q_real_;
  Eigen::MatrixXd work_real_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> real_solver_;
};

// Running min/max with the depth-first tie rule: a later selection replaces
// the incumbent only when it is better by more than the tie tolerance,
// unless it precedes the incumbent.
class ExtremeTracker {
 public:
  explicit ExtremeTracker(double tie) : tie_(tie) {}

  void offer(std::uint64_t mask, double lo, double hi) {
    ++examined_;
    lower_ = std::min(lower_, lo);
    upper_ = std::max(upper_, hi);
    if (!seen_ || lo < argmin_value_ - tie_ || (lo <= argmin_value_ + tie_ && precedes(mask, argmin_))) {
      argmin_ = mask;
      argmin_value_ = lo;
    }
    if (!seen_ || hi > argmax_value_ + tie_ || (hi >= argmax_value_ - tie_ && precedes(mask, argmax_))) {
      argmax_ = mask;
      argmax_value_ = hi;
    }
    seen_ = true;
  }

  UniversalReport report(std::size_t n, double threshold, SearchMethod method) const {
    UniversalReport r;
    r.lower = lower_;
    r.upper = upper_;
    r.argmin_sigma = WeavingSelection(n, argmin_);
    r.argmax_sigma = WeavingSelection(n, argmax_);
    r.threshold = threshold;
    r.woven = lower_ > threshold;
    r.method = method;
    r.subsets_examined = examined_;
    return r;
  }

 private:
  double tie_;
  bool seen_ = false;
  double lower_ = std::numeric_limits<double>::infinity();
  double upper_ = -std::numeric_limits<double>::infinity();
  std::uint64_t argmin_ = 0;
  std::uint64_t argmax_ = 0;
  double argmin_value_ = 0.0;
  double argmax_value_ = 0.0;
  std::uint64_t examined_ = 0;
};

UniversalReport enumerate_all(SelectionEvaluator& evaluator, double threshold) {
  ExtremeTracker tracker(evaluator.tie());
  for_each_selection(evaluator.size(), [&](std::uint64_t mask) {
    const auto [lo, hi] = evaluator.extremes(mask);
    tracker.offer(mask, lo, hi);
    return true;
  });
  return tracker.report(evaluator.size(), threshold, SearchMethod::Exhaustive);
}

struct PairBounds {
  BoundsReport f;
  BoundsReport g;
  UniversalReport universal;
};

PairBounds pair_bounds(const GFrame& f, const GFrame& g, std::size_t cap) {
  return {optimal_bounds(f), optimal_bounds(g), universal_bounds_exhaustive(f, g, kDefaultTolerance, cap)};
}

void require_woven(const UniversalReport& universal, const char* op) {
  if (!universal.woven) {
    throw Error(ErrorKind::NotWoven, std::string(op) + ": universal lower bound " +
                                         std::to_string(universal.lower) + " at sigma=" +
                                         universal.argmin_sigma.to_string() + " is not positive");
  }
}

void record_pair(VerificationRecord& record, const PairBounds& b) {
  record.set("A1", b.f.lower);
  record.set("B1", b.f.upper);
  record.set("A2", b.g.lower);
  record.set("B2", b.g.upper);
  record.set("A", b.universal.lower);
  record.set("B", b.universal.upper);
}

}  // namespace

// ---------------------------------------------------------------------------
// WeavingSelection

WeavingSelection::WeavingSelection(std::size_t n_blocks, std::uint64_t mask) : n_blocks_(n_blocks), mask_(mask) {
  if (n_blocks > kMaxSelectionBlocks) {
    throw Error(ErrorKind::TooManyBlocks, "selections support at most " + std::to_string(kMaxSelectionBlocks) +
                                              " blocks, got " + std::to_string(n_blocks));
  }
  if ((mask & ~low_bits(n_blocks)) != 0) {
    throw Error(ErrorKind::ShapeMismatch, "selection mask uses bits beyond block " + std::to_string(n_blocks));
  }
}

WeavingSelection WeavingSelection::full(std::size_t n_blocks) { return {n_blocks, low_bits(n_blocks)}; }

WeavingSelection WeavingSelection::empty(std::size_t n_blocks) { return {n_blocks, 0}; }

WeavingSelection WeavingSelection::from_indices(std::size_t n_blocks, const std::vector<std::size_t>& one_based) {
  std::uint64_t mask = 0;
  for (std::size_t index : one_based) {
    if (index < 1 || index > n_blocks) {
      throw Error(ErrorKind::ShapeMismatch, "selection index " + std::to_string(index) + " outside 1.." +
                                                std::to_string(n_blocks));
    }
    mask |= std::uint64_t{1} << (index - 1);
  }
  return {n_blocks, mask};
}

WeavingSelection WeavingSelection::complement() const { return {n_blocks_, ~mask_ & low_bits(n_blocks_)}; }

std::vector<std::size_t> WeavingSelection::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < n_blocks_; ++m) {
    if (contains(m)) out.push_back(m + 1);
  }
  return out;
}

std::string WeavingSelection::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t index : indices()) {
    if (!first) os << ',';
    os << index;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string WeavingSelection::bitmask_string() const {
  std::string bits = "0b";
  for (std::size_t m = n_blocks_; m-- > 0;) bits.push_back(contains(m) ? '1' : '0');
  return bits;
}

bool precedes(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const std::uint64_t diff = a ^ b;
  const int low = std::countr_zero(diff);
  const bool a_has = (a >> low) & 1U;
  const std::uint64_t& without = a_has ? b : a;
  // The selection lacking the first differing element either ends there
  // (it is a prefix, so it comes first) or continues with a larger element.
  const bool without_ends = (low == 63) || (without >> (low + 1)) == 0;
  return a_has ? !without_ends : without_ends;
}

std::string to_string(SearchMethod method) {
  return method == SearchMethod::Exhaustive ? "exhaustive" : "search";
}

// ---------------------------------------------------------------------------
// Weaving and universal bounds

GFrame weave(const GFrame& f, const GFrame& g, const WeavingSelection& sigma) {
  require_weavable(f, g, "weave");
  if (sigma.n_blocks() != f.size()) {
    throw Error(ErrorKind::LengthMismatch, "weave: selection covers " + std::to_string(sigma.n_blocks()) +
                                               " blocks, families have " + std::to_string(f.size()));
  }
  std::vector<Matrix> blocks;
  std::vector<std::string> labels;
  blocks.reserve(f.size());
  const bool labelled = !f.labels().empty() || !g.labels().empty();
  for (std::size_t m = 0; m < f.size(); ++m) {
    const GFrame& source = sigma.contains(m) ? f : g;
    blocks.push_back(source.block(m));
    if (labelled) labels.push_back(source.label(m));
  }
  return GFrame(f.domain_dim(), std::move(blocks), std::move(labels));
}

BoundsReport weaving_bounds(const GFrame& f, const GFrame& g, const WeavingSelection& sigma, double tol) {
  return optimal_bounds(weave(f, g, sigma), tol);
}

UniversalReport universal_bounds_of_contributions(const std::vector<Matrix>& p, const std::vector<Matrix>& q,
                                                  double threshold, std::size_t cap) {
  require_within_cap(p.size(), cap, "universal_bounds_exhaustive");
  SelectionEvaluator evaluator(p, q);
  return enumerate_all(evaluator, threshold);
}

UniversalReport universal_bounds_of_contributions_search(const std::vector<Matrix>& p,
                                                         const std::vector<Matrix>& q, double threshold,
                                                         std::uint64_t budget, std::uint64_t seed) {
  const std::size_t n = p.size();
  if (n > kMaxSelectionBlocks) {
    throw Error(ErrorKind::TooManyBlocks, "universal_bounds_search: at most " +
                                              std::to_string(kMaxSelectionBlocks) + " blocks");
  }
  SelectionEvaluator evaluator(p, q);
  if (n < 64 && budget >= (std::uint64_t{1} << n)) return enumerate_all(evaluator, threshold);

  budget = std::max<std::uint64_t>(budget, 1);
  std::unordered_map<std::uint64_t, std::pair<double, double>> cache;
  ExtremeTracker tracker(evaluator.tie());
  auto evaluate = [&](std::uint64_t mask) {
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;
    const auto values = evaluator.extremes(mask);
    cache.emplace(mask, values);
    tracker.offer(mask, values.first, values.second);
    return values;
  };

  // Steepest single-bit-flip walk; `sign` = +1 minimizes lambda_min,
  // -1 maximizes lambda_max.
  auto walk = [&](std::uint64_t start, bool minimize) {
    std::uint64_t current = start;
    auto score = [&](std::uint64_t mask) {
      const auto v = evaluate(mask);
      return minimize ? v.first : -v.second;
    };
    double current_score = score(current);
    while (true) {
      std::uint64_t best = current;
      double best_score = current_score;
      for (std::size_t m = 0; m < n; ++m) {
        const std::uint64_t candidate = current ^ (std::uint64_t{1} << m);
        const double s = score(candidate);
        if (s < best_score - evaluator.tie()) {
          best = candidate;
          best_score = s;
        }
      }
      if (best == current) break;
      current = best;
      current_score = best_score;
    }
  };

  std::mt19937_64 rng(seed);
  const std::uint64_t mask_bits = low_bits(n);
  for (std::uint64_t start_index = 0; start_index < budget; ++start_index) {
    std::uint64_t start;
    if (start_index == 0) {
      start = mask_bits;
    } else if (start_index == 1) {
      start = 0;
    } else {
      start = rng() & mask_bits;
    }
    walk(start, true);
    walk(start, false);
  }
  return tracker.report(n, threshold, SearchMethod::Search);
}

double woven_threshold(const GFrame& f, const GFrame& g, double tol) {
  const double b1 = numkernel::hermitian_eigenvalues(frame_operator_matrix(f)).maxCoeff();
  const double b2 = numkernel::hermitian_eigenvalues(frame_operator_matrix(g)).maxCoeff();
  return tol * std::max(b1, b2);
}

UniversalReport universal_bounds_exhaustive(const GFrame& f, const GFrame& g, double tol, std::size_t cap) {
  require_weavable(f, g, "universal_bounds_exhaustive");
  require_within_cap(f.size(), cap, "universal_bounds_exhaustive");
  return universal_bounds_of_contributions(gram_contributions(f), gram_contributions(g),
                                           woven_threshold(f, g, tol), cap);
}

UniversalReport universal_bounds_search(const GFrame& f, const GFrame& g, std::uint64_t budget,
                                        std::uint64_t seed, double tol) {
  require_weavable(f, g, "universal_bounds_search");
  return universal_bounds_of_contributions_search(gram_contributions(f), gram_contributions(g),
                                                  woven_threshold(f, g, tol), budget, seed);
}

WovenVerdict is_woven(const GFrame& f, const GFrame& g, double tol, const WovenStrategy& strategy) {
  WovenVerdict verdict;
  if (strategy.method == SearchMethod::Exhaustive) {
    verdict.report = universal_bounds_exhaustive(f, g, tol, strategy.cap);
  } else {
    verdict.report = universal_bounds_search(f, g, strategy.budget, strategy.seed, tol);
  }
  verdict.woven = verdict.report.woven;
  verdict.conclusive = !verdict.woven || verdict.report.method == SearchMethod::Exhaustive;
  if (!verdict.woven) {
    verdict.certificate = verdict.report.argmin_sigma;
    const auto eig = numkernel::hermitian_eig(frame_operator_matrix(weave(f, g, *verdict.certificate)));
    verdict.certificate_spectrum = eig.eigenvalues;
    verdict.certificate_direction = eig.eigenvectors.col(0);
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Executable inequalities

VerificationRecord check_upper_sum(const GFrame& f, const GFrame& g, std::size_t cap) {
  const auto b = pair_bounds(f, g, cap);
  VerificationRecord record;
  record.name = "upper_sum";
  record_pair(record, b);
  record.passed = b.universal.upper <= b.f.upper + b.g.upper + kCheckSlack;
  if (!record.passed) record.detail = "universal upper bound exceeds B1 + B2";
  return record;
}

VerificationRecord check_optimal_vs_universal(const GFrame& f, const GFrame& g, std::size_t cap) {
  const auto b = pair_bounds(f, g, cap);
  require_woven(b.universal, "check_optimal_vs_universal");
  VerificationRecord record;
  record.name = "optimal_vs_universal";
  record_pair(record, b);
  const bool lower_ok = b.universal.lower <= std::min(b.f.lower, b.g.lower) + kCheckSlack;
  const bool upper_ok = b.universal.upper >= std::max(b.f.upper, b.g.upper) - kCheckSlack;
  record.passed = lower_ok && upper_ok;
  if (!lower_ok) record.detail += "A exceeds min(A1, A2); ";
  if (!upper_ok) record.detail += "B below max(B1, B2); ";
  return record;
}

VerificationRecord check_sum_not_optimal(const GFrame& f, const GFrame& g, std::size_t cap) {
  const auto b = pair_bounds(f, g, cap);
  require_woven(b.universal, "check_sum_not_optimal");
  VerificationRecord record;
  record.name = "sum_not_optimal";
  record_pair(record, b);
  const bool lower_ok = b.universal.lower < b.f.lower + b.g.lower - kCheckSlack;
  const bool upper_ok = b.universal.upper < b.f.upper + b.g.upper - kCheckSlack;
  record.passed = lower_ok && upper_ok;
  if (!lower_ok) record.detail += "A reaches A1 + A2; ";
  if (!upper_ok) record.detail += "B reaches B1 + B2; ";
  return record;
}

VerificationRecord check_dual_weaving(const GFrame& f, std::size_t cap) {
  if (!optimal_bounds(f).is_frame) throw Error(ErrorKind::NotAFrame, "check_dual_weaving: family is not a g-frame");
  const GFrame dual = canonical_dual(f);
  const auto b = pair_bounds(f, dual, cap);
  VerificationRecord record;
  record.name = "dual_weaving";
  record_pair(record, b);
  const double guaranteed_lower = std::min(1.0 / (2.0 * b.f.upper), 1.0 / (2.0 * b.g.upper));
  const double guaranteed_upper = b.f.upper + b.g.upper;
  record.set("guaranteed_lower", guaranteed_lower);
  record.set("guaranteed_upper", guaranteed_upper);
  const bool lower_ok = b.universal.lower >= guaranteed_lower - kCheckSlack;
  const bool upper_ok = b.universal.upper <= guaranteed_upper + kCheckSlack;
  record.passed = lower_ok && upper_ok;
  if (!lower_ok) record.detail += "universal lower bound below min(1/(2B1), 1/(2B2)); ";
  if (!upper_ok) record.detail += "universal upper bound above B1 + B2; ";
  return record;
}

VerificationRecord check_sqrt_inv_weaving(const GFrame& f, const GFrame& g, std::size_t cap) {
  const auto original = universal_bounds_exhaustive(f, g, kDefaultTolerance, cap);
  require_woven(original, "check_sqrt_inv_weaving");
  const Matrix root = numkernel::inv_sqrt_psd(frame_operator_matrix(f));
  const GFrame f_t = compose_right(f, root);
  const GFrame g_t = compose_right(g, root);
  const auto transformed = universal_bounds_exhaustive(f_t, g_t, kDefaultTolerance, cap);

  VerificationRecord record;
  record.name = "sqrt_inv_weaving";
  const double a = original.lower;
  const double b = original.upper;
  record.set("A", a);
  record.set("B", b);
  record.set("A_transformed", transformed.lower);
  record.set("B_transformed", transformed.upper);
  record.set("guaranteed_lower", a / b);
  record.set("guaranteed_upper", b / a);
  const Eigen::Index d = f.domain_dim();
  const double parseval_residual = (frame_operator_matrix(f_t) - Matrix::Identity(d, d)).norm();
  record.set("parseval_residual", parseval_residual);
  const bool lower_ok = transformed.lower >= a / b - kCheckSlack;
  const bool upper_ok = transformed.upper <= b / a + kCheckSlack;
  const bool woven_ok = transformed.woven;
  record.passed = lower_ok && upper_ok && woven_ok;
  if (!lower_ok) record.detail += "transformed lower bound below A/B; ";
  if (!upper_ok) record.detail += "transformed upper bound above B/A; ";
  if (!woven_ok) record.detail += "transformed pair not woven; ";
  return record;
}

WeavingClassVerdict is_weaving_g_riesz(const GFrame& f, const GFrame& g, double tol, std::size_t cap) {
  require_weavable(f, g, "is_weaving_g_riesz");
  require_within_cap(f.size(), cap, "is_weaving_g_riesz");
  WeavingClassVerdict verdict;
  verdict.holds = true;
  for_each_selection(f.size(), [&](std::uint64_t mask) {
    ++verdict.subsets_examined;
    const WeavingSelection sigma(f.size(), mask);
    if (!is_g_riesz_basis(weave(f, g, sigma), tol).riesz) {
      verdict.holds = false;
      verdict.witness = sigma;
      return false;
    }
    return true;
  });
  return verdict;
}

WeavingClassVerdict is_weaving_g_onb(const GFrame& f, const GFrame& g, double tol, std::size_t cap) {
  require_weavable(f, g, "is_weaving_g_onb");
  require_within_cap(f.size(), cap, "is_weaving_g_onb");
  WeavingClassVerdict verdict;
  verdict.holds = true;
  for_each_selection(f.size(), [&](std::uint64_t mask) {
    ++verdict.subsets_examined;
    const WeavingSelection sigma(f.size(), mask);
    if (!is_g_orthonormal_basis(weave(f, g, sigma), tol).onb) {
      verdict.holds = false;
      verdict.witness = sigma;
      return false;
    }
    return true;
  });
  return verdict;
}

VerificationRecord check_onb_weaving_unitary(const GFrame& f, const GFrame& g, const Matrix& u, double tol,
                                             std::size_t cap) {
  const Eigen::Index d = f.domain_dim();
  if (u.rows() != d || u.cols() != d) {
    throw Error(ErrorKind::ShapeMismatch, "check_onb_weaving_unitary: operator must be " + std::to_string(d) +
                                              "x" + std::to_string(d));
  }
  const double isometry = (u.adjoint() * u - Matrix::Identity(d, d)).norm();
  const double surjectivity = (u * u.adjoint() - Matrix::Identity(d, d)).norm();
  if (isometry > tol || surjectivity > tol) {
    std::ostringstream os;
    os << "check_onb_weaving_unitary: operator is not unitary (";
    if (isometry > tol) os << "isometry residual " << isometry;
    if (isometry > tol && surjectivity > tol) os << ", ";
    if (surjectivity > tol) os << "surjectivity residual " << surjectivity;
    os << ")";
    throw Error(ErrorKind::NotUnitary, os.str());
  }
  VerificationRecord record;
  record.name = "onb_weaving_unitary";
  record.set("isometry_residual", isometry);
  record.set("surjectivity_residual", surjectivity);
  const auto before = is_weaving_g_onb(f, g, tol, cap);
  const auto after = is_weaving_g_onb(compose_right(f, u), compose_right(g, u), tol, cap);
  record.set("hypothesis", before.holds ? 1.0 : 0.0);
  record.set("conclusion", after.holds ? 1.0 : 0.0);
  record.set("subsets_examined", static_cast<double>(after.subsets_examined));
  record.passed = before.holds && after.holds;
  if (!before.holds) record.detail += "pair is not weaving g-orthonormal at sigma=" + before.witness->to_string() + "; ";
  if (!after.holds) record.detail += "composed pair fails at sigma=" + after.witness->to_string() + "; ";
  return record;
}

}  // namespace gweave
