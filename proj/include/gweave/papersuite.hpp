#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gweave/gframe.hpp"
#include "gweave/weaving.hpp"

namespace gweave::papersuite {

// Where an expected value comes from: a constant of a worked example, a value
// obtained by independent computation, or an identity that holds exactly.
struct ExpectedValue {
  std::string key;
  double value = 0.0;
  std::string origin;
  // Informational entries are reported next to the computed value but do
  // not decide the record.
  bool compared = true;
};

struct ExampleInstance {
  std::string name;
  std::vector<std::pair<std::string, long>> parameters;
  GFrame f;
  std::optional<GFrame> g;
  std::vector<ExpectedValue> expected;
};

enum class ProjectionCodomain {
  SingleLine,  // H_m = span{e_m}; a g-orthonormal basis
  ThreeLine,   // H_m = span{e_m, e_{m+1}, e_{m+2}}, truncated at d
};

/// Lambda_m h = <h, e_m> e_m for m = 1..d.
GFrame build_projection_gframe(Eigen::Index d, ProjectionCodomain codomain = ProjectionCodomain::ThreeLine);

/// Lambda_m = projection onto e_m; Omega_1 onto span{e_1, e_2}, Omega_m onto
/// e_{m+1}. Not woven: sigma = {1} misses e_2. N >= 3.
ExampleInstance build_shifted_cover_pair(std::size_t n);

/// Omega_m = projection onto span{e_m, e_{m+1}}. Woven with bounds (1, 2).
ExampleInstance build_overlapping_cover_pair(std::size_t n);

/// Shared blocks except 2..5, which split e_2 and e_3 with 1/sqrt(2)
/// weights. Each family is Parseval; universal bounds (1/2, 3/2). N >= 9.
ExampleInstance build_split_weight_pair(std::size_t n);

/// H = C^{K x K}. Lambda repeats each row selector twice, Omega splits each
/// row into odd and even columns. K even, K >= 2.
ExampleInstance build_duplicated_rows_pair(std::size_t k);

/// Two g-exact families of 4-row blocks whose weaving at {1,2} is not
/// g-exact. d = N + 3, N >= 4.
ExampleInstance build_four_channel_pair(std::size_t n);

struct UnitaryCounterexamples {
  Matrix scale2;       // 2I: surjective, not isometric
  Matrix right_shift;  // e_i -> e_{i+1}, e_d -> 0
};

UnitaryCounterexamples build_unitary_counterexamples(Eigen::Index d);

// Haar-like unitary from the QR factorization of a seeded complex Gaussian
// matrix.
Matrix random_unitary(Eigen::Index d, std::uint64_t seed);

struct SuiteConfig {
  std::size_t dim_scale = 0;
  std::size_t cap = kDefaultExhaustiveCap;
  std::uint64_t search_budget = 64;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
};

enum class RecordStatus { Pass, Fail, Skipped };
std::string to_string(RecordStatus status);

struct SuiteRecord {
  std::string name;
  RecordStatus status = RecordStatus::Fail;
  std::string method = "direct";
  std::vector<std::pair<std::string, double>> computed;
  std::vector<ExpectedValue> expected;
  std::string detail;
};

struct SuiteReport {
  std::vector<SuiteRecord> records;  // sorted by name
  std::size_t count(RecordStatus status) const;
  bool passed() const { return count(RecordStatus::Fail) == 0; }
};

SuiteReport run_suite(const SuiteConfig& config = {});

}  // namespace gweave::papersuite
