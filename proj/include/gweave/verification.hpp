#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gweave {

// Outcome of an executable inequality check. Violations are data, not
// exceptions.
struct VerificationRecord {
  std::string name;
  bool passed = false;
  std::vector<std::pair<std::string, double>> values;
  std::string detail;

  void set(const std::string& key, double value) { values.emplace_back(key, value); }
  double get(const std::string& key) const;
};

}  // namespace gweave
