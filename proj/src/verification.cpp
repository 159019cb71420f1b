#include "gweave/verification.hpp"

#include "gweave/error.hpp"

namespace gweave {

double VerificationRecord::get(const std::string& key) const {
  for (const auto& [k, v] : values) {
    if (k == key) return v;
  }
  throw Error(ErrorKind::SchemaError, "record '" + name + "' has no value '" + key + "'");
}

}  // namespace gweave
