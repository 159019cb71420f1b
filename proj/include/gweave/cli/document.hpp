#pragma once

#include <string>

#include "gweave/gframe.hpp"

namespace gweave::cli {

inline constexpr const char* kSchemaVersion = "gweave/1";

/// Parses a GFrameDocument. Throws ParseError carrying the byte offset, or
/// SchemaError naming the offending operator. Nothing is returned unless the
/// whole document validates.
GFrame parse_gframe(const std::string& text);

GFrame load_gframe(const std::string& path);

/// Canonical serialization: fixed key order, two-space indent, "real" mode
/// whenever every imaginary part is zero.
std::string dump_gframe(const GFrame& frame);

void save_gframe(const GFrame& frame, const std::string& path);

std::string read_file(const std::string& path);

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

}  // namespace gweave::cli
