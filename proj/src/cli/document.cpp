#include "gweave/cli/document.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "gweave/error.hpp"
#include "json.hpp"

namespace gweave::cli {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& message) { throw Error(ErrorKind::SchemaError, message); }

const Json& field(const Json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) schema_error(where + ": missing field '" + key + "'");
  return *it;
}

std::int64_t non_negative_integer(const Json& value, const std::string& what) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    schema_error(what + " must be a non-negative integer");
  }
  return value.get<std::int64_t>();
}

std::vector<double> numbers(const Json& value, std::size_t expected, const std::string& what) {
  if (!value.is_array()) schema_error(what + " must be an array");
  if (value.size() != expected) {
    schema_error(what + " has " + std::to_string(value.size()) + " entries, expected " + std::to_string(expected));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : value) {
    if (!v.is_number()) schema_error(what + " contains a non-numeric entry");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

GFrame parse_gframe(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) schema_error("document must be a JSON object");
  const auto& version = field(doc, "schema_version", "document");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    schema_error(std::string("schema_version must be \"") + kSchemaVersion + "\"");
  }
  const auto& mode_value = field(doc, "scalar_mode", "document");
  if (!mode_value.is_string()) schema_error("scalar_mode must be \"real\" or \"complex\"");
  const std::string mode = mode_value.get<std::string>();
  if (mode != "real" && mode != "complex") schema_error("scalar_mode must be \"real\" or \"complex\", got \"" + mode + "\"");
  const bool complex = mode == "complex";

  const std::int64_t d = non_negative_integer(field(doc, "domain_dim", "document"), "domain_dim");
  if (d < 1) schema_error("domain_dim must be at least 1");
  const auto& operators = field(doc, "operators", "document");
  if (!operators.is_array() || operators.empty()) schema_error("operators must be a nonempty array");

  std::vector<Matrix> blocks;
  std::vector<std::string> labels;
  for (std::size_t m = 0; m < operators.size(); ++m) {
    const auto& op = operators[m];
    std::string label = "#" + std::to_string(m + 1);
    if (!op.is_object()) schema_error("operator " + label + " must be an object");
    if (auto it = op.find("label"); it != op.end()) {
      if (!it->is_string()) schema_error("operator " + label + ": label must be a string");
      label = it->get<std::string>();
    }
    const std::string where = "operator '" + label + "'";
    const std::int64_t rows = non_negative_integer(field(op, "rows", where), where + ": rows");
    const std::size_t count = static_cast<std::size_t>(rows * d);
    const auto re = numbers(field(op, "entries_real", where), count, where + ": entries_real");
    std::vector<double> im(count, 0.0);
    const bool has_imag = op.contains("entries_imag");
    if (complex && !has_imag) schema_error(where + ": entries_imag is required in complex mode");
    if (!complex && has_imag) schema_error(where + ": entries_imag is not allowed in real mode");
    if (complex) im = numbers(op.at("entries_imag"), count, where + ": entries_imag");

    Matrix block(rows, d);
    for (std::int64_t r = 0; r < rows; ++r) {
      for (std::int64_t c = 0; c < d; ++c) {
        const auto k = static_cast<std::size_t>(r * d + c);
        block(r, c) = Scalar(re[k], im[k]);
      }
    }
    blocks.push_back(std::move(block));
    labels.push_back(std::move(label));
  }
  return GFrame(d, std::move(blocks), std::move(labels));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GFrame load_gframe(const std::string& path) { return parse_gframe(read_file(path)); }

std::string dump_gframe(const GFrame& frame) {
  const bool real = frame.is_real();
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["scalar_mode"] = real ? "real" : "complex";
  doc["domain_dim"] = frame.domain_dim();
  Json operators = Json::array();
  for (std::size_t m = 0; m < frame.size(); ++m) {
    const Matrix& b = frame.block(m);
    Json op;
    op["label"] = frame.label(m);
    op["rows"] = b.rows();
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        re.push_back(b(r, c).real());
        im.push_back(b(r, c).imag());
      }
    }
    op["entries_real"] = std::move(re);
    if (!real) op["entries_imag"] = std::move(im);
    operators.push_back(std::move(op));
  }
  doc["operators"] = std::move(operators);
  return doc.dump(2) + "\n";
}

void save_gframe(const GFrame& frame, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << dump_gframe(frame);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::ParseError, "SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

}  // namespace gweave::cli
