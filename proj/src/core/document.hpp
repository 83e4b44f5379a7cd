#pragma once

// Versioned JSON export of a computed domain, and offline re-verification.

#include "core/driver.hpp"

#include <json.hpp>

#include <string>

namespace fdom {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Keys are sorted and Reals are written in scientific notation with the
// working number of significant digits; wall-clock data is left out so
// equal runs give equal bytes.
Json export_document(const DomainResult& result, const QuaternionOrder& order, const ToleranceContext& ctx,
                     std::uint64_t seed);

std::string serialize_document(const Json& doc);
Json parse_document(const std::string& text);

// Write to a temporary sibling, then rename over the target.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

void save_document(const Json& doc, const std::string& path);
Json load_document(const std::string& path);

struct VerifyReport {
  bool ok = false;
  bool pairing_complete = false;
  bool area_matches = false;
  bool sides_match = false;
  std::size_t sides = 0;
  std::string area;
  std::string message;
};

// Rebuilds the boundary from the stored generators alone and compares side
// count, pairing and area (within 10 t). Sets the working precision to the
// stored number of digits.
VerifyReport verify_document(const Json& doc);

QuaternionOrder order_from_document(const Json& doc);

}  // namespace fdom
