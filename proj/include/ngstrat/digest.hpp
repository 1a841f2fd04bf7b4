#pragma once

#include <string>
#include <string_view>

namespace ngstrat {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// First 16 hex digits of sha256_hex; used to build deterministic IRIs.
inline std::string short_digest(std::string_view data) { return sha256_hex(data).substr(0, 16); }

}  // namespace ngstrat
