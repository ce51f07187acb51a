#pragma once

#include <string>
#include <string_view>

namespace molinfer::util {

// Hex digest of SHA-256(data). Self-contained; used for run manifests.
std::string sha256_hex(std::string_view data);

}  // namespace molinfer::util
