#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace syz::cli {

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// Writes to <path>.tmp and renames over <path>.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace syz::cli
