#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gqlharvest::util {

// Timestamps are UTC unix seconds internally; exports render them as
// "YYYY-MM-DD HH:MM:SS".
std::string format_utc(std::int64_t unix_seconds);

// Accepts "YYYY-MM-DD HH:MM:SS" (UTC). Returns nullopt on malformed input.
std::optional<std::int64_t> parse_utc(std::string_view text);

std::int64_t now_utc();

}  // namespace gqlharvest::util
