#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gqlharvest::util {

// 32-byte SHA-256 digest with hex rendering.
struct Digest {
    std::array<std::uint8_t, 32> bytes{};

    std::string hex() const;
    static Digest from_hex(std::string_view hex);

    auto operator<=>(const Digest&) const = default;
};

Digest sha256(std::string_view data);

}  // namespace gqlharvest::util
