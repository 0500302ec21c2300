#include "gqlharvest/util/digest.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace gqlharvest::util {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("invalid hex digit in digest");
}

}  // namespace

std::string Digest::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

Digest Digest::from_hex(std::string_view hex) {
    if (hex.size() != 64) {
        throw std::invalid_argument("digest hex must be 64 characters");
    }
    Digest d;
    for (std::size_t i = 0; i < 32; ++i) {
        d.bytes[i] = static_cast<std::uint8_t>(hex_nibble(hex[2 * i]) << 4 |
                                               hex_nibble(hex[2 * i + 1]));
    }
    return d;
}

Digest sha256(std::string_view data) {
    Digest d;
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != d.bytes.size()) {
        throw std::runtime_error("sha256 digest failed");
    }
    return d;
}

}  // namespace gqlharvest::util
