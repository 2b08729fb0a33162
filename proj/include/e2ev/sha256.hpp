#pragma once

#include "e2ev/bytes.hpp"

#include <array>

namespace e2ev {

using Digest = std::array<uint8_t, 32>;

Digest sha256(const uint8_t* data, size_t len);
Digest sha256(const Bytes& data);
Digest sha256(const std::string& data);

std::string digest_hex(const Digest& d);
Digest digest_from_hex(const std::string& hex);
Bytes digest_bytes(const Digest& d);

}  // namespace e2ev
