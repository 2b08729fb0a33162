#include "e2ev/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace e2ev {

Digest sha256(const uint8_t* data, size_t len) {
    Digest out{};
    unsigned int outlen = 0;
    if (EVP_Digest(data, len, out.data(), &outlen, EVP_sha256(), nullptr) != 1 || outlen != 32) {
        throw std::runtime_error("sha256: digest failed");
    }
    return out;
}

Digest sha256(const Bytes& data) {
    return sha256(data.data(), data.size());
}

Digest sha256(const std::string& data) {
    return sha256(reinterpret_cast<const uint8_t*>(data.data()), data.size());
}

std::string digest_hex(const Digest& d) {
    return to_hex(d.data(), d.size());
}

Digest digest_from_hex(const std::string& hex) {
    Bytes b = from_hex(hex);
    if (b.size() != 32) {
        throw std::invalid_argument("digest: expected 32 bytes, got " + std::to_string(b.size()));
    }
    Digest d{};
    std::copy(b.begin(), b.end(), d.begin());
    return d;
}

Bytes digest_bytes(const Digest& d) {
    return Bytes(d.begin(), d.end());
}

}  // namespace e2ev
