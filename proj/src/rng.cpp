#include "e2ev/rng.hpp"

#include "e2ev/sha256.hpp"

#include <openssl/rand.h>

#include <stdexcept>

namespace e2ev {

Bytes RandomSource::bytes(size_t len) {
    Bytes b(len);
    if (len > 0) fill(b.data(), len);
    return b;
}

uint64_t RandomSource::u64() {
    uint8_t b[8];
    fill(b, 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v = (v << 8) | b[i];
    return v;
}

Bigint RandomSource::uniform_below(const Bigint& n) {
    if (n <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
    size_t width = (bit_length(n) + 7) / 8;
    for (int attempt = 0; attempt < 4096; attempt++) {
        Bigint x = from_bytes(bytes(width));
        if (x < n) return x;
    }
    throw std::runtime_error("uniform_below: rejection sampling failed");
}

Bigint RandomSource::uniform_scalar(const Bigint& q) {
    if (q < 3) throw std::invalid_argument("uniform_scalar: group too small");
    return uniform_below(q - 1) + 1;
}

uint64_t RandomSource::below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("below: bound must be positive");
    // Reject the tail so every residue is equally likely.
    uint64_t bound = UINT64_MAX - (UINT64_MAX % n);
    uint64_t x;
    do {
        x = u64();
    } while (x >= bound);
    return x % n;
}

bool RandomSource::bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return (static_cast<double>(u64()) / 18446744073709551616.0) < p;
}

DeterministicRng::DeterministicRng(uint64_t seed) : gen_(seed) {}

void DeterministicRng::fill(uint8_t* out, size_t len) {
    for (size_t i = 0; i < len; i++) {
        if (avail_ == 0) {
            buf_ = gen_();
            avail_ = 8;
        }
        out[i] = static_cast<uint8_t>(buf_ >> (8 * (avail_ - 1)));
        avail_--;
    }
}

void SystemRng::fill(uint8_t* out, size_t len) {
    if (RAND_bytes(out, static_cast<int>(len)) != 1) {
        throw std::runtime_error("SystemRng: RAND_bytes failed");
    }
}

uint64_t derive_seed(uint64_t master, uint64_t index, const std::string& tag) {
    Bytes input = u64be(master);
    put_u64be(input, index);
    append_bytes(input, tag);
    Digest d = sha256(input);
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v = (v << 8) | d[i];
    return v;
}

}  // namespace e2ev
