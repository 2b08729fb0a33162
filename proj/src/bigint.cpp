#include "e2ev/bigint.hpp"

#include <stdexcept>

namespace e2ev {

Bigint modexp(const Bigint& base, const Bigint& exp, const Bigint& mod) {
    if (exp < 0) throw std::invalid_argument("modexp: negative exponent");
    return powm(base, exp, mod);
}

Bigint modinv(const Bigint& a, const Bigint& mod) {
    Bigint r;
    if (mpz_invert(r.backend().data(), a.backend().data(), mod.backend().data()) == 0) {
        throw std::invalid_argument("modinv: not invertible");
    }
    return r;
}

Bigint modmul(const Bigint& a, const Bigint& b, const Bigint& mod) {
    return (a * b) % mod;
}

int legendre(const Bigint& a, const Bigint& p) {
    return mpz_legendre(a.backend().data(), p.backend().data());
}

bool probably_prime(const Bigint& n, int rounds) {
    return mpz_probab_prime_p(n.backend().data(), rounds) != 0;
}

size_t bit_length(const Bigint& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.backend().data(), 2);
}

Bytes to_fixed_bytes(const Bigint& v, size_t width) {
    if (v < 0) throw std::invalid_argument("to_fixed_bytes: negative value");
    Bytes out(width, 0);
    size_t count = 0;
    // Export produces the minimal big-endian representation; left pad to width.
    mpz_export(out.data(), &count, 1, 1, 1, 0, v.backend().data());
    if (count > width) throw std::invalid_argument("to_fixed_bytes: value wider than field");
    if (count < width && count > 0) {
        std::copy_backward(out.begin(), out.begin() + count, out.begin() + width);
        std::fill(out.begin(), out.begin() + (width - count), 0);
    }
    return out;
}

std::string to_fixed_hex(const Bigint& v, size_t width) {
    return to_hex(to_fixed_bytes(v, width));
}

Bigint from_bytes(const Bytes& b) {
    Bigint v;
    if (!b.empty()) {
        mpz_import(v.backend().data(), b.size(), 1, 1, 1, 0, b.data());
    }
    return v;
}

Bigint from_fixed_hex(const std::string& hex, size_t width) {
    if (hex.size() != width * 2) {
        throw std::invalid_argument("fixed hex: expected " + std::to_string(width * 2) +
                                    " chars, got " + std::to_string(hex.size()));
    }
    return from_bytes(from_hex(hex));
}

}  // namespace e2ev
