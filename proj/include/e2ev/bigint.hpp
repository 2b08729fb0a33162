#pragma once

#include "e2ev/bytes.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace e2ev {

using Bigint = boost::multiprecision::mpz_int;

Bigint modexp(const Bigint& base, const Bigint& exp, const Bigint& mod);
Bigint modinv(const Bigint& a, const Bigint& mod);
Bigint modmul(const Bigint& a, const Bigint& b, const Bigint& mod);

/** Legendre symbol (a|p) for odd prime p: 1, -1, or 0. */
int legendre(const Bigint& a, const Bigint& p);

bool probably_prime(const Bigint& n, int rounds = 30);

size_t bit_length(const Bigint& n);

/**
 * Fixed-width big-endian encoding. Values are zero padded on the left;
 * a value that does not fit in `width` bytes is an error, never truncated.
 */
Bytes to_fixed_bytes(const Bigint& v, size_t width);
std::string to_fixed_hex(const Bigint& v, size_t width);
Bigint from_bytes(const Bytes& b);
Bigint from_fixed_hex(const std::string& hex, size_t width);

}  // namespace e2ev
