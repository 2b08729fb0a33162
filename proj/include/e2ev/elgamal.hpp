#pragma once

#include "e2ev/group.hpp"
#include "e2ev/rng.hpp"

#include <optional>
#include <vector>

namespace e2ev {

/** Exponential ElGamal ciphertext (g^r, g^m * pk^r). */
struct Ciphertext {
    Bigint a;
    Bigint b;

    bool operator==(const Ciphertext&) const = default;
};

struct TrusteeShare {
    uint32_t index = 0;  // 1-based
    Bigint sk;
};

struct ElectionKey {
    Bigint pk;
    std::vector<TrusteeShare> shares;  // sum of shares mod q is the decryption key
};

/**
 * n-of-n additive key generation: each trustee holds a share in [1, q-1] and
 * the joint public key is g^(sum of shares). Redraws the last share in the
 * (q-scale unlikely) case the sum lands on 0, so pk is never the identity.
 */
ElectionKey keygen(const GroupParams& grp, uint32_t trustees, RandomSource& rng);

/** Encrypt one bit with explicit randomness r in [1, q-1]. */
Ciphertext encrypt_bit(const GroupParams& grp, const Bigint& pk, int bit, const Bigint& r);

/** Componentwise product; ciphertext addition in the exponent. */
Ciphertext homomorphic_add(const GroupParams& grp, const Ciphertext& x, const Ciphertext& y);

/** Ciphertext of 0 under the fixed zero-randomness convention; fold identity. */
Ciphertext identity_ciphertext();

/** Trustee i's decryption share a^(sk_i). */
Bigint decrypt_share(const GroupParams& grp, const Ciphertext& c, const Bigint& share_sk);

/** b divided by the product of all partials: recovers g^m. */
Bigint combine_shares(const GroupParams& grp, const Ciphertext& c,
                      const std::vector<Bigint>& partials);

/**
 * Discrete log of y base g over [0, max_exponent]. Linear scan up to 1e6,
 * baby-step giant-step beyond. nullopt means y is not a power in range,
 * which callers treat as evidence of corruption, not an exception.
 */
std::optional<uint64_t> recover_exponent(const GroupParams& grp, const Bigint& y,
                                         uint64_t max_exponent);

}  // namespace e2ev
