#pragma once

#include "e2ev/elgamal.hpp"
#include "e2ev/transcript.hpp"

#include <string>

namespace e2ev {
namespace bitproof {

/**
 * Disjunctive Chaum-Pedersen transcript showing a ciphertext encrypts 0 or 1
 * without revealing which. One branch is real, the other simulated; the two
 * sub-challenges must add up to the Fiat-Shamir challenge of the whole
 * transcript, so neither branch can be forged independently.
 *
 * Branch j claims (a, b) opens to j: a = g^r and b / g^j = pk^r.
 * tj0 commits on base g, tj1 on base pk.
 */
struct Proof {
    Bigint t00, t01;  // branch 0 commitments
    Bigint t10, t11;  // branch 1 commitments
    Bigint c0, c1;
    Bigint s0, s1;
};

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

Proof prove(const GroupParams& grp, const Digest& manifest_hash, const Bigint& pk,
            const Ciphertext& ct, int bit, const Bigint& r, RandomSource& rng);

VerifyResult verify(const GroupParams& grp, const Digest& manifest_hash, const Bigint& pk,
                    const Ciphertext& ct, const Proof& proof);

}  // namespace bitproof
}  // namespace e2ev
