#pragma once

#include "e2ev/rng.hpp"
#include "e2ev/transcript.hpp"

namespace e2ev {
namespace schnorr {

struct KeyPair {
    Bigint sk;
    Bigint pk;
};

/** Signature in challenge-response form: e = H(pk, R, msg), s = k + e * sk. */
struct Signature {
    Bigint e;
    Bigint s;
};

KeyPair keygen(const GroupParams& grp, RandomSource& rng);

Signature sign(const GroupParams& grp, const Digest& manifest_hash, const Bigint& sk,
               const Bytes& msg, RandomSource& rng);

bool verify(const GroupParams& grp, const Digest& manifest_hash, const Bigint& pk,
            const Bytes& msg, const Signature& sig);

}  // namespace schnorr
}  // namespace e2ev
