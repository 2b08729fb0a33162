#pragma once

#include "e2ev/rng.hpp"
#include "e2ev/transcript.hpp"

#include <string>

namespace e2ev {
namespace cp {

/**
 * Chaum-Pedersen proof of discrete log equality: y1 = g1^w and y2 = g2^w for
 * the same witness w. Used twice in this artifact: the ballot sum proof
 * (bases g and pk) and trustee decryption proofs (bases g and a).
 */
struct Proof {
    Bigint t1;  // g1^k
    Bigint t2;  // g2^k
    Bigint c;
    Bigint s;
};

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

/**
 * The challenge binds the manifest, the full statement (both bases and both
 * targets plus caller context), and both commitments, under the caller's
 * domain tag.
 */
Bigint challenge(const std::string& tag, const GroupParams& grp, const Digest& manifest_hash,
                 const std::vector<Bigint>& statement, const Bigint& t1, const Bigint& t2);

Proof prove(const std::string& tag, const GroupParams& grp, const Digest& manifest_hash,
            const std::vector<Bigint>& statement, const Bigint& g1, const Bigint& y1,
            const Bigint& g2, const Bigint& y2, const Bigint& w, RandomSource& rng);

VerifyResult verify(const std::string& tag, const GroupParams& grp, const Digest& manifest_hash,
                    const std::vector<Bigint>& statement, const Bigint& g1, const Bigint& y1,
                    const Bigint& g2, const Bigint& y2, const Proof& proof);

}  // namespace cp
}  // namespace e2ev
