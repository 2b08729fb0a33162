#pragma once

#include "e2ev/ballot.hpp"

namespace e2ev {

/**
 * Published tally evidence: per-candidate homomorphic aggregates, every
 * trustee's partial decryptions with correctness proofs, and the recovered
 * counts. Anyone holding the board can recompute the aggregates and check the
 * proofs; the counts carry no authority of their own.
 */
struct TrusteePartial {
    uint64_t trustee = 0;  // 1-based index
    Bigint share_pk;
    std::vector<Bigint> partials;     // one per candidate: a_i ^ share_sk
    std::vector<cp::Proof> proofs;    // one per candidate
};

struct TallyArtifact {
    uint64_t cast_count = 0;
    std::vector<Ciphertext> aggregates;  // one per candidate
    std::vector<TrusteePartial> trustees;
    std::vector<uint64_t> counts;  // one per candidate
};

/** Prove partial = ct.a ^ sk against share_pk = g ^ sk (same exponent both places). */
cp::Proof prove_decryption(const GroupParams& grp, const Digest& manifest_hash,
                           const Bigint& share_pk, const Ciphertext& ct, const Bigint& partial,
                           const Bigint& sk, RandomSource& rng);
cp::VerifyResult verify_decryption(const GroupParams& grp, const Digest& manifest_hash,
                                   const Bigint& share_pk, const Ciphertext& ct,
                                   const Bigint& partial, const cp::Proof& proof);

std::string tally_canonical(const GroupParams& grp, const TallyArtifact& t);
TallyArtifact parse_tally(const GroupParams& grp, const std::string& text);

}  // namespace e2ev
