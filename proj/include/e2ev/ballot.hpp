#pragma once

#include "e2ev/bit_proof.hpp"
#include "e2ev/chaum_pedersen.hpp"
#include "e2ev/json_util.hpp"
#include "e2ev/manifest.hpp"

namespace e2ev {

/**
 * One encrypted ballot: a ciphertext per candidate, each proven to hold a bit,
 * plus a proof that the ciphertexts sum to exactly one. The ballot hash covers
 * the canonical serialization of every prior field and doubles as the
 * commitment a device must show before the voter decides to cast or challenge.
 */
struct EncryptedBallot {
    Bytes nonce;  // 16 bytes; keeps equal selections from colliding
    std::vector<Ciphertext> ciphertexts;
    std::vector<bitproof::Proof> bit_proofs;
    cp::Proof sum_proof;
    Digest ballot_hash{};
};

/** Per-candidate encryption randomness; published only on challenge. */
struct BallotRandomness {
    std::vector<Bigint> rs;
};

struct BallotCheck {
    bool ok = false;
    std::string reason;  // first failing check
};

struct EncryptResult {
    EncryptedBallot ballot;
    BallotRandomness randomness;
};

/** Encrypt a one-hot selection with fresh randomness and both proof layers. */
EncryptResult encrypt_ballot(const ElectionManifest& m, size_t selection, RandomSource& rng);

/**
 * Check order is fixed and the reason names the first failure:
 * candidate-count, ciphertext[i], bit-proof[i], sum-proof, ballot-hash.
 */
BallotCheck verify_ballot(const ElectionManifest& m, const EncryptedBallot& ballot);

/**
 * Benaloh opening: re-encrypt the claimed selection with the published
 * randomness and compare ciphertexts byte for byte.
 */
BallotCheck open_ballot(const ElectionManifest& m, const EncryptedBallot& ballot,
                        const BallotRandomness& randomness, size_t claimed_selection);

std::string ballot_canonical(const GroupParams& grp, const EncryptedBallot& ballot);
EncryptedBallot parse_ballot(const GroupParams& grp, const std::string& text);
EncryptedBallot ballot_from_json(const GroupParams& grp, const nlohmann::json& j,
                                 const std::string& where);

std::string randomness_canonical(const GroupParams& grp, const BallotRandomness& r);
BallotRandomness randomness_from_json(const GroupParams& grp, const nlohmann::json& j);

// Shared serialization pieces, reused by the tally artifact format.
std::string ciphertext_canonical(const GroupParams& grp, const Ciphertext& c);
Ciphertext ciphertext_from_json(const GroupParams& grp, const nlohmann::json& j,
                                const std::string& where);
std::string cp_proof_canonical(const GroupParams& grp, const cp::Proof& p);
cp::Proof cp_proof_from_json(const GroupParams& grp, const nlohmann::json& j,
                             const std::string& where);

}  // namespace e2ev
