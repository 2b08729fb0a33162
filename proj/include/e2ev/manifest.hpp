#pragma once

#include "e2ev/group.hpp"
#include "e2ev/sha256.hpp"

#include <vector>

namespace e2ev {

/**
 * The public election definition. Everything a verifier needs to interpret
 * the board is pinned here, and the manifest hash is bound into every
 * Fiat-Shamir challenge, so proofs cannot migrate between elections.
 *
 * No secret appears in the manifest: device_pk and authority_pk are
 * verification keys only.
 */
struct ElectionManifest {
    std::string election_id;
    std::vector<std::string> candidates;
    GroupParams group;
    Bigint pk;
    Bigint device_pk;
    Bigint authority_pk;
    Digest manifest_hash{};
    std::string canonical;  // exact published bytes, hash field included
};

/** Names usable in canonical text without escaping. */
bool valid_label(const std::string& s);

ElectionManifest build_manifest(const std::string& election_id,
                                const std::vector<std::string>& candidates,
                                const GroupParams& group, const Bigint& pk,
                                const Bigint& device_pk, const Bigint& authority_pk);

/**
 * Strict parse: validates the group (Miller-Rabin included), every key, the
 * recomputed manifest hash, and that the input is byte-for-byte canonical.
 */
ElectionManifest parse_manifest(const std::string& text, int mr_rounds = 30);

}  // namespace e2ev
