#pragma once

#include "e2ev/board.hpp"

namespace e2ev {

/**
 * Trustee-side tallying: fold every cast ballot into per-candidate aggregate
 * ciphertexts (no decryption involved), then decrypt only the aggregates with
 * every trustee's share, proving each partial correct. Invalid cast ballots
 * abort the tally outright: an honest board cannot contain one, so finding
 * one is proof of board misbehavior, not something to skip past.
 */
std::vector<Ciphertext> aggregate(const ElectionManifest& manifest,
                                  const std::vector<BoardEntry>& entries,
                                  uint64_t* cast_count_out = nullptr);

TallyArtifact decrypt_tally(const ElectionManifest& manifest,
                            const std::vector<Ciphertext>& aggregates, uint64_t cast_count,
                            const std::vector<TrusteeShare>& shares, RandomSource& rng);

/** Aggregate the board, decrypt, and publish the artifact in one step. */
TallyArtifact run_tally(Board& board, const std::vector<TrusteeShare>& shares,
                        RandomSource& rng);

}  // namespace e2ev
