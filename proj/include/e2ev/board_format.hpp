#pragma once

#include "e2ev/ballot.hpp"
#include "e2ev/schnorr.hpp"

namespace e2ev {

/**
 * Bulletin board wire format. The board is a hash chain serialized as one JSON
 * object per line; every entry commits to its predecessor, so any verifier
 * holding the full file can detect insertion, deletion, or edits anywhere in
 * the history. Payloads are opaque byte strings at this layer; the entry hash
 * covers the exact stored bytes, not a re-parse.
 */
enum class EntryKind : uint8_t {
    manifest = 1,
    cast_ballot = 2,
    challenged_ballot = 3,
    tally_artifact = 4,
    close = 5,
};

const char* kind_name(EntryKind k);
bool kind_from_name(const std::string& name, EntryKind& out);

struct BoardEntry {
    uint64_t seq = 0;
    EntryKind kind = EntryKind::manifest;
    Digest prev_hash{};  // all zero for the first entry
    std::string payload;
    Digest entry_hash{};
};

/** What the chain commits to: prev hash, position, kind tag, payload bytes. */
Digest entry_digest(const Digest& prev, uint64_t seq, EntryKind kind, const std::string& payload);

std::string entry_line(const BoardEntry& e);
BoardEntry parse_entry_line(const std::string& line);

/** A challenged ballot posted with its opening. */
struct ChallengeRecord {
    EncryptedBallot ballot;
    BallotRandomness randomness;
    uint64_t claimed_selection = 0;
};

std::string challenge_canonical(const GroupParams& grp, const ChallengeRecord& rec);
ChallengeRecord parse_challenge(const GroupParams& grp, const std::string& text);

/**
 * Board close marker. Reveals the return code key and carries the closing
 * authority's signature binding the manifest, the final chain head, and the
 * entry count, so the board cannot keep growing after the reveal.
 */
struct ClosePayload {
    uint64_t entry_count = 0;
    Bytes code_key;  // 32 bytes
    schnorr::Signature signature;
};

Bytes close_message(const Digest& manifest_hash, const Digest& prev, uint64_t entry_count,
                    const Bytes& code_key);
std::string close_canonical(const GroupParams& grp, const ClosePayload& c);
ClosePayload parse_close(const GroupParams& grp, const std::string& text);

}  // namespace e2ev
