#pragma once

#include "e2ev/board_format.hpp"
#include "e2ev/tally_format.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace e2ev {

/**
 * The live bulletin board: an append-only hash chain with policy enforcement
 * at the write path and an optional file sink. Every accepted entry is
 * persisted (written and flushed) before the append call returns, so a crash
 * can lose at most an unacknowledged entry. The in-memory copy is the file;
 * snapshot() returns the exact publishable bytes.
 *
 * Policy gates, each a distinct rejection: the manifest exists only at seq 0;
 * a cast ballot must verify and must not reuse any cast or challenged ballot
 * hash; a challenged ballot must parse and must not reuse a hash; at most one
 * tally artifact; a close must carry the current entry count and a valid
 * authority signature; nothing follows the close.
 */
class Board {
  public:
    struct AppendResult {
        uint64_t seq;
        Digest entry_hash;
    };

    enum class LookupKind { CastFound, ChallengedFound, Absent };
    struct LookupResult {
        LookupKind kind = LookupKind::Absent;
        uint64_t seq = 0;
    };

    /** Start a fresh board whose genesis entry is the manifest. */
    static Board create(const ElectionManifest& manifest, const std::string& file_path = "");
    /** Reload a board file, re-verifying the whole chain and all policy state. */
    static Board open_file(const std::string& file_path);

    /** Generic policy-checked append; payload must be canonical for its kind. */
    AppendResult append_payload(EntryKind kind, const std::string& payload);

    AppendResult append_cast(const EncryptedBallot& ballot);
    AppendResult append_challenge(const ChallengeRecord& record);
    AppendResult append_tally(const TallyArtifact& artifact);
    /** Build, sign, and append the close entry, revealing the return code key. */
    AppendResult append_close(const Bytes& code_key, const Bigint& authority_sk,
                              RandomSource& rng);

    LookupResult lookup(const Digest& ballot_hash) const;
    std::string snapshot() const;
    std::vector<BoardEntry> entries() const;
    uint64_t size() const;
    bool closed() const;
    ElectionManifest manifest() const;

  private:
    Board() = default;
    void load_entry(const BoardEntry& e);  // shared policy/index update
    AppendResult append_locked(EntryKind kind, const std::string& payload);

    std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
    std::vector<BoardEntry> entries_;
    ElectionManifest manifest_;
    std::map<std::string, LookupResult> by_hash_;  // ballot hash hex -> location
    std::optional<uint64_t> tally_seq_;
    bool closed_ = false;
    std::string file_path_;  // empty = memory only
};

}  // namespace e2ev
