#pragma once

#include "e2ev/board.hpp"
#include "e2ev/dispute.hpp"

#include <optional>

namespace e2ev {

/**
 * On-disk layout for one election. Published artifacts (manifest.json,
 * board.ndjson, receipts/, reports/) are safe to hand out; everything under
 * keys/ is secret material and must never leak into a published file.
 */
struct SetupParams {
    std::string election_id = "election";
    std::vector<std::string> candidates;
    uint32_t trustees = 1;
    std::string group_name = "production";  // test | toy | production
    std::optional<uint64_t> seed;           // deterministic keys when set
};

GroupParams group_by_name(const std::string& name);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

class Workspace {
  public:
    explicit Workspace(std::string dir);

    /** Generate keys, write the manifest, and start the board at seq 0. */
    static Workspace setup(const std::string& dir, const SetupParams& params);

    std::string manifest_path() const { return dir_ + "/manifest.json"; }
    std::string board_path() const { return dir_ + "/board.ndjson"; }
    std::string lock_path() const { return dir_ + "/board.lock"; }
    std::string keys_dir() const { return dir_ + "/keys"; }
    std::string receipts_dir() const { return dir_ + "/receipts"; }
    std::string reports_dir() const { return dir_ + "/reports"; }
    std::string claims_dir() const { return dir_ + "/claims"; }
    const std::string& dir() const { return dir_; }

    ElectionManifest load_manifest() const;
    Bigint authority_sk() const;
    Bigint device_sign_sk() const;
    Bytes code_key() const;
    uint32_t trustee_count() const;
    TrusteeShare trustee(uint32_t index) const;
    std::vector<TrusteeShare> all_trustees() const;

    std::string receipt_path(const Digest& ballot_hash) const;
    std::string claim_path(const Digest& ballot_hash) const;

  private:
    std::string dir_;
};

/** Single-writer exclusivity for the board file; throws if already held. */
class BoardLock {
  public:
    explicit BoardLock(const std::string& path);
    ~BoardLock();
    BoardLock(const BoardLock&) = delete;
    BoardLock& operator=(const BoardLock&) = delete;

  private:
    std::string path_;
};

}  // namespace e2ev
