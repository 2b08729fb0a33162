#pragma once

#include "e2ev/board_format.hpp"
#include "e2ev/receipt.hpp"
#include "e2ev/tally_format.hpp"

namespace e2ev {

/**
 * The independent election verifier. Consumes exactly two published files (a
 * manifest and a board export), trusts neither, and either attests the tally
 * or pinpoints one hand-checkable error. Checks run in a fixed order and stop
 * at the first failure so any two conforming implementations report the same
 * locator. Every failure carries enough context (seq, field, expected vs
 * found) to recheck with a pocket calculator and a hash tool; a bare "it is
 * wrong" is not representable.
 */
struct Locator {
    bool has_seq = false;
    uint64_t seq = 0;
    std::string field;
    std::string expected;
    std::string found;
};

struct CheckResult {
    std::string name;
    bool ok = true;
    Locator locator;  // meaningful only when !ok
};

/** Deterministic effort counters; intentionally no wall-clock anywhere. */
struct WorkCounters {
    uint64_t entries = 0;
    uint64_t cast_ballots = 0;
    uint64_t challenged_ballots = 0;
    uint64_t bit_proofs = 0;
    uint64_t sum_proofs = 0;
    uint64_t openings = 0;
    uint64_t decryption_proofs = 0;
    uint64_t exponent_recoveries = 0;
};

struct VerificationReport {
    std::string verdict = "FAIL";    // "PASS" | "FAIL"
    bool decode_error = false;       // input unreadable; maps to exit code 2
    std::vector<CheckResult> checks; // prefix of the fixed order, through first failure
    uint64_t entry_count = 0;
    uint64_t cast_count = 0;
    uint64_t challenged_count = 0;
    std::vector<uint64_t> counts;    // recomputed; empty if never reached
    WorkCounters work;
};

std::string report_canonical(const VerificationReport& r);

/** 0 = verified, 1 = verification failed, 2 = inputs undecodable. */
int report_exit_code(const VerificationReport& r);

/**
 * Verify a full evidence package from raw file bytes. The board is one JSON
 * entry per line; hashes are checked over the exact stored payload bytes.
 */
VerificationReport verify_election(const std::string& manifest_bytes,
                                   const std::string& board_bytes);

enum class ReceiptStatus { Included, Missing, SignatureInvalid };
const char* receipt_status_name(ReceiptStatus s);

/** Voter-side check: device signature under the manifest key, then board lookup. */
ReceiptStatus check_receipt(const std::string& manifest_bytes, const std::string& board_bytes,
                            const std::string& receipt_bytes);

}  // namespace e2ev
