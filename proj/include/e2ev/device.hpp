#pragma once

#include "e2ev/board.hpp"
#include "e2ev/receipt.hpp"

namespace e2ev {

/**
 * The voting device, honest or adversarial, behind one interface. The state
 * machine forces the commitment (the ballot hash) out of the device before the
 * cast-or-challenge decision exists anywhere: begin() returns the commitment,
 * and only afterwards can a caller pick which finalize to invoke. A dishonest
 * device therefore has to gamble at encryption time.
 *
 * Misbehavior knobs: cheat_rate flips the encrypted selection to a uniformly
 * random other candidate; drop_rate silently omits a cast ballot from the
 * board while still issuing a receipt; bad_signature_rate corrupts the
 * receipt signature.
 */
struct DeviceConfig {
    double cheat_rate = 0.0;
    double drop_rate = 0.0;
    double bad_signature_rate = 0.0;
    uint64_t seed = 0;
};

class Device;

class DeviceSession {
  public:
    const Digest& commitment() const { return ballot_.ballot_hash; }
    bool consumed() const { return consumed_; }

    // Instrumentation for experiments and audits; a real terminal surfaces
    // only the commitment.
    size_t chosen_selection() const { return chosen_selection_; }
    size_t actual_selection() const { return actual_selection_; }

  private:
    friend class Device;
    EncryptedBallot ballot_;
    BallotRandomness randomness_;
    size_t chosen_selection_ = 0;   // what the voter asked for
    size_t actual_selection_ = 0;   // what was really encrypted
    bool consumed_ = false;
};

class Device {
  public:
    Device(const DeviceConfig& config, const ElectionManifest& manifest,
           const Bigint& sign_sk, const Bytes& code_key);

    /** Encrypt and commit. The cast/challenge decision is not an input here. */
    DeviceSession begin(size_t selection);

    /**
     * Cast the committed ballot: append to the board (unless dropped), erase
     * the randomness, and hand the voter a receipt. Board rejections surface
     * to the caller but the session is consumed either way.
     */
    Receipt finalize_cast(DeviceSession& session, Board& board);

    /** Challenge the committed ballot: publish it with its opening. */
    ChallengeRecord finalize_challenge(DeviceSession& session, Board& board);

  private:
    DeviceConfig config_;
    ElectionManifest manifest_;
    Bigint sign_sk_;
    Bytes code_key_;
    DeterministicRng rng_;
};

}  // namespace e2ev
