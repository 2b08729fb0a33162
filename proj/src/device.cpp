#include "e2ev/device.hpp"

#include <stdexcept>

namespace e2ev {

Device::Device(const DeviceConfig& config, const ElectionManifest& manifest,
               const Bigint& sign_sk, const Bytes& code_key)
    : config_(config), manifest_(manifest), sign_sk_(sign_sk), code_key_(code_key),
      rng_(config.seed) {
    for (double rate : {config.cheat_rate, config.drop_rate, config.bad_signature_rate}) {
        if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("device: rate outside [0,1]");
    }
    if (code_key_.size() != 32) throw std::invalid_argument("device: code key must be 32 bytes");
}

DeviceSession Device::begin(size_t selection) {
    size_t n = manifest_.candidates.size();
    if (selection >= n) throw std::invalid_argument("device: invalid selection");
    DeviceSession s;
    s.chosen_selection_ = selection;
    s.actual_selection_ = selection;
    // The cheat decision happens here, before anyone has decided whether this
    // encryption will be audited. That ordering is the whole game.
    if (rng_.bernoulli(config_.cheat_rate)) {
        size_t offset = 1 + static_cast<size_t>(rng_.below(n - 1));
        s.actual_selection_ = (selection + offset) % n;
    }
    EncryptResult enc = encrypt_ballot(manifest_, s.actual_selection_, rng_);
    s.ballot_ = std::move(enc.ballot);
    s.randomness_ = std::move(enc.randomness);
    return s;
}

Receipt Device::finalize_cast(DeviceSession& session, Board& board) {
    if (session.consumed_) throw std::logic_error("device: session already consumed");
    session.consumed_ = true;
    session.randomness_.rs.clear();  // cast ballots never reveal randomness

    bool drop = rng_.bernoulli(config_.drop_rate);
    bool corrupt_sig = rng_.bernoulli(config_.bad_signature_rate);

    Receipt receipt;
    receipt.ballot_hash = session.ballot_.ballot_hash;
    Bytes msg(receipt.ballot_hash.begin(), receipt.ballot_hash.end());
    receipt.signature = schnorr::sign(manifest_.group, manifest_.manifest_hash, sign_sk_, msg,
                                      rng_);
    if (corrupt_sig) {
        receipt.signature.s = (receipt.signature.s + 1) % manifest_.group.q;
    }
    receipt.return_code = issue_return_code(code_key_, receipt.ballot_hash);

    if (!drop) {
        board.append_cast(session.ballot_);  // rejections propagate
    }
    return receipt;
}

ChallengeRecord Device::finalize_challenge(DeviceSession& session, Board& board) {
    if (session.consumed_) throw std::logic_error("device: session already consumed");
    session.consumed_ = true;
    ChallengeRecord rec;
    rec.ballot = session.ballot_;
    rec.randomness = session.randomness_;
    // The claimed plaintext is the voter's choice as they saw it on screen; a
    // device that encrypted something else cannot rewrite that claim without
    // the voter (or an observer) noticing at the machine.
    rec.claimed_selection = session.chosen_selection_;
    board.append_challenge(rec);
    return rec;
}

}  // namespace e2ev
