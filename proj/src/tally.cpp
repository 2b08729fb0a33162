#include "e2ev/tally.hpp"

#include <stdexcept>

namespace e2ev {

std::vector<Ciphertext> aggregate(const ElectionManifest& manifest,
                                  const std::vector<BoardEntry>& entries,
                                  uint64_t* cast_count_out) {
    size_t n = manifest.candidates.size();
    std::vector<Ciphertext> aggregates(n, identity_ciphertext());
    uint64_t cast_count = 0;
    for (const BoardEntry& e : entries) {
        if (e.kind != EntryKind::cast_ballot) continue;  // challenged ballots never count
        EncryptedBallot ballot;
        try {
            ballot = parse_ballot(manifest.group, e.payload);
        } catch (const std::exception&) {
            throw std::runtime_error("tally: invalid cast ballot at seq " +
                                     std::to_string(e.seq));
        }
        if (!verify_ballot(manifest, ballot).ok) {
            throw std::runtime_error("tally: invalid cast ballot at seq " +
                                     std::to_string(e.seq));
        }
        for (size_t i = 0; i < n; i++) {
            aggregates[i] = homomorphic_add(manifest.group, aggregates[i],
                                            ballot.ciphertexts[i]);
        }
        cast_count++;
    }
    if (cast_count_out) *cast_count_out = cast_count;
    return aggregates;
}

TallyArtifact decrypt_tally(const ElectionManifest& manifest,
                            const std::vector<Ciphertext>& aggregates, uint64_t cast_count,
                            const std::vector<TrusteeShare>& shares, RandomSource& rng) {
    if (shares.empty()) throw std::invalid_argument("tally: no trustee shares");
    // Every share must be present: decryption is n-of-n by construction.
    std::vector<bool> present(shares.size() + 1, false);
    for (const TrusteeShare& s : shares) {
        if (s.index < 1 || s.index > shares.size() || present[s.index]) {
            throw std::invalid_argument("tally: trustee indices must be 1.." +
                                        std::to_string(shares.size()));
        }
        present[s.index] = true;
    }
    for (size_t i = 1; i <= shares.size(); i++) {
        if (!present[i]) throw std::invalid_argument("tally: missing share " + std::to_string(i));
    }

    TallyArtifact artifact;
    artifact.cast_count = cast_count;
    artifact.aggregates = aggregates;
    std::vector<TrusteeShare> ordered(shares);
    std::sort(ordered.begin(), ordered.end(),
              [](const TrusteeShare& a, const TrusteeShare& b) { return a.index < b.index; });
    for (const TrusteeShare& s : ordered) {
        TrusteePartial tp;
        tp.trustee = s.index;
        tp.share_pk = modexp(manifest.group.g, s.sk, manifest.group.p);
        for (const Ciphertext& agg : aggregates) {
            Bigint partial = decrypt_share(manifest.group, agg, s.sk);
            tp.partials.push_back(partial);
            tp.proofs.push_back(prove_decryption(manifest.group, manifest.manifest_hash,
                                                 tp.share_pk, agg, partial, s.sk, rng));
        }
        artifact.trustees.push_back(std::move(tp));
    }
    for (size_t i = 0; i < aggregates.size(); i++) {
        std::vector<Bigint> partials;
        for (const TrusteePartial& tp : artifact.trustees) partials.push_back(tp.partials[i]);
        Bigint plain = combine_shares(manifest.group, aggregates[i], partials);
        std::optional<uint64_t> count = recover_exponent(manifest.group, plain, cast_count);
        if (!count) {
            throw std::runtime_error("tally: corrupted aggregate for candidate " +
                                     std::to_string(i));
        }
        artifact.counts.push_back(*count);
    }
    return artifact;
}

TallyArtifact run_tally(Board& board, const std::vector<TrusteeShare>& shares,
                        RandomSource& rng) {
    ElectionManifest manifest = board.manifest();
    uint64_t cast_count = 0;
    std::vector<Ciphertext> aggregates = aggregate(manifest, board.entries(), &cast_count);
    TallyArtifact artifact = decrypt_tally(manifest, aggregates, cast_count, shares, rng);
    board.append_tally(artifact);
    return artifact;
}

}  // namespace e2ev
