#include "e2ev/board.hpp"

#include <fstream>
#include <stdexcept>

namespace e2ev {

Board Board::create(const ElectionManifest& manifest, const std::string& file_path) {
    Board b;
    b.manifest_ = manifest;
    b.file_path_ = file_path;
    if (!file_path.empty()) {
        std::ofstream out(file_path, std::ios::trunc | std::ios::binary);
        if (!out) throw std::runtime_error("board: cannot open file " + file_path);
    }
    std::lock_guard<std::mutex> lock(*b.mu_);
    b.append_locked(EntryKind::manifest, manifest.canonical);
    return b;
}

Board Board::open_file(const std::string& file_path) {
    std::ifstream in(file_path, std::ios::binary);
    if (!in) throw std::runtime_error("board: cannot open file " + file_path);
    Board b;
    b.file_path_ = file_path;
    std::string line;
    Digest prev{};
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        BoardEntry e;
        try {
            e = parse_entry_line(line);
        } catch (const std::exception& ex) {
            throw std::runtime_error("board: corrupt file at seq " +
                                     std::to_string(b.entries_.size()) + ": " + ex.what());
        }
        if (e.seq != b.entries_.size() || e.prev_hash != prev ||
            e.entry_hash != entry_digest(e.prev_hash, e.seq, e.kind, e.payload)) {
            throw std::runtime_error("board: corrupt file at seq " +
                                     std::to_string(b.entries_.size()));
        }
        if (e.seq == 0) {
            if (e.kind != EntryKind::manifest) {
                throw std::runtime_error("board: corrupt file at seq 0: no manifest");
            }
            b.manifest_ = parse_manifest(e.payload);
        } else {
            // The append gate enforces these; a stored file violating them was
            // not written through this board.
            std::string why;
            if (e.kind == EntryKind::manifest) why = "second manifest";
            else if (b.closed_) why = "entry after close";
            else if (e.kind == EntryKind::tally_artifact && b.tally_seq_) {
                why = "second tally artifact";
            }
            if (!why.empty()) {
                throw std::runtime_error("board: corrupt file at seq " +
                                         std::to_string(e.seq) + ": " + why);
            }
        }
        try {
            b.load_entry(e);
        } catch (const std::exception& ex) {
            throw std::runtime_error("board: corrupt file at seq " +
                                     std::to_string(e.seq) + ": " + ex.what());
        }
        b.entries_.push_back(e);
        prev = e.entry_hash;
    }
    if (b.entries_.empty()) throw std::runtime_error("board: empty file");
    return b;
}

void Board::load_entry(const BoardEntry& e) {
    switch (e.kind) {
        case EntryKind::manifest:
            break;
        case EntryKind::cast_ballot: {
            EncryptedBallot ballot = parse_ballot(manifest_.group, e.payload);
            std::string h = digest_hex(ballot.ballot_hash);
            // redundant on the append path (pre-checked), load-bearing on replay
            if (by_hash_.count(h)) throw std::runtime_error("duplicate ballot hash");
            by_hash_[h] = {LookupKind::CastFound, e.seq};
            break;
        }
        case EntryKind::challenged_ballot: {
            ChallengeRecord rec = parse_challenge(manifest_.group, e.payload);
            std::string h = digest_hex(rec.ballot.ballot_hash);
            if (by_hash_.count(h)) throw std::runtime_error("duplicate ballot hash");
            by_hash_[h] = {LookupKind::ChallengedFound, e.seq};
            break;
        }
        case EntryKind::tally_artifact:
            tally_seq_ = e.seq;
            break;
        case EntryKind::close:
            closed_ = true;
            break;
    }
}

Board::AppendResult Board::append_payload(EntryKind kind, const std::string& payload) {
    std::lock_guard<std::mutex> lock(*mu_);
    return append_locked(kind, payload);
}

Board::AppendResult Board::append_locked(EntryKind kind, const std::string& payload) {
    if (closed_) throw std::runtime_error("board: closed");
    uint64_t seq = entries_.size();
    if (kind == EntryKind::manifest && seq != 0) {
        throw std::runtime_error("board: manifest only at seq 0");
    }
    if (kind != EntryKind::manifest && seq == 0) {
        throw std::runtime_error("board: first entry must be the manifest");
    }

    // Policy: parse the payload by kind and reject before touching the chain.
    switch (kind) {
        case EntryKind::manifest:
            break;  // only reachable at creation; manifest_ already set
        case EntryKind::cast_ballot: {
            EncryptedBallot ballot;
            try {
                ballot = parse_ballot(manifest_.group, payload);
            } catch (const std::exception& ex) {
                throw std::runtime_error(std::string("board: malformed payload: ") + ex.what());
            }
            BallotCheck bc = verify_ballot(manifest_, ballot);
            if (!bc.ok) throw std::runtime_error("board: invalid ballot: " + bc.reason);
            if (by_hash_.count(digest_hex(ballot.ballot_hash))) {
                throw std::runtime_error("board: duplicate ballot hash");
            }
            break;
        }
        case EntryKind::challenged_ballot: {
            ChallengeRecord rec;
            try {
                rec = parse_challenge(manifest_.group, payload);
            } catch (const std::exception& ex) {
                throw std::runtime_error(std::string("board: malformed payload: ") + ex.what());
            }
            // The opening itself is evidence for the public record and is not
            // judged here: a failed opening must be postable to be caught.
            if (by_hash_.count(digest_hex(rec.ballot.ballot_hash))) {
                throw std::runtime_error("board: duplicate ballot hash");
            }
            break;
        }
        case EntryKind::tally_artifact: {
            try {
                parse_tally(manifest_.group, payload);
            } catch (const std::exception& ex) {
                throw std::runtime_error(std::string("board: malformed payload: ") + ex.what());
            }
            if (tally_seq_) throw std::runtime_error("board: second tally artifact");
            break;
        }
        case EntryKind::close: {
            ClosePayload close;
            try {
                close = parse_close(manifest_.group, payload);
            } catch (const std::exception& ex) {
                throw std::runtime_error(std::string("board: malformed payload: ") + ex.what());
            }
            if (close.entry_count != seq) {
                throw std::runtime_error("board: close entry count mismatch");
            }
            Digest head = entries_.back().entry_hash;
            Bytes msg = close_message(manifest_.manifest_hash, head, close.entry_count,
                                      close.code_key);
            if (!schnorr::verify(manifest_.group, manifest_.manifest_hash,
                                 manifest_.authority_pk, msg, close.signature)) {
                throw std::runtime_error("board: close signature invalid");
            }
            break;
        }
    }

    BoardEntry e;
    e.seq = seq;
    e.kind = kind;
    e.prev_hash = seq == 0 ? Digest{} : entries_.back().entry_hash;
    e.payload = payload;
    e.entry_hash = entry_digest(e.prev_hash, e.seq, e.kind, e.payload);

    if (!file_path_.empty()) {
        // Persist before acknowledging.
        std::ofstream out(file_path_, std::ios::app | std::ios::binary);
        if (!out) throw std::runtime_error("board: cannot open file " + file_path_);
        out << entry_line(e) << '\n';
        out.flush();
        if (!out) throw std::runtime_error("board: write failed");
    }
    load_entry(e);
    entries_.push_back(e);
    return {e.seq, e.entry_hash};
}

Board::AppendResult Board::append_cast(const EncryptedBallot& ballot) {
    return append_payload(EntryKind::cast_ballot, ballot_canonical(manifest_.group, ballot));
}

Board::AppendResult Board::append_challenge(const ChallengeRecord& record) {
    return append_payload(EntryKind::challenged_ballot,
                          challenge_canonical(manifest_.group, record));
}

Board::AppendResult Board::append_tally(const TallyArtifact& artifact) {
    return append_payload(EntryKind::tally_artifact, tally_canonical(manifest_.group, artifact));
}

Board::AppendResult Board::append_close(const Bytes& code_key, const Bigint& authority_sk,
                                        RandomSource& rng) {
    ClosePayload close;
    std::string payload;
    {
        std::lock_guard<std::mutex> lock(*mu_);
        if (closed_) throw std::runtime_error("board: closed");
        close.entry_count = entries_.size();
        close.code_key = code_key;
        Bytes msg = close_message(manifest_.manifest_hash, entries_.back().entry_hash,
                                  close.entry_count, code_key);
        close.signature = schnorr::sign(manifest_.group, manifest_.manifest_hash, authority_sk,
                                        msg, rng);
        payload = close_canonical(manifest_.group, close);
        return append_locked(EntryKind::close, payload);
    }
}

Board::LookupResult Board::lookup(const Digest& ballot_hash) const {
    std::lock_guard<std::mutex> lock(*mu_);
    auto it = by_hash_.find(digest_hex(ballot_hash));
    if (it == by_hash_.end()) return {};
    return it->second;
}

std::string Board::snapshot() const {
    std::lock_guard<std::mutex> lock(*mu_);
    std::string out;
    for (const BoardEntry& e : entries_) out += entry_line(e) + "\n";
    return out;
}

std::vector<BoardEntry> Board::entries() const {
    std::lock_guard<std::mutex> lock(*mu_);
    return entries_;
}

uint64_t Board::size() const {
    std::lock_guard<std::mutex> lock(*mu_);
    return entries_.size();
}

bool Board::closed() const {
    std::lock_guard<std::mutex> lock(*mu_);
    return closed_;
}

ElectionManifest Board::manifest() const {
    std::lock_guard<std::mutex> lock(*mu_);
    return manifest_;
}

}  // namespace e2ev
