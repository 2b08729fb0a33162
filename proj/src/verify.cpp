#include "e2ev/verify.hpp"

#include "e2ev/json_util.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace e2ev {

namespace {

struct CastRecord {
    uint64_t seq;
    EncryptedBallot ballot;
};

struct ChallengedRecord {
    uint64_t seq;
    ChallengeRecord rec;
};

// Everything the checks accumulate while walking the board once.
struct Walk {
    std::vector<BoardEntry> entries;
    ElectionManifest manifest;
    std::vector<CastRecord> cast;
    std::vector<ChallengedRecord> challenged;
    std::optional<uint64_t> tally_seq;
    TallyArtifact tally;
    std::optional<uint64_t> close_seq;
    ClosePayload close;
};

struct Checker {
    VerificationReport& report;

    void pass(const std::string& name) { report.checks.push_back({name, true, {}}); }

    // Records the failure and finalizes the verdict; callers stop afterwards.
    void fail(const std::string& name, Locator loc) {
        report.checks.push_back({name, false, std::move(loc)});
        report.verdict = "FAIL";
    }

    void fail_at(const std::string& name, uint64_t seq, const std::string& field,
                 const std::string& expected, const std::string& found) {
        fail(name, Locator{true, seq, field, expected, found});
    }

    void fail_file(const std::string& name, const std::string& field,
                   const std::string& expected, const std::string& found) {
        fail(name, Locator{false, 0, field, expected, found});
    }
};

std::string quoted(const std::string& s) { return "\"" + jsonu::escape(s) + "\""; }

std::string locator_json(const Locator& l) {
    std::string out = "{";
    if (l.has_seq) out += "\"seq\":" + std::to_string(l.seq) + ",";
    out += "\"field\":" + quoted(l.field) + ",\"expected\":" + quoted(l.expected) +
           ",\"found\":" + quoted(l.found) + "}";
    return out;
}

// Decode phase: split lines, parse each as a board entry. Failures here mean
// the input is not readable at all and map to exit code 2.
bool decode_inputs(const std::string& manifest_bytes, const std::string& board_bytes,
                   Checker& ck, Walk& walk) {
    try {
        jsonu::parse(manifest_bytes);
    } catch (const std::exception& e) {
        ck.fail_file("decode", "manifest", "parseable json", std::string("byte 0: ") + e.what());
        return false;
    }
    size_t offset = 0;
    while (offset < board_bytes.size()) {
        size_t nl = board_bytes.find('\n', offset);
        size_t end = (nl == std::string::npos) ? board_bytes.size() : nl;
        std::string line = board_bytes.substr(offset, end - offset);
        if (!line.empty()) {
            try {
                walk.entries.push_back(parse_entry_line(line));
            } catch (const std::exception& e) {
                ck.fail_file("decode", "board", "parseable entry line",
                             "byte " + std::to_string(offset) + ": " + e.what());
                return false;
            }
        }
        offset = end + 1;
    }
    return true;
}

std::string u64s(uint64_t v) { return std::to_string(v); }

// Chain phase: positions, linkage, hashes, kind placement, signed close.
// Uses only board bytes; the manifest file is compared in the next phase.
bool check_chain(Checker& ck, Walk& walk, WorkCounters& work) {
    const std::string name = "chain";
    if (walk.entries.empty()) {
        ck.fail_file(name, "manifest", "entry at seq 0", "empty board");
        return false;
    }
    Digest prev{};  // genesis: 32 zero bytes
    for (size_t i = 0; i < walk.entries.size(); i++) {
        const BoardEntry& e = walk.entries[i];
        work.entries++;
        if (e.seq != i) {
            ck.fail_at(name, i, "seq", u64s(i), u64s(e.seq));
            return false;
        }
        if (e.prev_hash != prev) {
            ck.fail_at(name, i, "prev-hash", digest_hex(prev), digest_hex(e.prev_hash));
            return false;
        }
        Digest expect = entry_digest(e.prev_hash, e.seq, e.kind, e.payload);
        if (e.entry_hash != expect) {
            ck.fail_at(name, i, "entry-hash", digest_hex(expect), digest_hex(e.entry_hash));
            return false;
        }
        if (i == 0 && e.kind != EntryKind::manifest) {
            ck.fail_at(name, i, "kind", "manifest", kind_name(e.kind));
            return false;
        }
        if (i > 0 && e.kind == EntryKind::manifest) {
            ck.fail_at(name, i, "kind", "no manifest after seq 0", "manifest");
            return false;
        }
        if (walk.close_seq) {
            ck.fail_at(name, i, "close", "no entries after close", kind_name(e.kind));
            return false;
        }
        if (e.kind == EntryKind::tally_artifact) {
            if (walk.tally_seq) {
                ck.fail_at(name, i, "tally-artifact",
                           "single artifact at seq " + u64s(*walk.tally_seq), "second artifact");
                return false;
            }
            walk.tally_seq = i;
        }
        if (e.kind == EntryKind::close) walk.close_seq = i;
        prev = e.entry_hash;
    }
    // Parse the manifest the chain itself carries; it anchors every later check.
    try {
        walk.manifest = parse_manifest(walk.entries[0].payload);
    } catch (const std::exception& e) {
        ck.fail_at(name, 0, "manifest-decode", "canonical manifest", e.what());
        return false;
    }
    if (!walk.close_seq) {
        ck.fail_file(name, "close", "signed close entry", "absent");
        return false;
    }
    const BoardEntry& closer = walk.entries[*walk.close_seq];
    try {
        walk.close = parse_close(walk.manifest.group, closer.payload);
    } catch (const std::exception& e) {
        ck.fail_at(name, closer.seq, "close-decode", "canonical close payload", e.what());
        return false;
    }
    if (walk.close.entry_count != closer.seq) {
        ck.fail_at(name, closer.seq, "close-count", u64s(closer.seq),
                   u64s(walk.close.entry_count));
        return false;
    }
    Bytes msg = close_message(walk.manifest.manifest_hash, closer.prev_hash,
                              walk.close.entry_count, walk.close.code_key);
    if (!schnorr::verify(walk.manifest.group, walk.manifest.manifest_hash,
                         walk.manifest.authority_pk, msg, walk.close.signature)) {
        ck.fail_at(name, closer.seq, "close-signature", "valid signature by the authority key",
                   "invalid");
        return false;
    }
    ck.pass(name);
    return true;
}

bool check_manifest_consistency(const std::string& manifest_bytes, Checker& ck, Walk& walk) {
    const std::string name = "manifest-consistency";
    if (manifest_bytes != walk.entries[0].payload) {
        ck.fail_at(name, 0, "manifest", "sha256 " + digest_hex(sha256(walk.entries[0].payload)),
                   "sha256 " + digest_hex(sha256(manifest_bytes)));
        return false;
    }
    ck.pass(name);
    return true;
}

bool check_ballots(Checker& ck, Walk& walk, VerificationReport& report) {
    const std::string name = "ballot-wellformedness";
    const ElectionManifest& m = walk.manifest;
    std::map<std::string, uint64_t> seen;  // ballot hash hex -> first seq
    auto claim_hash = [&](const Digest& h, uint64_t seq) -> bool {
        auto [it, fresh] = seen.emplace(digest_hex(h), seq);
        if (!fresh) {
            ck.fail_at(name, seq, "duplicate-ballot",
                       "unique ballot hash (first at seq " + u64s(it->second) + ")",
                       digest_hex(h));
        }
        return fresh;
    };
    for (const BoardEntry& e : walk.entries) {
        if (e.kind == EntryKind::cast_ballot) {
            CastRecord rec{e.seq, {}};
            try {
                rec.ballot = parse_ballot(m.group, e.payload);
            } catch (const std::exception& ex) {
                ck.fail_at(name, e.seq, "ballot-decode", "canonical ballot", ex.what());
                return false;
            }
            report.work.cast_ballots++;
            BallotCheck bc = verify_ballot(m, rec.ballot);
            report.work.bit_proofs += m.candidates.size();
            report.work.sum_proofs++;
            if (!bc.ok) {
                ck.fail_at(name, e.seq, bc.reason, "valid", bc.reason);
                return false;
            }
            if (!claim_hash(rec.ballot.ballot_hash, e.seq)) return false;
            walk.cast.push_back(std::move(rec));
        } else if (e.kind == EntryKind::challenged_ballot) {
            ChallengedRecord rec{e.seq, {}};
            try {
                rec.rec = parse_challenge(m.group, e.payload);
            } catch (const std::exception& ex) {
                ck.fail_at(name, e.seq, "challenge-decode", "canonical challenge record",
                           ex.what());
                return false;
            }
            report.work.challenged_ballots++;
            BallotCheck bc = verify_ballot(m, rec.rec.ballot);
            report.work.bit_proofs += m.candidates.size();
            report.work.sum_proofs++;
            if (!bc.ok) {
                ck.fail_at(name, e.seq, bc.reason, "valid", bc.reason);
                return false;
            }
            if (!claim_hash(rec.rec.ballot.ballot_hash, e.seq)) return false;
            walk.challenged.push_back(std::move(rec));
        }
    }
    report.cast_count = walk.cast.size();
    report.challenged_count = walk.challenged.size();
    ck.pass(name);
    return true;
}

bool check_openings(Checker& ck, Walk& walk, WorkCounters& work) {
    const std::string name = "challenge-openings";
    for (const ChallengedRecord& cr : walk.challenged) {
        work.openings++;
        BallotCheck bc = open_ballot(walk.manifest, cr.rec.ballot, cr.rec.randomness,
                                     cr.rec.claimed_selection);
        if (!bc.ok) {
            ck.fail_at(name, cr.seq, "opening:" + bc.reason, "consistent opening", bc.reason);
            return false;
        }
    }
    ck.pass(name);
    return true;
}

bool check_aggregates(Checker& ck, Walk& walk) {
    const std::string name = "aggregate-recomputation";
    const ElectionManifest& m = walk.manifest;
    if (!walk.tally_seq) {
        ck.fail_file(name, "tally-artifact", "present", "absent");
        return false;
    }
    uint64_t seq = *walk.tally_seq;
    try {
        walk.tally = parse_tally(m.group, walk.entries[seq].payload);
    } catch (const std::exception& ex) {
        ck.fail_at(name, seq, "tally-decode", "canonical tally artifact", ex.what());
        return false;
    }
    size_t n = m.candidates.size();
    if (walk.tally.aggregates.size() != n) {
        ck.fail_at(name, seq, "aggregates", u64s(n) + " candidates",
                   u64s(walk.tally.aggregates.size()));
        return false;
    }
    if (walk.tally.cast_count != walk.cast.size()) {
        ck.fail_at(name, seq, "cast-count", u64s(walk.cast.size()),
                   u64s(walk.tally.cast_count));
        return false;
    }
    for (size_t i = 0; i < n; i++) {
        Ciphertext agg = identity_ciphertext();
        for (const CastRecord& cr : walk.cast) {
            agg = homomorphic_add(m.group, agg, cr.ballot.ciphertexts[i]);
        }
        if (agg != walk.tally.aggregates[i]) {
            ck.fail_at(name, seq, "aggregate[" + u64s(i) + "]",
                       element_hex(m.group, agg.a) + "," + element_hex(m.group, agg.b),
                       element_hex(m.group, walk.tally.aggregates[i].a) + "," +
                           element_hex(m.group, walk.tally.aggregates[i].b));
            return false;
        }
    }
    ck.pass(name);
    return true;
}

bool check_decryption_proofs(Checker& ck, Walk& walk, WorkCounters& work) {
    const std::string name = "decryption-proofs";
    const ElectionManifest& m = walk.manifest;
    uint64_t seq = *walk.tally_seq;
    if (walk.tally.trustees.empty()) {
        ck.fail_at(name, seq, "trustees", "at least one trustee", "none");
        return false;
    }
    std::map<uint64_t, bool> indices;
    Bigint product = 1;
    for (const TrusteePartial& tp : walk.tally.trustees) {
        if (!indices.emplace(tp.trustee, true).second) {
            ck.fail_at(name, seq, "trustee-index", "distinct indices",
                       "duplicate " + u64s(tp.trustee));
            return false;
        }
        product = modmul(product, tp.share_pk, m.group.p);
    }
    if (product != m.pk) {
        ck.fail_at(name, seq, "share-pk-product", element_hex(m.group, m.pk),
                   element_hex(m.group, product));
        return false;
    }
    for (size_t j = 0; j < walk.tally.trustees.size(); j++) {
        const TrusteePartial& tp = walk.tally.trustees[j];
        for (size_t i = 0; i < walk.tally.aggregates.size(); i++) {
            work.decryption_proofs++;
            cp::VerifyResult vr = verify_decryption(m.group, m.manifest_hash, tp.share_pk,
                                                    walk.tally.aggregates[i], tp.partials[i],
                                                    tp.proofs[i]);
            if (!vr.ok) {
                ck.fail_at(name, seq, "decryption-proof[" + u64s(j) + "][" + u64s(i) + "]",
                           "valid", vr.reason);
                return false;
            }
        }
    }
    ck.pass(name);
    return true;
}

bool check_count_recovery(Checker& ck, Walk& walk, VerificationReport& report) {
    const std::string name = "count-recovery";
    const ElectionManifest& m = walk.manifest;
    uint64_t seq = *walk.tally_seq;
    size_t n = m.candidates.size();
    if (walk.tally.counts.size() != n) {
        ck.fail_at(name, seq, "counts", u64s(n) + " candidates", u64s(walk.tally.counts.size()));
        return false;
    }
    std::vector<uint64_t> recomputed;
    for (size_t i = 0; i < n; i++) {
        report.work.exponent_recoveries++;
        std::vector<Bigint> partials;
        for (const TrusteePartial& tp : walk.tally.trustees) partials.push_back(tp.partials[i]);
        Bigint plain = combine_shares(m.group, walk.tally.aggregates[i], partials);
        std::optional<uint64_t> count = recover_exponent(m.group, plain, walk.tally.cast_count);
        if (!count) {
            ck.fail_at(name, seq, "count[" + u64s(i) + "]",
                       "dlog in [0," + u64s(walk.tally.cast_count) + "]", "none");
            return false;
        }
        recomputed.push_back(*count);
    }
    report.counts = recomputed;
    for (size_t i = 0; i < n; i++) {
        if (recomputed[i] != walk.tally.counts[i]) {
            ck.fail_at(name, seq, "count[" + u64s(i) + "]", u64s(recomputed[i]),
                       u64s(walk.tally.counts[i]));
            return false;
        }
    }
    ck.pass(name);
    return true;
}

bool check_count_sum(Checker& ck, Walk& walk) {
    const std::string name = "count-sum";
    uint64_t sum = 0;
    for (uint64_t c : walk.tally.counts) sum += c;
    if (sum != walk.tally.cast_count) {
        ck.fail_at(name, *walk.tally_seq, "count-sum", u64s(walk.tally.cast_count), u64s(sum));
        return false;
    }
    ck.pass(name);
    return true;
}

}  // namespace

std::string report_canonical(const VerificationReport& r) {
    std::string out = "{\"verdict\":\"" + r.verdict + "\",\"checks\":[";
    for (size_t i = 0; i < r.checks.size(); i++) {
        if (i > 0) out += ',';
        out += "{\"name\":" + quoted(r.checks[i].name) + ",\"ok\":" +
               (r.checks[i].ok ? "true" : "false");
        if (!r.checks[i].ok) out += ",\"locator\":" + locator_json(r.checks[i].locator);
        out += "}";
    }
    out += "],\"entry_count\":" + u64s(r.entry_count) + ",\"cast_count\":" + u64s(r.cast_count) +
           ",\"challenged_count\":" + u64s(r.challenged_count) + ",\"counts\":[";
    for (size_t i = 0; i < r.counts.size(); i++) {
        if (i > 0) out += ',';
        out += u64s(r.counts[i]);
    }
    out += "],\"work\":{\"entries\":" + u64s(r.work.entries) +
           ",\"cast_ballots\":" + u64s(r.work.cast_ballots) +
           ",\"challenged_ballots\":" + u64s(r.work.challenged_ballots) +
           ",\"bit_proofs\":" + u64s(r.work.bit_proofs) +
           ",\"sum_proofs\":" + u64s(r.work.sum_proofs) +
           ",\"openings\":" + u64s(r.work.openings) +
           ",\"decryption_proofs\":" + u64s(r.work.decryption_proofs) +
           ",\"exponent_recoveries\":" + u64s(r.work.exponent_recoveries) + "}}";
    return out;
}

int report_exit_code(const VerificationReport& r) {
    if (r.decode_error) return 2;
    return r.verdict == "PASS" ? 0 : 1;
}

VerificationReport verify_election(const std::string& manifest_bytes,
                                   const std::string& board_bytes) {
    VerificationReport report;
    Checker ck{report};
    Walk walk;

    if (!decode_inputs(manifest_bytes, board_bytes, ck, walk)) {
        report.decode_error = true;
        return report;
    }
    ck.pass("decode");
    report.entry_count = walk.entries.size();

    bool ok = check_chain(ck, walk, report.work) &&
              check_manifest_consistency(manifest_bytes, ck, walk) &&
              check_ballots(ck, walk, report) &&
              check_openings(ck, walk, report.work) &&
              check_aggregates(ck, walk) &&
              check_decryption_proofs(ck, walk, report.work) &&
              check_count_recovery(ck, walk, report) &&
              check_count_sum(ck, walk);
    report.entry_count = walk.entries.size();
    if (ok) report.verdict = "PASS";
    return report;
}

const char* receipt_status_name(ReceiptStatus s) {
    switch (s) {
        case ReceiptStatus::Included: return "Included";
        case ReceiptStatus::Missing: return "Missing";
        case ReceiptStatus::SignatureInvalid: return "SignatureInvalid";
    }
    return "SignatureInvalid";
}

ReceiptStatus check_receipt(const std::string& manifest_bytes, const std::string& board_bytes,
                            const std::string& receipt_bytes) {
    // A receipt that cannot be parsed or whose signature fails carries no
    // evidentiary weight; both collapse to SignatureInvalid.
    ElectionManifest m;
    Receipt r;
    try {
        m = parse_manifest(manifest_bytes);
        r = parse_receipt(m.group, receipt_bytes);
    } catch (const std::exception&) {
        return ReceiptStatus::SignatureInvalid;
    }
    Bytes msg(r.ballot_hash.begin(), r.ballot_hash.end());
    if (!schnorr::verify(m.group, m.manifest_hash, m.device_pk, msg, r.signature)) {
        return ReceiptStatus::SignatureInvalid;
    }
    size_t offset = 0;
    while (offset < board_bytes.size()) {
        size_t nl = board_bytes.find('\n', offset);
        size_t end = (nl == std::string::npos) ? board_bytes.size() : nl;
        std::string line = board_bytes.substr(offset, end - offset);
        offset = end + 1;
        if (line.empty()) continue;
        try {
            BoardEntry e = parse_entry_line(line);
            if (e.kind != EntryKind::cast_ballot) continue;
            EncryptedBallot b = parse_ballot(m.group, e.payload);
            if (b.ballot_hash == r.ballot_hash) return ReceiptStatus::Included;
        } catch (const std::exception&) {
            continue;  // unreadable lines cannot include anyone's ballot
        }
    }
    return ReceiptStatus::Missing;
}

}  // namespace e2ev
