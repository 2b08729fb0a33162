#include "e2ev/board_format.hpp"

#include "e2ev/json_util.hpp"

namespace e2ev {

const char* kind_name(EntryKind k) {
    switch (k) {
        case EntryKind::manifest: return "manifest";
        case EntryKind::cast_ballot: return "cast_ballot";
        case EntryKind::challenged_ballot: return "challenged_ballot";
        case EntryKind::tally_artifact: return "tally_artifact";
        case EntryKind::close: return "close";
    }
    throw std::invalid_argument("entry: unknown kind");
}

bool kind_from_name(const std::string& name, EntryKind& out) {
    for (EntryKind k : {EntryKind::manifest, EntryKind::cast_ballot, EntryKind::challenged_ballot,
                        EntryKind::tally_artifact, EntryKind::close}) {
        if (name == kind_name(k)) {
            out = k;
            return true;
        }
    }
    return false;
}

Digest entry_digest(const Digest& prev, uint64_t seq, EntryKind kind, const std::string& payload) {
    Bytes buf(prev.begin(), prev.end());
    put_u64be(buf, seq);
    buf.push_back(static_cast<uint8_t>(kind));
    buf.insert(buf.end(), payload.begin(), payload.end());
    return sha256(buf);
}

std::string entry_line(const BoardEntry& e) {
    return "{\"seq\":" + std::to_string(e.seq) + ",\"prev_hash\":\"" + digest_hex(e.prev_hash) +
           "\",\"kind\":\"" + kind_name(e.kind) + "\",\"payload\":\"" +
           jsonu::escape(e.payload) + "\",\"entry_hash\":\"" + digest_hex(e.entry_hash) + "\"}";
}

BoardEntry parse_entry_line(const std::string& line) {
    nlohmann::json j = jsonu::parse(line);
    jsonu::expect_keys(j, {"seq", "prev_hash", "kind", "payload", "entry_hash"}, "entry");
    BoardEntry e;
    e.seq = jsonu::get_u64(j, "seq");
    if (!kind_from_name(jsonu::get_string(j, "kind"), e.kind)) {
        throw std::invalid_argument("entry: unknown kind");
    }
    e.prev_hash = digest_from_hex(jsonu::get_string(j, "prev_hash"));
    e.payload = jsonu::get_string(j, "payload");
    e.entry_hash = digest_from_hex(jsonu::get_string(j, "entry_hash"));
    return e;
}

std::string challenge_canonical(const GroupParams& grp, const ChallengeRecord& rec) {
    return "{\"ballot\":" + ballot_canonical(grp, rec.ballot) +
           ",\"randomness\":" + randomness_canonical(grp, rec.randomness) +
           ",\"claimed\":{\"selection\":" + std::to_string(rec.claimed_selection) + "}}";
}

ChallengeRecord parse_challenge(const GroupParams& grp, const std::string& text) {
    nlohmann::json j = jsonu::parse(text);
    jsonu::expect_keys(j, {"ballot", "randomness", "claimed"}, "challenge");
    ChallengeRecord rec;
    rec.ballot = ballot_from_json(grp, jsonu::get_object(j, "ballot"), "challenge.ballot");
    rec.randomness = randomness_from_json(grp, jsonu::get_object(j, "randomness"));
    const auto& cj = jsonu::get_object(j, "claimed");
    jsonu::expect_keys(cj, {"selection"}, "challenge.claimed");
    rec.claimed_selection = jsonu::get_u64(cj, "selection");
    return rec;
}

Bytes close_message(const Digest& manifest_hash, const Digest& prev, uint64_t entry_count,
                    const Bytes& code_key) {
    Bytes msg(manifest_hash.begin(), manifest_hash.end());
    msg.insert(msg.end(), prev.begin(), prev.end());
    put_u64be(msg, entry_count);
    msg.insert(msg.end(), code_key.begin(), code_key.end());
    return msg;
}

std::string close_canonical(const GroupParams& grp, const ClosePayload& c) {
    auto e = [&](const Bigint& v) { return to_fixed_hex(v, grp.element_width); };
    return "{\"entry_count\":" + std::to_string(c.entry_count) + ",\"code_key\":\"" +
           to_hex(c.code_key) + "\",\"signature\":{\"e\":\"" + e(c.signature.e) + "\",\"s\":\"" +
           e(c.signature.s) + "\"}}";
}

ClosePayload parse_close(const GroupParams& grp, const std::string& text) {
    nlohmann::json j = jsonu::parse(text);
    jsonu::expect_keys(j, {"entry_count", "code_key", "signature"}, "close");
    ClosePayload c;
    c.entry_count = jsonu::get_u64(j, "entry_count");
    c.code_key = from_hex(jsonu::get_string(j, "code_key"));
    if (c.code_key.size() != 32) throw std::invalid_argument("close: code_key must be 32 bytes");
    const auto& sj = jsonu::get_object(j, "signature");
    jsonu::expect_keys(sj, {"e", "s"}, "close.signature");
    c.signature.e = parse_scalar(grp, jsonu::get_string(sj, "e"));
    c.signature.s = parse_scalar(grp, jsonu::get_string(sj, "s"));
    return c;
}

}  // namespace e2ev
