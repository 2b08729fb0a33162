#include "e2ev/ballot.hpp"

#include "e2ev/json_util.hpp"

#include <stdexcept>

namespace e2ev {

namespace {

constexpr size_t kNonceBytes = 16;

// Sum proof statement: the aggregate (A, B) of all ciphertexts encrypts
// exactly one, i.e. log_g A = log_pk (B / g) = sum of the randomness.
struct SumStatement {
    Bigint A;
    Bigint B;
    Bigint target;  // B / g
    std::vector<Bigint> fields;
};

SumStatement sum_statement(const ElectionManifest& m, const EncryptedBallot& ballot) {
    SumStatement s;
    s.A = 1;
    s.B = 1;
    for (const Ciphertext& c : ballot.ciphertexts) {
        s.A = modmul(s.A, c.a, m.group.p);
        s.B = modmul(s.B, c.b, m.group.p);
    }
    s.target = modmul(s.B, modinv(m.group.g, m.group.p), m.group.p);
    s.fields = {m.pk, s.A, s.B};
    return s;
}

std::string bit_proof_canonical(const GroupParams& grp, const bitproof::Proof& p) {
    auto e = [&](const Bigint& v) { return to_fixed_hex(v, grp.element_width); };
    return "{\"t00\":\"" + e(p.t00) + "\",\"t01\":\"" + e(p.t01) + "\",\"t10\":\"" + e(p.t10) +
           "\",\"t11\":\"" + e(p.t11) + "\",\"c0\":\"" + e(p.c0) + "\",\"c1\":\"" + e(p.c1) +
           "\",\"s0\":\"" + e(p.s0) + "\",\"s1\":\"" + e(p.s1) + "\"}";
}

bitproof::Proof bit_proof_from_json(const GroupParams& grp, const nlohmann::json& j,
                                    const std::string& where) {
    jsonu::expect_keys(j, {"t00", "t01", "t10", "t11", "c0", "c1", "s0", "s1"}, where);
    bitproof::Proof p;
    try {
        p.t00 = parse_element(grp, jsonu::get_string(j, "t00"));
        p.t01 = parse_element(grp, jsonu::get_string(j, "t01"));
        p.t10 = parse_element(grp, jsonu::get_string(j, "t10"));
        p.t11 = parse_element(grp, jsonu::get_string(j, "t11"));
        p.c0 = parse_scalar(grp, jsonu::get_string(j, "c0"));
        p.c1 = parse_scalar(grp, jsonu::get_string(j, "c1"));
        p.s0 = parse_scalar(grp, jsonu::get_string(j, "s0"));
        p.s1 = parse_scalar(grp, jsonu::get_string(j, "s1"));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(where + ": " + e.what());
    }
    return p;
}

// Canonical text of everything the ballot hash covers.
std::string ballot_preimage(const GroupParams& grp, const EncryptedBallot& ballot) {
    std::string out = "{\"nonce\":\"" + to_hex(ballot.nonce) + "\",\"ciphertexts\":[";
    for (size_t i = 0; i < ballot.ciphertexts.size(); i++) {
        if (i > 0) out += ',';
        out += ciphertext_canonical(grp, ballot.ciphertexts[i]);
    }
    out += "],\"bit_proofs\":[";
    for (size_t i = 0; i < ballot.bit_proofs.size(); i++) {
        if (i > 0) out += ',';
        out += bit_proof_canonical(grp, ballot.bit_proofs[i]);
    }
    out += "],\"sum_proof\":" + cp_proof_canonical(grp, ballot.sum_proof) + "}";
    return out;
}

}  // namespace

std::string ciphertext_canonical(const GroupParams& grp, const Ciphertext& c) {
    return "{\"a\":\"" + element_hex(grp, c.a) + "\",\"b\":\"" + element_hex(grp, c.b) + "\"}";
}

Ciphertext ciphertext_from_json(const GroupParams& grp, const nlohmann::json& j,
                                const std::string& where) {
    jsonu::expect_keys(j, {"a", "b"}, where);
    try {
        return Ciphertext{parse_element(grp, jsonu::get_string(j, "a")),
                          parse_element(grp, jsonu::get_string(j, "b"))};
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(where + ": " + e.what());
    }
}

std::string cp_proof_canonical(const GroupParams& grp, const cp::Proof& p) {
    auto e = [&](const Bigint& v) { return to_fixed_hex(v, grp.element_width); };
    return "{\"t1\":\"" + e(p.t1) + "\",\"t2\":\"" + e(p.t2) + "\",\"c\":\"" + e(p.c) +
           "\",\"s\":\"" + e(p.s) + "\"}";
}

cp::Proof cp_proof_from_json(const GroupParams& grp, const nlohmann::json& j,
                             const std::string& where) {
    jsonu::expect_keys(j, {"t1", "t2", "c", "s"}, where);
    cp::Proof p;
    try {
        p.t1 = parse_element(grp, jsonu::get_string(j, "t1"));
        p.t2 = parse_element(grp, jsonu::get_string(j, "t2"));
        p.c = parse_scalar(grp, jsonu::get_string(j, "c"));
        p.s = parse_scalar(grp, jsonu::get_string(j, "s"));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(where + ": " + e.what());
    }
    return p;
}

EncryptResult encrypt_ballot(const ElectionManifest& m, size_t selection, RandomSource& rng) {
    size_t n = m.candidates.size();
    if (selection >= n) throw std::invalid_argument("encrypt_ballot: selection out of range");

    EncryptResult out;
    out.ballot.nonce = rng.bytes(kNonceBytes);
    Bigint rsum = 0;
    for (size_t i = 0; i < n; i++) {
        int bit = (i == selection) ? 1 : 0;
        Bigint r = rng.uniform_scalar(m.group.q);
        out.randomness.rs.push_back(r);
        rsum = (rsum + r) % m.group.q;
        out.ballot.ciphertexts.push_back(encrypt_bit(m.group, m.pk, bit, r));
    }
    for (size_t i = 0; i < n; i++) {
        out.ballot.bit_proofs.push_back(bitproof::prove(m.group, m.manifest_hash, m.pk,
                                                        out.ballot.ciphertexts[i],
                                                        i == selection ? 1 : 0,
                                                        out.randomness.rs[i], rng));
    }
    SumStatement s = sum_statement(m, out.ballot);
    out.ballot.sum_proof = cp::prove(kTagSum, m.group, m.manifest_hash, s.fields, m.group.g,
                                     s.A, m.pk, s.target, rsum, rng);
    out.ballot.ballot_hash = sha256(ballot_preimage(m.group, out.ballot));
    return out;
}

BallotCheck verify_ballot(const ElectionManifest& m, const EncryptedBallot& ballot) {
    size_t n = m.candidates.size();
    if (ballot.ciphertexts.size() != n || ballot.bit_proofs.size() != n ||
        ballot.nonce.size() != kNonceBytes) {
        return {false, "candidate-count"};
    }
    for (size_t i = 0; i < n; i++) {
        const Ciphertext& c = ballot.ciphertexts[i];
        if (!in_group(m.group, c.a) || !in_group(m.group, c.b)) {
            return {false, "ciphertext[" + std::to_string(i) + "]"};
        }
    }
    for (size_t i = 0; i < n; i++) {
        if (!bitproof::verify(m.group, m.manifest_hash, m.pk, ballot.ciphertexts[i],
                              ballot.bit_proofs[i]).ok) {
            return {false, "bit-proof[" + std::to_string(i) + "]"};
        }
    }
    SumStatement s = sum_statement(m, ballot);
    if (!cp::verify(kTagSum, m.group, m.manifest_hash, s.fields, m.group.g, s.A, m.pk,
                    s.target, ballot.sum_proof).ok) {
        return {false, "sum-proof"};
    }
    if (sha256(ballot_preimage(m.group, ballot)) != ballot.ballot_hash) {
        return {false, "ballot-hash"};
    }
    return {true, ""};
}

BallotCheck open_ballot(const ElectionManifest& m, const EncryptedBallot& ballot,
                        const BallotRandomness& randomness, size_t claimed_selection) {
    size_t n = m.candidates.size();
    if (claimed_selection >= n) return {false, "claimed-selection"};
    if (ballot.ciphertexts.size() != n) return {false, "candidate-count"};
    if (randomness.rs.size() != n) return {false, "randomness-count"};
    for (size_t i = 0; i < n; i++) {
        const Bigint& r = randomness.rs[i];
        if (r < 1 || r >= m.group.q) return {false, "randomness[" + std::to_string(i) + "]"};
        Ciphertext expect = encrypt_bit(m.group, m.pk, i == claimed_selection ? 1 : 0, r);
        if (expect != ballot.ciphertexts[i]) {
            return {false, "ciphertext[" + std::to_string(i) + "]"};
        }
    }
    return {true, ""};
}

std::string ballot_canonical(const GroupParams& grp, const EncryptedBallot& ballot) {
    std::string pre = ballot_preimage(grp, ballot);
    pre.pop_back();
    return pre + ",\"ballot_hash\":\"" + digest_hex(ballot.ballot_hash) + "\"}";
}

EncryptedBallot ballot_from_json(const GroupParams& grp, const nlohmann::json& j,
                                 const std::string& where) {
    jsonu::expect_keys(j, {"nonce", "ciphertexts", "bit_proofs", "sum_proof", "ballot_hash"},
                       where);
    EncryptedBallot b;
    b.nonce = from_hex(jsonu::get_string(j, "nonce"));
    if (b.nonce.size() != kNonceBytes) throw std::invalid_argument(where + ": bad nonce length");
    const auto& cts = jsonu::get_array(j, "ciphertexts");
    size_t idx = 0;
    for (const auto& cj : cts) {
        b.ciphertexts.push_back(
            ciphertext_from_json(grp, cj, where + ".ciphertexts[" + std::to_string(idx) + "]"));
        idx++;
    }
    const auto& bps = jsonu::get_array(j, "bit_proofs");
    if (bps.size() != cts.size()) {
        throw std::invalid_argument(where + ": bit_proofs length mismatch");
    }
    idx = 0;
    for (const auto& pj : bps) {
        b.bit_proofs.push_back(
            bit_proof_from_json(grp, pj, where + ".bit_proofs[" + std::to_string(idx) + "]"));
        idx++;
    }
    b.sum_proof = cp_proof_from_json(grp, jsonu::get_object(j, "sum_proof"), where + ".sum_proof");
    b.ballot_hash = digest_from_hex(jsonu::get_string(j, "ballot_hash"));
    return b;
}

EncryptedBallot parse_ballot(const GroupParams& grp, const std::string& text) {
    return ballot_from_json(grp, jsonu::parse(text), "ballot");
}

std::string randomness_canonical(const GroupParams& grp, const BallotRandomness& r) {
    std::string out = "{\"rs\":[";
    for (size_t i = 0; i < r.rs.size(); i++) {
        if (i > 0) out += ',';
        out += '"' + to_fixed_hex(r.rs[i], grp.element_width) + '"';
    }
    return out + "]}";
}

BallotRandomness randomness_from_json(const GroupParams& grp, const nlohmann::json& j) {
    jsonu::expect_keys(j, {"rs"}, "randomness");
    BallotRandomness r;
    for (const auto& v : jsonu::get_array(j, "rs")) {
        if (!v.is_string()) throw std::invalid_argument("randomness.rs: not a string");
        r.rs.push_back(parse_scalar(grp, v.get<std::string>()));
    }
    return r;
}

}  // namespace e2ev
