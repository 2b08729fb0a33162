#include "e2ev/tally_format.hpp"

#include "e2ev/json_util.hpp"

namespace e2ev {

namespace {

std::vector<Bigint> decryption_statement(const Bigint& share_pk, const Ciphertext& ct,
                                         const Bigint& partial) {
    return {share_pk, ct.a, ct.b, partial};
}

}  // namespace

cp::Proof prove_decryption(const GroupParams& grp, const Digest& manifest_hash,
                           const Bigint& share_pk, const Ciphertext& ct, const Bigint& partial,
                           const Bigint& sk, RandomSource& rng) {
    return cp::prove(kTagDec, grp, manifest_hash, decryption_statement(share_pk, ct, partial),
                     grp.g, share_pk, ct.a, partial, sk, rng);
}

cp::VerifyResult verify_decryption(const GroupParams& grp, const Digest& manifest_hash,
                                   const Bigint& share_pk, const Ciphertext& ct,
                                   const Bigint& partial, const cp::Proof& proof) {
    return cp::verify(kTagDec, grp, manifest_hash, decryption_statement(share_pk, ct, partial),
                      grp.g, share_pk, ct.a, partial, proof);
}

std::string tally_canonical(const GroupParams& grp, const TallyArtifact& t) {
    std::string out = "{\"cast_count\":" + std::to_string(t.cast_count) + ",\"aggregates\":[";
    for (size_t i = 0; i < t.aggregates.size(); i++) {
        if (i > 0) out += ',';
        out += ciphertext_canonical(grp, t.aggregates[i]);
    }
    out += "],\"trustees\":[";
    for (size_t j = 0; j < t.trustees.size(); j++) {
        const TrusteePartial& tp = t.trustees[j];
        if (j > 0) out += ',';
        out += "{\"trustee\":" + std::to_string(tp.trustee) + ",\"share_pk\":\"" +
               element_hex(grp, tp.share_pk) + "\",\"partials\":[";
        for (size_t i = 0; i < tp.partials.size(); i++) {
            if (i > 0) out += ',';
            out += '"' + element_hex(grp, tp.partials[i]) + '"';
        }
        out += "],\"proofs\":[";
        for (size_t i = 0; i < tp.proofs.size(); i++) {
            if (i > 0) out += ',';
            out += cp_proof_canonical(grp, tp.proofs[i]);
        }
        out += "]}";
    }
    out += "],\"counts\":[";
    for (size_t i = 0; i < t.counts.size(); i++) {
        if (i > 0) out += ',';
        out += std::to_string(t.counts[i]);
    }
    return out + "]}";
}

TallyArtifact parse_tally(const GroupParams& grp, const std::string& text) {
    nlohmann::json j = jsonu::parse(text);
    jsonu::expect_keys(j, {"cast_count", "aggregates", "trustees", "counts"}, "tally");
    TallyArtifact t;
    t.cast_count = jsonu::get_u64(j, "cast_count");
    size_t idx = 0;
    for (const auto& cj : jsonu::get_array(j, "aggregates")) {
        t.aggregates.push_back(
            ciphertext_from_json(grp, cj, "tally.aggregates[" + std::to_string(idx) + "]"));
        idx++;
    }
    size_t n = t.aggregates.size();
    for (const auto& tj : jsonu::get_array(j, "trustees")) {
        std::string where = "tally.trustees[" + std::to_string(t.trustees.size()) + "]";
        jsonu::expect_keys(tj, {"trustee", "share_pk", "partials", "proofs"}, where);
        TrusteePartial tp;
        tp.trustee = jsonu::get_u64(tj, "trustee");
        tp.share_pk = parse_element(grp, jsonu::get_string(tj, "share_pk"));
        for (const auto& pj : jsonu::get_array(tj, "partials")) {
            if (!pj.is_string()) throw std::invalid_argument(where + ".partials: not a string");
            tp.partials.push_back(parse_element(grp, pj.get<std::string>()));
        }
        idx = 0;
        for (const auto& pj : jsonu::get_array(tj, "proofs")) {
            tp.proofs.push_back(
                cp_proof_from_json(grp, pj, where + ".proofs[" + std::to_string(idx) + "]"));
            idx++;
        }
        if (tp.partials.size() != n || tp.proofs.size() != n) {
            throw std::invalid_argument(where + ": per-candidate array length mismatch");
        }
        t.trustees.push_back(std::move(tp));
    }
    for (const auto& cj : jsonu::get_array(j, "counts")) {
        if (!cj.is_number_unsigned()) throw std::invalid_argument("tally.counts: not unsigned");
        t.counts.push_back(cj.get<uint64_t>());
    }
    if (t.counts.size() != n) throw std::invalid_argument("tally.counts: length mismatch");
    return t;
}

}  // namespace e2ev
