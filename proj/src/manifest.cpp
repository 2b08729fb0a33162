#include "e2ev/manifest.hpp"

#include "e2ev/json_util.hpp"

#include <stdexcept>

namespace e2ev {

bool valid_label(const std::string& s) {
    if (s.empty() || s.size() > 128) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == ' ' || c == '_' || c == '-' || c == '.';
        if (!ok) return false;
    }
    return true;
}

namespace {

// Canonical text up to and including authority_pk; the manifest hash is the
// digest of exactly these bytes with the closing brace.
std::string preimage(const ElectionManifest& m) {
    std::string out = "{\"election_id\":\"" + m.election_id + "\",\"candidates\":[";
    for (size_t i = 0; i < m.candidates.size(); i++) {
        if (i > 0) out += ',';
        out += '"' + m.candidates[i] + '"';
    }
    out += "],\"group\":{\"p\":\"" + to_fixed_hex(m.group.p, m.group.element_width) +
           "\",\"q\":\"" + to_fixed_hex(m.group.q, m.group.element_width) +
           "\",\"g\":\"" + to_fixed_hex(m.group.g, m.group.element_width) + "\"}";
    out += ",\"pk\":\"" + element_hex(m.group, m.pk) + "\"";
    out += ",\"hash_alg\":\"sha256\"";
    out += ",\"device_pk\":\"" + element_hex(m.group, m.device_pk) + "\"";
    out += ",\"authority_pk\":\"" + element_hex(m.group, m.authority_pk) + "\"}";
    return out;
}

void check_fields(const ElectionManifest& m) {
    if (!valid_label(m.election_id)) throw std::invalid_argument("manifest: bad election_id");
    if (m.candidates.size() < 2) throw std::invalid_argument("manifest: need at least 2 candidates");
    for (const auto& c : m.candidates) {
        if (!valid_label(c)) throw std::invalid_argument("manifest: bad candidate name");
    }
    for (size_t i = 0; i < m.candidates.size(); i++) {
        for (size_t j = i + 1; j < m.candidates.size(); j++) {
            if (m.candidates[i] == m.candidates[j]) {
                throw std::invalid_argument("manifest: duplicate candidate name");
            }
        }
    }
    if (!in_group(m.group, m.pk)) throw std::invalid_argument("manifest: pk not in subgroup");
    if (!in_group(m.group, m.device_pk)) {
        throw std::invalid_argument("manifest: device_pk not in subgroup");
    }
    if (!in_group(m.group, m.authority_pk)) {
        throw std::invalid_argument("manifest: authority_pk not in subgroup");
    }
}

}  // namespace

ElectionManifest build_manifest(const std::string& election_id,
                                const std::vector<std::string>& candidates,
                                const GroupParams& group, const Bigint& pk,
                                const Bigint& device_pk, const Bigint& authority_pk) {
    ElectionManifest m;
    m.election_id = election_id;
    m.candidates = candidates;
    m.group = group;
    m.pk = pk;
    m.device_pk = device_pk;
    m.authority_pk = authority_pk;
    check_fields(m);
    std::string pre = preimage(m);
    m.manifest_hash = sha256(pre);
    pre.pop_back();  // reopen the object to append the hash field
    m.canonical = pre + ",\"manifest_hash\":\"" + digest_hex(m.manifest_hash) + "\"}";
    return m;
}

ElectionManifest parse_manifest(const std::string& text, int mr_rounds) {
    nlohmann::json j = jsonu::parse(text);
    jsonu::expect_keys(j, {"election_id", "candidates", "group", "pk", "hash_alg",
                           "device_pk", "authority_pk", "manifest_hash"}, "manifest");
    if (jsonu::get_string(j, "hash_alg") != "sha256") {
        throw std::invalid_argument("manifest: unsupported hash_alg");
    }

    const auto& gj = jsonu::get_object(j, "group");
    jsonu::expect_keys(gj, {"p", "q", "g"}, "manifest.group");
    GroupParams grp;
    std::string p_hex = jsonu::get_string(gj, "p");
    if (p_hex.size() % 2 != 0 || p_hex.empty()) throw std::invalid_argument("group.p: bad width");
    grp.element_width = p_hex.size() / 2;
    grp.p = from_fixed_hex(p_hex, grp.element_width);
    grp.q = from_fixed_hex(jsonu::get_string(gj, "q"), grp.element_width);
    grp.g = from_fixed_hex(jsonu::get_string(gj, "g"), grp.element_width);
    validate_group(grp, mr_rounds);

    ElectionManifest m;
    m.group = grp;
    m.election_id = jsonu::get_string(j, "election_id");
    for (const auto& c : jsonu::get_array(j, "candidates")) {
        if (!c.is_string()) throw std::invalid_argument("manifest: candidate not a string");
        m.candidates.push_back(c.get<std::string>());
    }
    m.pk = parse_element(grp, jsonu::get_string(j, "pk"));
    m.device_pk = parse_element(grp, jsonu::get_string(j, "device_pk"));
    m.authority_pk = parse_element(grp, jsonu::get_string(j, "authority_pk"));
    check_fields(m);

    std::string pre = preimage(m);
    m.manifest_hash = sha256(pre);
    if (digest_hex(m.manifest_hash) != jsonu::get_string(j, "manifest_hash")) {
        throw std::invalid_argument("manifest: manifest_hash does not recompute");
    }
    pre.pop_back();
    m.canonical = pre + ",\"manifest_hash\":\"" + digest_hex(m.manifest_hash) + "\"}";
    if (m.canonical != text) {
        throw std::invalid_argument("manifest: input is not in canonical form");
    }
    return m;
}

}  // namespace e2ev
