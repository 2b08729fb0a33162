#include "e2ev/transcript.hpp"

#include <stdexcept>

namespace e2ev {

bool known_domain_tag(const std::string& tag) {
    return tag == kTagBit || tag == kTagSum || tag == kTagDec || tag == kTagSig ||
           tag == kTagCode;
}

void Transcript::append(const Bytes& field) {
    fields_.push_back(field);
}

void Transcript::append(const std::string& field) {
    fields_.emplace_back(field.begin(), field.end());
}

void Transcript::append(const Digest& field) {
    fields_.emplace_back(field.begin(), field.end());
}

Digest transcript_digest(const std::string& tag, const Transcript& t) {
    if (!known_domain_tag(tag)) {
        throw std::invalid_argument("transcript: unknown domain tag \"" + tag + "\"");
    }
    Bytes input = u64be(tag.size());
    append_bytes(input, tag);
    for (const Bytes& f : t.fields()) {
        put_u64be(input, f.size());
        append_bytes(input, f);
    }
    return sha256(input);
}

Bigint derive_challenge(const std::string& tag, const Transcript& t, const Bigint& q) {
    if (q <= 0) throw std::invalid_argument("derive_challenge: bad modulus");
    Digest d = transcript_digest(tag, t);
    return from_bytes(digest_bytes(d)) % q;
}

}  // namespace e2ev
