#pragma once

#include "e2ev/group.hpp"
#include "e2ev/sha256.hpp"

#include <string>
#include <vector>

namespace e2ev {

// Domain separation tags. Every challenge-bearing protocol hashes under its
// own tag; an unknown tag is refused rather than hashed.
inline constexpr const char* kTagBit = "e2ev/bit/v1";
inline constexpr const char* kTagSum = "e2ev/sum/v1";
inline constexpr const char* kTagDec = "e2ev/dec/v1";
inline constexpr const char* kTagSig = "e2ev/sig/v1";
inline constexpr const char* kTagCode = "e2ev/code/v1";

bool known_domain_tag(const std::string& tag);

/**
 * Ordered list of length-prefixed fields feeding one challenge. The hash
 * input is u64be(|tag|) || tag followed by u64be(|field|) || field for each
 * field, so no two distinct transcripts collide by concatenation.
 */
class Transcript {
public:
    void append(const Bytes& field);
    void append(const std::string& field);
    void append(const Digest& field);

    const std::vector<Bytes>& fields() const { return fields_; }

private:
    std::vector<Bytes> fields_;
};

/** Raw transcript digest under a registered domain tag. */
Digest transcript_digest(const std::string& tag, const Transcript& t);

/** Fiat-Shamir challenge: transcript digest reduced mod q. */
Bigint derive_challenge(const std::string& tag, const Transcript& t, const Bigint& q);

}  // namespace e2ev
