#pragma once

#include "e2ev/manifest.hpp"
#include "e2ev/schnorr.hpp"

namespace e2ev {

/**
 * What the voter walks away with after casting: the hash of their encrypted
 * ballot, the device's signature over that hash, and a short return code they
 * can compare against a posted phone lookup. The code is keyed so only the
 * device (or an auditor holding the key) can compute it.
 */
struct Receipt {
    Digest ballot_hash{};
    schnorr::Signature signature;
    std::string return_code;  // two uppercase letters
};

/** Derive the two-letter return code for a ballot hash under a 32-byte key. */
std::string issue_return_code(const Bytes& code_key, const Digest& ballot_hash);

std::string receipt_canonical(const GroupParams& grp, const Receipt& r);
Receipt parse_receipt(const GroupParams& grp, const std::string& text);

}  // namespace e2ev
