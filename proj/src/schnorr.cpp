#include "e2ev/schnorr.hpp"

namespace e2ev {
namespace schnorr {

namespace {

Bigint challenge(const GroupParams& grp, const Digest& manifest_hash, const Bigint& pk,
                 const Bigint& commit, const Bytes& msg) {
    Transcript t;
    t.append(manifest_hash);
    t.append(element_bytes(grp, pk));
    t.append(element_bytes(grp, commit));
    t.append(msg);
    return derive_challenge(kTagSig, t, grp.q);
}

}  // namespace

KeyPair keygen(const GroupParams& grp, RandomSource& rng) {
    KeyPair kp;
    kp.sk = rng.uniform_scalar(grp.q);
    kp.pk = modexp(grp.g, kp.sk, grp.p);
    return kp;
}

Signature sign(const GroupParams& grp, const Digest& manifest_hash, const Bigint& sk,
               const Bytes& msg, RandomSource& rng) {
    Bigint k = rng.uniform_scalar(grp.q);
    Bigint commit = modexp(grp.g, k, grp.p);
    Signature sig;
    sig.e = challenge(grp, manifest_hash, modexp(grp.g, sk, grp.p), commit, msg);
    sig.s = (k + sig.e * sk) % grp.q;
    return sig;
}

bool verify(const GroupParams& grp, const Digest& manifest_hash, const Bigint& pk,
            const Bytes& msg, const Signature& sig) {
    if (!in_group(grp, pk)) return false;
    if (!is_scalar(grp, sig.e) || !is_scalar(grp, sig.s)) return false;
    // R = g^s / pk^e; the signature is valid iff hashing R reproduces e.
    Bigint commit = modmul(modexp(grp.g, sig.s, grp.p),
                           modinv(modexp(pk, sig.e, grp.p), grp.p), grp.p);
    return challenge(grp, manifest_hash, pk, commit, msg) == sig.e;
}

}  // namespace schnorr
}  // namespace e2ev
