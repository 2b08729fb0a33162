#include "e2ev/chaum_pedersen.hpp"

#include <stdexcept>

namespace e2ev {
namespace cp {

Bigint challenge(const std::string& tag, const GroupParams& grp, const Digest& manifest_hash,
                 const std::vector<Bigint>& statement, const Bigint& t1, const Bigint& t2) {
    Transcript t;
    t.append(manifest_hash);
    for (const Bigint& v : statement) t.append(element_bytes(grp, v));
    t.append(element_bytes(grp, t1));
    t.append(element_bytes(grp, t2));
    return derive_challenge(tag, t, grp.q);
}

Proof prove(const std::string& tag, const GroupParams& grp, const Digest& manifest_hash,
            const std::vector<Bigint>& statement, const Bigint& g1, const Bigint& y1,
            const Bigint& g2, const Bigint& y2, const Bigint& w, RandomSource& rng) {
    if (modexp(g1, w, grp.p) != y1 || modexp(g2, w, grp.p) != y2) {
        throw std::invalid_argument("cp::prove: witness does not satisfy the statement");
    }
    Proof proof;
    Bigint k = rng.uniform_scalar(grp.q);
    proof.t1 = modexp(g1, k, grp.p);
    proof.t2 = modexp(g2, k, grp.p);
    proof.c = challenge(tag, grp, manifest_hash, statement, proof.t1, proof.t2);
    proof.s = (k + proof.c * w) % grp.q;
    return proof;
}

VerifyResult verify(const std::string& tag, const GroupParams& grp, const Digest& manifest_hash,
                    const std::vector<Bigint>& statement, const Bigint& g1, const Bigint& y1,
                    const Bigint& g2, const Bigint& y2, const Proof& proof) {
    if (!in_group(grp, proof.t1) || !in_group(grp, proof.t2)) {
        return {false, "commitment not in subgroup"};
    }
    if (!is_scalar(grp, proof.c) || !is_scalar(grp, proof.s)) {
        return {false, "challenge or response out of range"};
    }
    Bigint expect = challenge(tag, grp, manifest_hash, statement, proof.t1, proof.t2);
    if (proof.c != expect) return {false, "challenge mismatch"};
    if (modexp(g1, proof.s, grp.p) != modmul(proof.t1, modexp(y1, proof.c, grp.p), grp.p)) {
        return {false, "first base equation fails"};
    }
    if (modexp(g2, proof.s, grp.p) != modmul(proof.t2, modexp(y2, proof.c, grp.p), grp.p)) {
        return {false, "second base equation fails"};
    }
    return {true, ""};
}

}  // namespace cp
}  // namespace e2ev
