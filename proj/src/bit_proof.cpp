#include "e2ev/bit_proof.hpp"

#include <stdexcept>

namespace e2ev {
namespace bitproof {

namespace {

Bigint overall_challenge(const GroupParams& grp, const Digest& manifest_hash, const Bigint& pk,
                         const Ciphertext& ct, const Bigint& t00, const Bigint& t01,
                         const Bigint& t10, const Bigint& t11) {
    Transcript t;
    t.append(manifest_hash);
    t.append(element_bytes(grp, pk));
    t.append(element_bytes(grp, ct.a));
    t.append(element_bytes(grp, ct.b));
    t.append(element_bytes(grp, t00));
    t.append(element_bytes(grp, t01));
    t.append(element_bytes(grp, t10));
    t.append(element_bytes(grp, t11));
    return derive_challenge(kTagBit, t, grp.q);
}

// b adjusted for branch j: the value that must equal pk^r when the plaintext is j.
Bigint branch_target(const GroupParams& grp, const Ciphertext& ct, int j) {
    if (j == 0) return ct.b;
    return modmul(ct.b, modinv(grp.g, grp.p), grp.p);
}

}  // namespace

Proof prove(const GroupParams& grp, const Digest& manifest_hash, const Bigint& pk,
            const Ciphertext& ct, int bit, const Bigint& r, RandomSource& rng) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("bitproof: plaintext must be 0 or 1");
    if (encrypt_bit(grp, pk, bit, r) != ct) {
        throw std::invalid_argument("bitproof: randomness does not open the ciphertext");
    }
    int sim = 1 - bit;

    // Simulated branch: pick challenge and response first, solve for commitments.
    Bigint c_sim = rng.uniform_below(grp.q);
    Bigint s_sim = rng.uniform_below(grp.q);
    Bigint y_sim = branch_target(grp, ct, sim);
    Bigint t_sim0 = modmul(modexp(grp.g, s_sim, grp.p),
                           modinv(modexp(ct.a, c_sim, grp.p), grp.p), grp.p);
    Bigint t_sim1 = modmul(modexp(pk, s_sim, grp.p),
                           modinv(modexp(y_sim, c_sim, grp.p), grp.p), grp.p);

    // Real branch commitments.
    Bigint k = rng.uniform_scalar(grp.q);
    Bigint t_real0 = modexp(grp.g, k, grp.p);
    Bigint t_real1 = modexp(pk, k, grp.p);

    Proof proof;
    if (bit == 0) {
        proof.t00 = t_real0; proof.t01 = t_real1;
        proof.t10 = t_sim0;  proof.t11 = t_sim1;
    } else {
        proof.t00 = t_sim0;  proof.t01 = t_sim1;
        proof.t10 = t_real0; proof.t11 = t_real1;
    }
    Bigint c = overall_challenge(grp, manifest_hash, pk, ct,
                                 proof.t00, proof.t01, proof.t10, proof.t11);
    Bigint c_real = ((c - c_sim) % grp.q + grp.q) % grp.q;
    Bigint s_real = (k + c_real * r) % grp.q;
    if (bit == 0) {
        proof.c0 = c_real; proof.s0 = s_real;
        proof.c1 = c_sim;  proof.s1 = s_sim;
    } else {
        proof.c0 = c_sim;  proof.s0 = s_sim;
        proof.c1 = c_real; proof.s1 = s_real;
    }
    return proof;
}

VerifyResult verify(const GroupParams& grp, const Digest& manifest_hash, const Bigint& pk,
                    const Ciphertext& ct, const Proof& proof) {
    for (const Bigint* t : {&proof.t00, &proof.t01, &proof.t10, &proof.t11}) {
        if (!in_group(grp, *t)) return {false, "commitment not in subgroup"};
    }
    for (const Bigint* v : {&proof.c0, &proof.c1, &proof.s0, &proof.s1}) {
        if (!is_scalar(grp, *v)) return {false, "challenge or response out of range"};
    }
    Bigint c = overall_challenge(grp, manifest_hash, pk, ct,
                                 proof.t00, proof.t01, proof.t10, proof.t11);
    if ((proof.c0 + proof.c1) % grp.q != c) return {false, "challenge split does not add up"};

    const Bigint* cs[2] = {&proof.c0, &proof.c1};
    const Bigint* ss[2] = {&proof.s0, &proof.s1};
    const Bigint* tg[2][2] = {{&proof.t00, &proof.t01}, {&proof.t10, &proof.t11}};
    for (int j = 0; j < 2; j++) {
        Bigint yj = branch_target(grp, ct, j);
        if (modexp(grp.g, *ss[j], grp.p) !=
            modmul(*tg[j][0], modexp(ct.a, *cs[j], grp.p), grp.p)) {
            return {false, std::string("branch ") + char('0' + j) + " base g equation fails"};
        }
        if (modexp(pk, *ss[j], grp.p) !=
            modmul(*tg[j][1], modexp(yj, *cs[j], grp.p), grp.p)) {
            return {false, std::string("branch ") + char('0' + j) + " base pk equation fails"};
        }
    }
    return {true, ""};
}

}  // namespace bitproof
}  // namespace e2ev
