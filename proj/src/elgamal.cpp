#include "e2ev/elgamal.hpp"

#include <stdexcept>
#include <unordered_map>

namespace e2ev {

ElectionKey keygen(const GroupParams& grp, uint32_t trustees, RandomSource& rng) {
    if (trustees == 0) throw std::invalid_argument("keygen: need at least one trustee");
    ElectionKey key;
    Bigint sum = 0;
    for (uint32_t i = 1; i <= trustees; i++) {
        Bigint share = rng.uniform_scalar(grp.q);
        if (i == trustees) {
            // A zero joint key would make pk the identity; redraw the last share.
            while ((sum + share) % grp.q == 0) share = rng.uniform_scalar(grp.q);
        }
        sum = (sum + share) % grp.q;
        key.shares.push_back(TrusteeShare{i, share});
    }
    key.pk = modexp(grp.g, sum, grp.p);
    return key;
}

Ciphertext encrypt_bit(const GroupParams& grp, const Bigint& pk, int bit, const Bigint& r) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("encrypt_bit: plaintext must be 0 or 1");
    if (r < 1 || r >= grp.q) throw std::invalid_argument("encrypt_bit: randomness out of range");
    if (!in_group(grp, pk)) throw std::invalid_argument("encrypt_bit: bad public key");
    Ciphertext c;
    c.a = modexp(grp.g, r, grp.p);
    c.b = modexp(pk, r, grp.p);
    if (bit == 1) c.b = modmul(c.b, grp.g, grp.p);
    return c;
}

Ciphertext homomorphic_add(const GroupParams& grp, const Ciphertext& x, const Ciphertext& y) {
    return Ciphertext{modmul(x.a, y.a, grp.p), modmul(x.b, y.b, grp.p)};
}

Ciphertext identity_ciphertext() {
    return Ciphertext{1, 1};
}

Bigint decrypt_share(const GroupParams& grp, const Ciphertext& c, const Bigint& share_sk) {
    if (!is_scalar(grp, share_sk)) throw std::invalid_argument("decrypt_share: bad share");
    return modexp(c.a, share_sk, grp.p);
}

Bigint combine_shares(const GroupParams& grp, const Ciphertext& c,
                      const std::vector<Bigint>& partials) {
    Bigint denom = 1;
    for (const Bigint& m : partials) denom = modmul(denom, m, grp.p);
    return modmul(c.b, modinv(denom, grp.p), grp.p);
}

std::optional<uint64_t> recover_exponent(const GroupParams& grp, const Bigint& y,
                                         uint64_t max_exponent) {
    if (!in_group(grp, y)) return std::nullopt;
    constexpr uint64_t kLinearLimit = 1000000;
    if (max_exponent <= kLinearLimit) {
        Bigint acc = 1;
        for (uint64_t m = 0; m <= max_exponent; m++) {
            if (acc == y) return m;
            acc = modmul(acc, grp.g, grp.p);
        }
        return std::nullopt;
    }
    // Baby-step giant-step over [0, max_exponent].
    uint64_t steps = 1;
    while (steps * steps < max_exponent + 1) steps++;
    std::unordered_map<std::string, uint64_t> baby;
    baby.reserve(steps);
    Bigint acc = 1;
    for (uint64_t j = 0; j < steps; j++) {
        baby.emplace(element_hex(grp, acc), j);
        acc = modmul(acc, grp.g, grp.p);
    }
    Bigint giant = modinv(modexp(grp.g, Bigint(steps), grp.p), grp.p);
    Bigint cur = y % grp.p;
    for (uint64_t i = 0; i * steps <= max_exponent; i++) {
        auto it = baby.find(element_hex(grp, cur));
        if (it != baby.end()) {
            uint64_t m = i * steps + it->second;
            if (m <= max_exponent) return m;
        }
        cur = modmul(cur, giant, grp.p);
    }
    return std::nullopt;
}

}  // namespace e2ev
